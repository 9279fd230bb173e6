#include "fdiv/operator.hpp"

#include <algorithm>
#include <cmath>

#include "fdiv/error.hpp"

namespace structdiv {
namespace {

constexpr double kHermitianTolerance = 1e-12;

int log2_exact(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || dim < 2) return -1;
  return n;
}

Matrix single_pauli(char c) {
  Matrix m(2, 2);
  switch (c) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      throw ValidationError(std::string("invalid Pauli character '") + c +
                            "'");
  }
  return m;
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix pauli_string_matrix(const std::string& paulis) {
  if (paulis.empty()) throw ValidationError("empty Pauli string");
  Matrix out = single_pauli(paulis.front());
  for (std::size_t i = 1; i < paulis.size(); ++i) {
    out = kron(out, single_pauli(paulis[i]));
  }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("matrix shapes differ");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(Matrix matrix)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw ValidationError("operator matrix must be square");
  }
  num_qubits_ = log2_exact(matrix_.rows());
  if (num_qubits_ < 1) {
    throw ValidationError("operator dimension must be a power of two >= 2");
  }
  if (!matrix_.allFinite()) {
    throw ValidationError("operator matrix has non-finite entries");
  }
  if (max_abs_diff(matrix_, matrix_.adjoint()) > kHermitianTolerance) {
    throw ValidationError("operator matrix is not Hermitian");
  }
  // Symmetrise away round-off so the eigensolver sees an exact Hermitian.
  matrix_ = (matrix_ + matrix_.adjoint()).eval() / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigendecomposition failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

HermitianOperator HermitianOperator::from_pauli_sum(
    std::vector<PauliTerm> terms) {
  if (terms.empty()) throw ValidationError("Pauli sum has no terms");
  const auto width = terms.front().paulis.size();
  Matrix total = Matrix::Zero(Eigen::Index{1} << width, Eigen::Index{1} << width);
  for (const auto& term : terms) {
    if (term.paulis.size() != width) {
      throw ValidationError("Pauli strings in one sum must share a length");
    }
    if (!std::isfinite(term.coefficient)) {
      throw ValidationError("Pauli coefficient is not finite");
    }
    total += term.coefficient * pauli_string_matrix(term.paulis);
  }
  HermitianOperator op(std::move(total));
  op.pauli_sum_ = std::move(terms);
  return op;
}

SpectralSummary spectral_summary(const HermitianOperator& a) {
  // Eigen returns eigenvalues in increasing order.
  const auto& ev = a.eigenvalues();
  SpectralSummary s;
  s.lambda_min = ev(0);
  s.lambda_max = ev(ev.size() - 1);
  s.half_range = (s.lambda_max - s.lambda_min) / 2.0;
  s.op_norm = std::max(std::abs(s.lambda_min), std::abs(s.lambda_max));
  return s;
}

Matrix hermitian_expm(const HermitianOperator& h, double angle) {
  const auto& v = h.eigenvectors();
  Vector phases(h.dim());
  for (int i = 0; i < h.dim(); ++i) {
    phases(i) = std::exp(Complex(0.0, -angle * h.eigenvalues()(i)));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace structdiv
