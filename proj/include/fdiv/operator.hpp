#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace structdiv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// One term c * P of a Pauli sum. The string is read left to right as a
/// tensor product, so the last character acts on qubit 1.
struct PauliTerm {
  double coefficient = 0.0;
  std::string paulis;
};

/// Dense matrix of a Pauli string over {I, X, Y, Z}.
Matrix pauli_string_matrix(const std::string& paulis);

/// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

struct SpectralSummary {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  /// (lambda_max - lambda_min) / 2.
  double half_range = 0.0;
  /// max(|lambda_min|, |lambda_max|).
  double op_norm = 0.0;
};

/// Dense Hermitian matrix on n qubits. The eigendecomposition is computed
/// once at construction and reused for exponentials and spectral queries.
class HermitianOperator {
 public:
  /// Throws ValidationError if the matrix is not square with power-of-two
  /// dimension, or deviates from Hermitian by more than 1e-12.
  explicit HermitianOperator(Matrix matrix);

  static HermitianOperator from_pauli_sum(std::vector<PauliTerm> terms);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  int num_qubits() const { return num_qubits_; }
  const Matrix& matrix() const { return matrix_; }
  const std::optional<std::vector<PauliTerm>>& pauli_sum() const {
    return pauli_sum_;
  }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

 private:
  Matrix matrix_;
  int num_qubits_ = 0;
  std::optional<std::vector<PauliTerm>> pauli_sum_;
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
};

SpectralSummary spectral_summary(const HermitianOperator& a);

/// exp(-i angle H) from the eigendecomposition of H.
Matrix hermitian_expm(const HermitianOperator& h, double angle);

/// Largest |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace structdiv
