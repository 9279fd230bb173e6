#include "fdiv/circuit.hpp"

#include <cmath>
#include <string>

#include "fdiv/error.hpp"

namespace structdiv {
namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kImaginaryTolerance = 1e-10;

double real_part_checked(Complex value, const char* what) {
  if (std::abs(value.imag()) > kImaginaryTolerance) {
    throw NumericError(std::string(what) + " has imaginary residue " +
                       std::to_string(value.imag()) +
                       "; operator is not Hermitian");
  }
  return value.real();
}

void check_arity(const CircuitSpec& c, const ParameterPoint& theta) {
  if (static_cast<int>(theta.angles.size()) != c.arity()) {
    throw ArgumentError("parameter point has " +
                        std::to_string(theta.angles.size()) +
                        " angles but the circuit has " +
                        std::to_string(c.arity()) + " gates");
  }
}

void check_problem_dims(int dim, const QuantumState& init,
                        const HermitianOperator& o) {
  if (init.dim() != dim || o.dim() != dim) {
    throw ValidationError("state, observable and circuit dimensions differ");
  }
}

}  // namespace

QuantumState::QuantumState(Vector amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  const auto n = amplitudes_.size();
  if (n < 2 || (n & (n - 1)) != 0) {
    throw ValidationError("state length must be a power of two >= 2");
  }
  if (!amplitudes_.allFinite()) {
    throw ValidationError("state has non-finite amplitudes");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTolerance) {
    throw ValidationError("state is not normalised (squared norm " +
                          std::to_string(amplitudes_.squaredNorm()) + ")");
  }
}

QuantumState QuantumState::plus_all(int num_qubits) {
  if (num_qubits < 1) throw ArgumentError("need at least one qubit");
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  return QuantumState(
      Vector::Constant(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0)));
}

CircuitSpec::CircuitSpec(int num_qubits,
                         std::vector<std::vector<HermitianOperator>> layers)
    : num_qubits_(num_qubits), layers_(std::move(layers)) {
  if (num_qubits_ < 1 || num_qubits_ > 16) {
    throw ValidationError("qubit count must lie in [1, 16]");
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    for (std::size_t m = 0; m < layers_[l].size(); ++m) {
      if (layers_[l][m].dim() != dim()) {
        throw ValidationError("generator (" + std::to_string(l) + ", " +
                              std::to_string(m) + ") has dimension " +
                              std::to_string(layers_[l][m].dim()) +
                              ", expected " + std::to_string(dim()));
      }
      gate_index_.emplace_back(l, m);
    }
  }
}

const HermitianOperator& CircuitSpec::generator(int j) const {
  if (j < 0 || j >= arity()) {
    throw ArgumentError("gate index " + std::to_string(j) +
                        " out of range [0, " + std::to_string(arity()) + ")");
  }
  const auto [l, m] = gate_index_[static_cast<std::size_t>(j)];
  return layers_[l][m];
}

Matrix build_unitary(const CircuitSpec& c, const ParameterPoint& theta) {
  check_arity(c, theta);
  Matrix u = Matrix::Identity(c.dim(), c.dim());
  for (int j = 0; j < c.arity(); ++j) {
    u = hermitian_expm(c.generator(j), theta.angles[static_cast<std::size_t>(j)]) * u;
  }
  return u;
}

double cost_of_unitary(const Matrix& u, const QuantumState& init,
                       const HermitianOperator& o) {
  check_problem_dims(static_cast<int>(u.rows()), init, o);
  const Vector psi = u * init.amplitudes();
  return real_part_checked(psi.dot(o.matrix() * psi), "cost trace");
}

double cost(const CircuitSpec& c, const ParameterPoint& theta,
            const QuantumState& init, const HermitianOperator& o) {
  check_problem_dims(c.dim(), init, o);
  return cost_of_unitary(build_unitary(c, theta), init, o);
}

double gradient(const CircuitSpec& c, const ParameterPoint& theta, int j,
                const QuantumState& init, const HermitianOperator& o) {
  check_arity(c, theta);
  check_problem_dims(c.dim(), init, o);
  const auto& hj = c.generator(j);

  // psi_minus = G_j ... G_0 |init>; the gate G_j commutes with H_j.
  Vector psi_minus = init.amplitudes();
  for (int i = 0; i <= j; ++i) {
    psi_minus = hermitian_expm(c.generator(i), theta.angles[static_cast<std::size_t>(i)]) * psi_minus;
  }
  Matrix u_plus = Matrix::Identity(c.dim(), c.dim());
  for (int i = j + 1; i < c.arity(); ++i) {
    u_plus = hermitian_expm(c.generator(i), theta.angles[static_cast<std::size_t>(i)]) * u_plus;
  }
  const Matrix o_plus = u_plus.adjoint() * o.matrix() * u_plus;
  const Matrix commutator = hj.matrix() * o_plus - o_plus * hj.matrix();
  // Tr[[H, O+] rho-] = <psi-| [H, O+] |psi->.
  const Complex trace = psi_minus.dot(commutator * psi_minus);
  return real_part_checked(Complex(0.0, 1.0) * trace, "gradient trace");
}

CircuitProblem canonical_c11() { return canonical_cn1(1); }

CircuitProblem canonical_cn1(int num_qubits) {
  if (num_qubits < 1) {
    throw ArgumentError("canonical_cn1 requires at least one qubit");
  }
  const auto n = static_cast<std::size_t>(num_qubits);
  std::vector<HermitianOperator> layer;
  for (std::size_t j = 1; j <= n; ++j) {
    std::string paulis(n, 'I');
    paulis[n - j] = 'Z';
    layer.push_back(HermitianOperator::from_pauli_sum({{0.5, paulis}}));
  }
  std::vector<std::vector<HermitianOperator>> layers{std::move(layer)};
  return CircuitProblem{
      CircuitSpec(num_qubits, std::move(layers)),
      QuantumState::plus_all(num_qubits),
      HermitianOperator::from_pauli_sum({{1.0, std::string(n, 'X')}})};
}

}  // namespace structdiv
