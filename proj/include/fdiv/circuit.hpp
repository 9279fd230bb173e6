#pragma once

#include <vector>

#include "fdiv/measure.hpp"
#include "fdiv/operator.hpp"

namespace structdiv {

/// Normalised pure state |init>.
class QuantumState {
 public:
  /// Throws ValidationError unless the squared norm is 1 within 1e-12 and
  /// the length is a power of two.
  explicit QuantumState(Vector amplitudes);

  /// |+>^{(x) n} with |+> = (|0> + |1>) / sqrt(2).
  static QuantumState plus_all(int num_qubits);

  const Vector& amplitudes() const { return amplitudes_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }

 private:
  Vector amplitudes_;
};

/// Layered ansatz U(theta) = prod_l prod_m exp(-i theta_{l,m} H_{l,m}).
///
/// Gates are flattened in (layer, gate) order into indices 0..arity-1.
/// Gate 0 acts first on the state, so
///   U = G_{arity-1} ... G_1 G_0.
class CircuitSpec {
 public:
  CircuitSpec(int num_qubits, std::vector<std::vector<HermitianOperator>> layers);

  int num_qubits() const { return num_qubits_; }
  int dim() const { return 1 << num_qubits_; }
  int arity() const { return static_cast<int>(gate_index_.size()); }
  const std::vector<std::vector<HermitianOperator>>& layers() const {
    return layers_;
  }
  /// Generator of flattened gate j.
  const HermitianOperator& generator(int j) const;

 private:
  int num_qubits_;
  std::vector<std::vector<HermitianOperator>> layers_;
  // (layer, position) of each flattened gate.
  std::vector<std::pair<std::size_t, std::size_t>> gate_index_;
};

/// Everything needed to evaluate the cost <O> = Tr[rho U^dag O U].
struct CircuitProblem {
  CircuitSpec circuit;
  QuantumState init;
  HermitianOperator observable;
};

Matrix build_unitary(const CircuitSpec& c, const ParameterPoint& theta);

/// <init| U^dag O U |init> for an explicit unitary.
double cost_of_unitary(const Matrix& u, const QuantumState& init,
                       const HermitianOperator& o);

double cost(const CircuitSpec& c, const ParameterPoint& theta,
            const QuantumState& init, const HermitianOperator& o);

/// d<O>/d theta_j = i Tr[[H_j, O+] rho-], with O+ = (U+)^dag O U+ built from
/// the gates after j and rho- = U- rho (U-)^dag from gate j and those before.
double gradient(const CircuitSpec& c, const ParameterPoint& theta, int j,
                const QuantumState& init, const HermitianOperator& o);

/// One-qubit, one-layer ansatz: H = sigma_z / 2, O = sigma_x, init = |+>.
CircuitProblem canonical_c11();

/// n-qubit, one-layer ansatz with H_j = sigma_z / 2 on qubit j,
/// O = sigma_x^{(x) n} and init = |+>^{(x) n}. Equals canonical_c11 at n = 1.
CircuitProblem canonical_cn1(int num_qubits);

}  // namespace structdiv
