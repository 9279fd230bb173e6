#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fdiv/bounds.hpp"
#include "fdiv/circuit.hpp"
#include "fdiv/divergence.hpp"
#include "fdiv/generator.hpp"
#include "fdiv/measure.hpp"

namespace structdiv {

inline constexpr std::uint64_t kDefaultSeed = 7;

// ---------------------------------------------------------------------------
// Equality constructions on the n-qubit one-layer ansatz (canonical_cn1).
// Gate 0 is the sigma_z / 2 rotation on qubit 1.

/// Atoms at theta = 0 and theta = (pi/2, 0, ..., 0) with the swapped
/// two-element weights. Attains the gradient bound for gate 0.
std::pair<DiscreteMeasure, DiscreteMeasure> gradient_equality_pair(int n, double r);

/// Parameter-space pair attaining the k-th moment bound: the second atom is
/// (pi/2, 0, ..., 0) for even k and (pi, 0, ..., 0) for odd k.
std::pair<DiscreteMeasure, DiscreteMeasure> moment_equality_pair(int n, double r,
                                                                 int k);

/// Unitary-group pair attaining the k-th moment bound: atoms I and
/// exp(-i (pi/2) H_1) for even k, I and exp(-i pi H_1) for odd k.
std::pair<DiscreteMeasure, DiscreteMeasure> unitary_moment_equality_pair(int n,
                                                                         double r,
                                                                         int k);

struct TightnessOptions {
  std::vector<Domain> spaces{Domain::ParameterSpace};
  bool include_gradient = false;
  double tight_tolerance = kTightTolerance;
};

/// One moment report per (n, r, generator, k, space) and, optionally, one
/// gradient report per (n, r, generator). Rows are sorted with sort_reports.
std::vector<BoundReport> tightness_sweep(std::span<const double> r_grid,
                                         std::span<const int> k_list,
                                         std::span<const GeneratorSpec> generators,
                                         std::span<const int> n_list,
                                         const TightnessOptions& options = {});

/// Lexicographic order on (kind, space, generator, k, n, r).
void sort_reports(std::vector<BoundReport>& reports);

// ---------------------------------------------------------------------------
// Randomised instances.

using Rng = std::mt19937_64;

struct RandomInstanceOptions {
  int max_qubits = 3;
  int max_layers = 2;
  int max_gates_per_layer = 3;
  int max_support = 8;
};

struct RandomInstance {
  CircuitProblem problem;
  DiscreteMeasure p;
  DiscreteMeasure q;
  int gate = 0;
};

HermitianOperator random_pauli_sum(Rng& rng, int num_qubits, int max_terms = 3);
QuantumState random_state(Rng& rng, int num_qubits);
std::vector<double> random_simplex(Rng& rng, std::size_t size);
RandomInstance random_instance(Rng& rng, const RandomInstanceOptions& options = {});

struct SoundnessOptions {
  int instances = 1000;
  std::uint64_t seed = kDefaultSeed;
  int max_k = 4;
  RandomInstanceOptions instance;
};

/// For every random instance and generator: the gradient bound on the
/// parameter space and the k = 1..max_k moment bounds on both the parameter
/// space and the push-forward.
std::vector<BoundReport> soundness_sweep(std::span<const GeneratorSpec> generators,
                                         const SoundnessOptions& options = {});

/// The same inequalities with sqrt(Delta) on the right-hand side, evaluated
/// directly from the triangular discrimination. Generator name "sqrt_delta".
std::vector<BoundReport> sqrt_delta_sweep(const SoundnessOptions& options = {});

struct DpiRecord {
  std::string generator;
  std::string source;  // "kernel" or "pushforward"
  double before = 0.0;
  double after = 0.0;
};

/// Random (P, Q, K) triples plus push-forwards through random circuits whose
/// parameter points collide on the unitary group.
std::vector<DpiRecord> dpi_sweep(std::span<const GeneratorSpec> generators,
                                 int trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Oracles and asymptotics.

struct FixedTvResult {
  double t = 0.0;
  double min_found = 0.0;
  double d_f_t = 0.0;
  double binary_value = 0.0;
  int accepted = 0;
  int rejected = 0;
};

/// Random search over measure pairs with d_TV = t (support size 2..max_support)
/// for the minimum symmetric f-divergence. The pair is built as a shared part
/// of mass 1 - t plus disjoint excess parts of mass t each, so the total
/// variation is t by construction; samples whose computed total variation
/// misses t by more than 1e-12 are rejected.
FixedTvResult fixed_tv_oracle(const GeneratorSpec& g, double t, int trials,
                           int max_support, std::uint64_t seed);

struct AsymptoticRow {
  std::string generator;
  double alpha = 0.0;
  double delta_alpha = 0.0;
  double structural = 0.0;
  double sqrt_delta = 0.0;
  double ratio = 0.0;
};

/// D_f^str(P(alpha), P(alpha + d)) against sqrt(Delta) for each step d.
/// Throws DomainError for non-smooth generators.
std::vector<AsymptoticRow> asymptotic_sweep(std::span<const GeneratorSpec> generators,
                                            const MeasureFamily& family, double alpha,
                                            std::span<const double> steps);

}  // namespace structdiv
