#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fdiv/circuit.hpp"
#include "fdiv/generator.hpp"
#include "fdiv/measure.hpp"

namespace structdiv {

/// A report is satisfied when slack >= -kSatisfiedTolerance and tight when
/// |slack| <= kTightTolerance. Both absorb round-off only.
inline constexpr double kSatisfiedTolerance = 1e-10;
inline constexpr double kTightTolerance = 1e-9;

enum class BoundKind { GradientBound, MomentBound };

std::string_view to_string(BoundKind kind);

/// One evaluated instance of the gradient or moment inequality.
struct BoundReport {
  BoundKind kind = BoundKind::GradientBound;
  Domain space = Domain::ParameterSpace;
  std::string generator;
  int k = 0;  // moment order, 0 for gradient reports
  int n = 0;  // qubit count
  double r = 0.0;  // bias of the equality measures, 0 when not applicable
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = false;
  bool tight = false;
  std::string metadata;
};

/// Fills slack, satisfied and tight from lhs and rhs.
BoundReport finalize(BoundReport report,
                     double tight_tolerance = kTightTolerance);

/// Throws ConsistencyError when the report is not satisfied.
void enforce(const BoundReport& report);

/// C(k): 1 for even k, 2 for odd k.
int moment_constant(int k);

/// E_P[|d<O>/d theta_j|] for a parameter-space measure.
double expected_abs_gradient(const DiscreteMeasure& p, const CircuitProblem& problem,
                             int j);

/// E_P[<O>^k]. Parameter-space atoms are evaluated through the circuit;
/// unitary-group atoms decode their unitary from the label.
double cost_moment(const DiscreteMeasure& p, const CircuitProblem& problem, int k);

/// E_P[<O>^k] for a unitary-group measure; no circuit needed.
double cost_moment(const DiscreteMeasure& p, int k, const QuantumState& init,
                   const HermitianOperator& o);

/// lhs = |E_P|d_j<O>| - E_Q|d_j<O>|| / ||O||_inf,
/// rhs = 2 ||H_j||_R D_f^str(P, Q).
BoundReport check_gradient_bound(const GeneratorSpec& g, const DiscreteMeasure& p,
                                 const DiscreteMeasure& q,
                                 const CircuitProblem& problem, int j);

/// lhs = |E_P[<O>^k] - E_Q[<O>^k]| / ||O||_inf^k, rhs = C(k) D_f^str(P, Q).
/// The space is taken from the measures' domain tag.
BoundReport check_moment_bound(const GeneratorSpec& g, const DiscreteMeasure& p,
                               const DiscreteMeasure& q,
                               const CircuitProblem& problem, int k);

enum class ThresholdKind {
  BPNecessary,
  CCNecessary,
  NoiseSufficientGrad,
  NoiseSufficientMoment,
};

std::string_view to_string(ThresholdKind kind);

struct ThresholdReport {
  ThresholdKind kind = ThresholdKind::BPNecessary;
  double threshold = 0.0;
  double actual_divergence = 0.0;
  bool verdict = false;
  /// Sufficiency checks only: the deviation measured on the circuit and the
  /// cap it must respect whenever the verdict is true.
  std::optional<double> measured_deviation;
  std::optional<double> deviation_cap;
};

/// Necessary condition for keeping E_P|d_j<O>| above g_th relative to a
/// barren-plateau measure:
///   D^str(P, P_BP) >= max(0, (g_th - E_BP) / (||H_j||_R ||O||_inf)).
/// verdict = actual_divergence >= threshold.
ThresholdReport bp_divergence_threshold(double g_th, double half_range_hj,
                                        double op_norm_o, double e_bp_abs_grad,
                                        double actual_divergence);

/// Necessary condition for a k-th moment shift of at least delta away from a
/// cost-concentrated measure: D^str >= delta / ||O||_inf^k.
ThresholdReport cc_divergence_threshold(double delta, double op_norm_o, int k,
                                        double actual_divergence);

struct NoiseSufficiency {
  ThresholdReport gradient;
  ThresholdReport moment;
};

/// Evaluates D_f^str(P, P') and the two sufficiency conditions
///   D_f^str <= g_th / (2 ||H_j||_R ||O||_inf)   (gradient shift <= g_th)
///   D_f^str <= delta / (C(k) ||O||_inf^k)       (k-th moment shift <= delta)
/// then measures both shifts on the circuit. Throws ConsistencyError when a
/// true verdict is contradicted by the measurement.
NoiseSufficiency noise_sufficiency_check(const GeneratorSpec& g,
                                         const DiscreteMeasure& p,
                                         const DiscreteMeasure& p_prime,
                                         const CircuitProblem& problem, int j,
                                         double g_th, double delta, int k);

}  // namespace structdiv
