#include "fdiv/bounds.hpp"

#include <cmath>
#include <limits>

#include "fdiv/divergence.hpp"
#include "fdiv/error.hpp"
#include "fdiv/pushforward.hpp"

namespace structdiv {
namespace {

void require_parameter_space(const DiscreteMeasure& p, const char* what) {
  if (p.domain() != Domain::ParameterSpace) {
    throw ValidationError(std::string(what) +
                          " needs a parameter-space measure");
  }
}

void require_order(int k) {
  if (k < 1) throw ArgumentError("moment order k must be >= 1");
}

double op_norm_of(const HermitianOperator& o) {
  const double norm = spectral_summary(o).op_norm;
  if (norm == 0.0) throw DomainError("observable has zero operator norm");
  return norm;
}

}  // namespace

std::string_view to_string(BoundKind kind) {
  return kind == BoundKind::GradientBound ? "gradient" : "moment";
}

std::string_view to_string(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::BPNecessary:
      return "bp_necessary";
    case ThresholdKind::CCNecessary:
      return "cc_necessary";
    case ThresholdKind::NoiseSufficientGrad:
      return "noise_sufficient_gradient";
    case ThresholdKind::NoiseSufficientMoment:
      return "noise_sufficient_moment";
  }
  return "unknown";
}

BoundReport finalize(BoundReport report, double tight_tolerance) {
  report.slack = report.rhs - report.lhs;
  report.satisfied = report.slack >= -kSatisfiedTolerance;
  report.tight = report.satisfied && std::abs(report.slack) <= tight_tolerance;
  return report;
}

void enforce(const BoundReport& report) {
  if (!report.satisfied) {
    throw ConsistencyError(std::string(to_string(report.kind)) +
                           " bound violated for generator '" +
                           report.generator + "': lhs " +
                           format_double(report.lhs) + " > rhs " +
                           format_double(report.rhs));
  }
}

int moment_constant(int k) {
  require_order(k);
  return k % 2 == 0 ? 1 : 2;
}

double expected_abs_gradient(const DiscreteMeasure& p,
                             const CircuitProblem& problem, int j) {
  require_parameter_space(p, "expected_abs_gradient");
  double sum = 0.0;
  for (const auto& atom : p.atoms()) {
    const auto theta = decode_parameter_label(atom.label);
    sum += atom.weight * std::abs(gradient(problem.circuit, theta, j,
                                           problem.init, problem.observable));
  }
  return sum;
}

double cost_moment(const DiscreteMeasure& p, const CircuitProblem& problem,
                   int k) {
  require_order(k);
  if (p.domain() == Domain::UnitaryGroup) {
    return cost_moment(p, k, problem.init, problem.observable);
  }
  require_parameter_space(p, "cost_moment");
  double sum = 0.0;
  for (const auto& atom : p.atoms()) {
    const auto theta = decode_parameter_label(atom.label);
    sum += atom.weight *
           std::pow(cost(problem.circuit, theta, problem.init, problem.observable), k);
  }
  return sum;
}

double cost_moment(const DiscreteMeasure& p, int k, const QuantumState& init,
                   const HermitianOperator& o) {
  require_order(k);
  if (p.domain() != Domain::UnitaryGroup) {
    throw ValidationError("cost_moment without a circuit needs a unitary-group measure");
  }
  double sum = 0.0;
  for (const auto& atom : p.atoms()) {
    const Matrix u = decode_unitary_label(atom.label);
    sum += atom.weight * std::pow(cost_of_unitary(u, init, o), k);
  }
  return sum;
}

BoundReport check_gradient_bound(const GeneratorSpec& g,
                                 const DiscreteMeasure& p,
                                 const DiscreteMeasure& q,
                                 const CircuitProblem& problem, int j) {
  require_parameter_space(p, "check_gradient_bound");
  require_parameter_space(q, "check_gradient_bound");
  const double norm = op_norm_of(problem.observable);
  const double half_range = spectral_summary(problem.circuit.generator(j)).half_range;
  BoundReport report;
  report.kind = BoundKind::GradientBound;
  report.space = Domain::ParameterSpace;
  report.generator = g.name();
  report.n = problem.circuit.num_qubits();
  report.lhs = std::abs(expected_abs_gradient(p, problem, j) -
                        expected_abs_gradient(q, problem, j)) /
               norm;
  report.rhs = 2.0 * half_range * structural_divergence(g, p, q);
  report.metadata = "gate=" + std::to_string(j);
  return finalize(report);
}

BoundReport check_moment_bound(const GeneratorSpec& g, const DiscreteMeasure& p,
                               const DiscreteMeasure& q,
                               const CircuitProblem& problem, int k) {
  require_order(k);
  if (p.domain() != q.domain() || p.domain() == Domain::Abstract) {
    throw ValidationError(
        "moment bound needs two measures on the same parameter or unitary domain");
  }
  const double norm = op_norm_of(problem.observable);
  BoundReport report;
  report.kind = BoundKind::MomentBound;
  report.space = p.domain();
  report.generator = g.name();
  report.k = k;
  report.n = problem.circuit.num_qubits();
  report.lhs = std::abs(cost_moment(p, problem, k) - cost_moment(q, problem, k)) /
               std::pow(norm, k);
  report.rhs = moment_constant(k) * structural_divergence(g, p, q);
  return finalize(report);
}

ThresholdReport bp_divergence_threshold(double g_th, double half_range_hj,
                                        double op_norm_o, double e_bp_abs_grad,
                                        double actual_divergence) {
  if (!(g_th >= 0.0 && half_range_hj >= 0.0 && op_norm_o >= 0.0 &&
        e_bp_abs_grad >= 0.0)) {
    throw DomainError("threshold inputs must be non-negative");
  }
  if (half_range_hj == 0.0 || op_norm_o == 0.0) {
    throw DomainError("||H_j||_R and ||O||_inf must be positive");
  }
  ThresholdReport report;
  report.kind = ThresholdKind::BPNecessary;
  report.threshold =
      std::max(0.0, (g_th - e_bp_abs_grad) / (half_range_hj * op_norm_o));
  report.actual_divergence = actual_divergence;
  report.verdict = actual_divergence >= report.threshold;
  return report;
}

ThresholdReport cc_divergence_threshold(double delta, double op_norm_o, int k,
                                        double actual_divergence) {
  require_order(k);
  if (!(delta >= 0.0)) throw DomainError("delta must be non-negative");
  if (!(op_norm_o > 0.0)) throw DomainError("||O||_inf must be positive");
  ThresholdReport report;
  report.kind = ThresholdKind::CCNecessary;
  report.threshold = delta / std::pow(op_norm_o, k);
  report.actual_divergence = actual_divergence;
  report.verdict = actual_divergence >= report.threshold;
  return report;
}

NoiseSufficiency noise_sufficiency_check(const GeneratorSpec& g,
                                         const DiscreteMeasure& p,
                                         const DiscreteMeasure& p_prime,
                                         const CircuitProblem& problem, int j,
                                         double g_th, double delta, int k) {
  require_parameter_space(p, "noise_sufficiency_check");
  require_parameter_space(p_prime, "noise_sufficiency_check");
  require_order(k);
  if (!(g_th >= 0.0 && delta >= 0.0)) {
    throw DomainError("g_th and delta must be non-negative");
  }
  const double norm = op_norm_of(problem.observable);
  const double half_range = spectral_summary(problem.circuit.generator(j)).half_range;
  const double divergence = structural_divergence(g, p, p_prime);

  NoiseSufficiency out;
  auto& grad = out.gradient;
  grad.kind = ThresholdKind::NoiseSufficientGrad;
  grad.threshold = half_range == 0.0
                       ? std::numeric_limits<double>::infinity()
                       : g_th / (2.0 * half_range * norm);
  grad.actual_divergence = divergence;
  grad.verdict = divergence <= grad.threshold;
  grad.measured_deviation = std::abs(expected_abs_gradient(p, problem, j) -
                                     expected_abs_gradient(p_prime, problem, j));
  grad.deviation_cap = g_th;

  auto& moment = out.moment;
  moment.kind = ThresholdKind::NoiseSufficientMoment;
  moment.threshold = delta / (moment_constant(k) * std::pow(norm, k));
  moment.actual_divergence = divergence;
  moment.verdict = divergence <= moment.threshold;
  moment.measured_deviation =
      std::abs(cost_moment(p, problem, k) - cost_moment(p_prime, problem, k));
  moment.deviation_cap = delta;

  for (const auto* report : {&grad, &moment}) {
    if (report->verdict &&
        *report->measured_deviation > *report->deviation_cap + kSatisfiedTolerance) {
      throw ConsistencyError(std::string(to_string(report->kind)) +
                             ": sufficiency verdict contradicted by measured deviation " +
                             format_double(*report->measured_deviation));
    }
  }
  return out;
}

}  // namespace structdiv
