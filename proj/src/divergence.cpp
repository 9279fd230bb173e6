#include "fdiv/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fdiv/error.hpp"

namespace structdiv {
namespace {

constexpr int kMaxBisectionSteps = 200;
constexpr double kBisectionTolerance = 1e-12;

ExtendedReal f_divergence_aligned(const GeneratorSpec& g,
                                  std::span<const double> p,
                                  std::span<const double> q) {
  ExtendedReal total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += weighted_term(g, p[i], q[i]);
  }
  // Sums of non-negative terms can only dip below zero through round-off.
  return total.value() < 0.0 ? ExtendedReal(0.0) : total;
}

}  // namespace

ExtendedReal weighted_term(const GeneratorSpec& g, double p, double q) {
  if (!(p >= 0.0) || !(q >= 0.0)) {
    throw DomainError("weighted_term requires p >= 0 and q >= 0");
  }
  if (q == 0.0) {
    if (p == 0.0) return 0.0;
    const double slope = g.slope_at_infinity();
    return std::isinf(slope) ? ExtendedReal::infinity() : ExtendedReal(p * slope);
  }
  if (p == 0.0) {
    const double f0 = g.f_at_zero();
    return std::isinf(f0) ? ExtendedReal::infinity() : ExtendedReal(q * f0);
  }
  return q * g.f(p / q);
}

ExtendedReal f_divergence(const GeneratorSpec& g, const DiscreteMeasure& p,
                          const DiscreteMeasure& q) {
  const auto aligned = align_supports(p, q);
  return f_divergence_aligned(g, aligned.p, aligned.q);
}

ExtendedReal symmetric_f_divergence(const GeneratorSpec& g,
                                    const DiscreteMeasure& p,
                                    const DiscreteMeasure& q) {
  const auto aligned = align_supports(p, q);
  const auto forward = f_divergence_aligned(g, aligned.p, aligned.q);
  const auto backward = f_divergence_aligned(g, aligned.q, aligned.p);
  if (forward.is_infinite() || backward.is_infinite()) {
    return ExtendedReal::infinity();
  }
  return (forward.value() + backward.value()) / 2.0;
}

ExtendedReal binary_divergence(const GeneratorSpec& g, double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("binary divergence requires s in [0, 1]");
  }
  if (s == 0.0) return 0.0;
  if (s == 1.0) return ExtendedReal(g.f_at_zero()) + g.slope_at_infinity();
  const double lo = (1.0 - s) / 2.0;
  const double hi = (1.0 + s) / 2.0;
  return lo * g.f(hi / lo) + hi * g.f(lo / hi);
}

double invert_binary_divergence(const GeneratorSpec& g, ExtendedReal y) {
  if (!(y.value() >= 0.0)) {
    throw DomainError("cannot invert d_f at a negative value");
  }
  if (y.value() == 0.0) return 0.0;
  const ExtendedReal sup = binary_divergence(g, 1.0);
  if (y >= sup) return 1.0;

  // d_f is strictly increasing, so the bracket [lo, hi] always contains the
  // root. Iterate to the resolution of a double rather than stopping at the
  // tolerance; the result is then monotone in y up to a single ulp.
  double lo = 0.0;
  double hi = 1.0;
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (binary_divergence(g, mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > kBisectionTolerance) {
    throw NumericError("bisection for d_f^{-1} did not converge");
  }
  return lo + (hi - lo) / 2.0;
}

double structural_divergence(const GeneratorSpec& g, const DiscreteMeasure& p,
                             const DiscreteMeasure& q) {
  if (g.kind() == GeneratorKind::TotalVariation) return total_variation(p, q);
  return invert_binary_divergence(g, symmetric_f_divergence(g, p, q));
}

double min_structural_divergence(std::span<const GeneratorSpec> gs,
                                 const DiscreteMeasure& p,
                                 const DiscreteMeasure& q) {
  if (gs.empty()) {
    throw ArgumentError("min_structural_divergence needs at least one generator");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& g : gs) best = std::min(best, structural_divergence(g, p, q));
  return best;
}

double total_variation(const DiscreteMeasure& p, const DiscreteMeasure& q) {
  const auto aligned = align_supports(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < aligned.p.size(); ++i) {
    sum += std::abs(aligned.p[i] - aligned.q[i]);
  }
  return std::clamp(sum / 2.0, 0.0, 1.0);
}

double triangular_discrimination(const DiscreteMeasure& p,
                                 const DiscreteMeasure& q) {
  const auto aligned = align_supports(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < aligned.p.size(); ++i) {
    const double total = aligned.p[i] + aligned.q[i];
    if (total == 0.0) continue;
    const double d = aligned.p[i] - aligned.q[i];
    sum += d * d / total;
  }
  return std::clamp(sum / 2.0, 0.0, 1.0);
}

double bhattacharyya_coefficient(const DiscreteMeasure& p,
                                 const DiscreteMeasure& q) {
  const auto aligned = align_supports(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < aligned.p.size(); ++i) {
    sum += std::sqrt(aligned.p[i] * aligned.q[i]);
  }
  return sum;
}

double fisher_information(const MeasureFamily& family, double alpha,
                          double step) {
  if (!(step > 0.0)) throw DomainError("Fisher step must be positive");
  const auto center = family(alpha);
  const auto minus = family(alpha - step);
  const auto plus = family(alpha + step);
  const auto outer = align_supports(minus, plus);
  double sum = 0.0;
  for (std::size_t i = 0; i < outer.labels.size(); ++i) {
    const double p0 = center.weight_of(outer.labels[i]);
    if (p0 <= 0.0 || outer.p[i] <= 0.0 || outer.q[i] <= 0.0) {
      throw DomainError("Fisher information undefined: atom '" +
                        outer.labels[i] + "' has zero weight on the stencil");
    }
    const double derivative = (outer.q[i] - outer.p[i]) / (2.0 * step);
    sum += derivative * derivative / p0;
  }
  for (const auto& atom : center.atoms()) {
    if (minus.weight_of(atom.label) <= 0.0) {
      throw DomainError("Fisher information undefined: atom '" + atom.label +
                        "' has zero weight on the stencil");
    }
  }
  return sum;
}

DiscreteMeasure bernoulli_measure(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("Bernoulli parameter must lie in [0, 1]");
  }
  return make_measure({{"a", alpha}, {"b", 1.0 - alpha}});
}

}  // namespace structdiv
