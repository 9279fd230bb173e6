#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fdiv/extended_real.hpp"
#include "fdiv/generator.hpp"
#include "fdiv/measure.hpp"

namespace structdiv {

/// q f(p/q) under the limit conventions 0 f(0/0) = 0,
/// q f(0/q) = q f(0+) and 0 f(p/0) = p lim_{x->inf} f(x)/x.
ExtendedReal weighted_term(const GeneratorSpec& g, double p, double q);

/// D_f(P||Q) over the union support.
ExtendedReal f_divergence(const GeneratorSpec& g, const DiscreteMeasure& p,
                          const DiscreteMeasure& q);

/// (D_f(P||Q) + D_f(Q||P)) / 2.
ExtendedReal symmetric_f_divergence(const GeneratorSpec& g,
                                    const DiscreteMeasure& p,
                                    const DiscreteMeasure& q);

/// Symmetric f-divergence of the swapped two-element pair with bias s:
///   d_f(s) = (1-s)/2 f((1+s)/(1-s)) + (1+s)/2 f((1-s)/(1+s)).
/// d_f(1) is the limit f(0+) + lim f(x)/x, possibly +inf.
ExtendedReal binary_divergence(const GeneratorSpec& g, double s);

/// d_f^{-1}(y) by bisection on [0, 1]. Values at or above d_f(1) map to 1.
double invert_binary_divergence(const GeneratorSpec& g, ExtendedReal y);

/// d_f^{-1}(symmetric D_f(P, Q)), in [0, 1]. The total variation generator
/// returns d_TV directly.
double structural_divergence(const GeneratorSpec& g, const DiscreteMeasure& p,
                             const DiscreteMeasure& q);

/// Minimum of the structural divergence over a finite generator registry.
/// This is an upper bound on the infimum over all admissible generators.
double min_structural_divergence(std::span<const GeneratorSpec> gs,
                                 const DiscreteMeasure& p,
                                 const DiscreteMeasure& q);

double total_variation(const DiscreteMeasure& p, const DiscreteMeasure& q);

/// Delta(P, Q) = 1/2 sum (p - q)^2 / (p + q).
double triangular_discrimination(const DiscreteMeasure& p,
                                 const DiscreteMeasure& q);

/// sum sqrt(p q).
double bhattacharyya_coefficient(const DiscreteMeasure& p,
                                 const DiscreteMeasure& q);

using MeasureFamily = std::function<DiscreteMeasure(double)>;

/// sum (d_alpha p)^2 / p with the derivative taken by central differences
/// of step `step`. Throws DomainError if any atom has zero weight anywhere
/// on the stencil.
double fisher_information(const MeasureFamily& family, double alpha,
                          double step);

/// Bernoulli family {a: alpha, b: 1 - alpha}.
DiscreteMeasure bernoulli_measure(double alpha);

}  // namespace structdiv
