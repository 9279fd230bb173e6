#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdiv/extended_real.hpp"

namespace structdiv {

enum class GeneratorKind {
  TotalVariation,
  SquaredHellinger,
  JensenShannon,
  Jeffreys,
  Triangular,
  Custom,
};

std::string_view to_string(GeneratorKind kind);

using RealFunction = std::function<double(double)>;

/// A convex generator f with f(1) = 0, defining the f-divergence
/// D_f(P||Q) = sum_x q(x) f(p(x)/q(x)).
///
/// The two limits are needed to evaluate the divergence when one side has
/// zero mass on an atom: f_at_zero = lim_{x->0+} f(x) and
/// slope_at_infinity = lim_{x->inf} f(x)/x. Either may be +inf.
///
/// Derivatives are absent only for the total variation generator, which is
/// not differentiable at 1.
class GeneratorSpec {
 public:
  GeneratorSpec(std::string name, GeneratorKind kind, RealFunction f,
                std::optional<RealFunction> f_prime,
                std::optional<RealFunction> f_double_prime, double f_at_zero,
                double slope_at_infinity);

  /// Code-level extension point. Validates f(1) = 0 to 1e-14.
  static GeneratorSpec custom(std::string name, RealFunction f,
                              RealFunction f_prime, RealFunction f_double_prime,
                              double f_at_zero, double slope_at_infinity);

  const std::string& name() const { return name_; }
  GeneratorKind kind() const { return kind_; }
  bool is_smooth() const { return f_double_prime_.has_value(); }

  /// f(x) for finite x > 0. Throws InvalidGeneratorError on NaN.
  double f(double x) const;
  double f_prime(double x) const;
  double f_double_prime(double x) const;
  double f_at_zero() const { return f_at_zero_; }
  double slope_at_infinity() const { return slope_at_infinity_; }

 private:
  std::string name_;
  GeneratorKind kind_;
  RealFunction f_;
  std::optional<RealFunction> f_prime_;
  std::optional<RealFunction> f_double_prime_;
  double f_at_zero_;
  double slope_at_infinity_;
};

/// f(x) = |x - 1| / 2.
GeneratorSpec total_variation_generator();
/// f(x) = (sqrt(x) - 1)^2 / 2.
GeneratorSpec squared_hellinger_generator();
/// f(x) = (x ln(2x/(x+1)) + ln(2/(x+1))) / 2.
GeneratorSpec jensen_shannon_generator();
/// f(x) = (x - 1) ln(x) / 2, the symmetrised Kullback-Leibler divergence.
GeneratorSpec jeffreys_generator();
/// f(x) = (x - 1)^2 / (2 (x + 1)).
GeneratorSpec triangular_generator();

/// The five built-ins in a fixed order: tv, hellinger2, js, jeffreys,
/// triangular.
std::vector<GeneratorSpec> builtin_generators();

/// Looks up a built-in by its registry name. Throws ArgumentError if unknown.
GeneratorSpec generator_by_name(std::string_view name);

/// Parses a comma separated list of registry names. Empty input selects all
/// built-ins.
std::vector<GeneratorSpec> generators_from_list(std::string_view names);

/// f~(x) = (f(x) + x f(1/x)) / 2. Its f-divergence equals the symmetric
/// f-divergence of the input generator.
GeneratorSpec symmetrized(const GeneratorSpec& g);

/// f(x) for x in [0, inf]. x = 0 and x = inf use the stored limits.
ExtendedReal eval_generator(const GeneratorSpec& g, double x);

}  // namespace structdiv
