#include "fdiv/generator.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "fdiv/error.hpp"

namespace structdiv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double checked(const std::string& name, double value, double x) {
  if (std::isnan(value)) {
    throw InvalidGeneratorError("generator '" + name + "' returned NaN at x=" +
                                std::to_string(x));
  }
  return value;
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::TotalVariation:
      return "TotalVariation";
    case GeneratorKind::SquaredHellinger:
      return "SquaredHellinger";
    case GeneratorKind::JensenShannon:
      return "JensenShannon";
    case GeneratorKind::Jeffreys:
      return "Jeffreys";
    case GeneratorKind::Triangular:
      return "Triangular";
    case GeneratorKind::Custom:
      return "Custom";
  }
  return "Unknown";
}

GeneratorSpec::GeneratorSpec(std::string name, GeneratorKind kind,
                             RealFunction f,
                             std::optional<RealFunction> f_prime,
                             std::optional<RealFunction> f_double_prime,
                             double f_at_zero, double slope_at_infinity)
    : name_(std::move(name)),
      kind_(kind),
      f_(std::move(f)),
      f_prime_(std::move(f_prime)),
      f_double_prime_(std::move(f_double_prime)),
      f_at_zero_(f_at_zero),
      slope_at_infinity_(slope_at_infinity) {
  if (!f_) throw InvalidGeneratorError("generator '" + name_ + "' has no f");
  if (std::isnan(f_at_zero_) || std::isnan(slope_at_infinity_)) {
    throw InvalidGeneratorError("generator '" + name_ +
                                "' has NaN limit values");
  }
}

GeneratorSpec GeneratorSpec::custom(std::string name, RealFunction f,
                                    RealFunction f_prime,
                                    RealFunction f_double_prime,
                                    double f_at_zero,
                                    double slope_at_infinity) {
  GeneratorSpec g(std::move(name), GeneratorKind::Custom, std::move(f),
                  std::move(f_prime), std::move(f_double_prime), f_at_zero,
                  slope_at_infinity);
  const double at_one = g.f(1.0);
  if (std::abs(at_one) > 1e-14) {
    throw InvalidGeneratorError("generator '" + g.name() +
                                "' violates f(1) = 0: f(1) = " +
                                std::to_string(at_one));
  }
  return g;
}

double GeneratorSpec::f(double x) const { return checked(name_, f_(x), x); }

double GeneratorSpec::f_prime(double x) const {
  if (!f_prime_) {
    throw DomainError("generator '" + name_ + "' has no first derivative");
  }
  return checked(name_, (*f_prime_)(x), x);
}

double GeneratorSpec::f_double_prime(double x) const {
  if (!f_double_prime_) {
    throw DomainError("generator '" + name_ + "' has no second derivative");
  }
  return checked(name_, (*f_double_prime_)(x), x);
}

GeneratorSpec total_variation_generator() {
  return GeneratorSpec(
      "tv", GeneratorKind::TotalVariation,
      [](double x) { return std::abs(x - 1.0) / 2.0; }, std::nullopt,
      std::nullopt, 0.5, 0.5);
}

GeneratorSpec squared_hellinger_generator() {
  return GeneratorSpec(
      "hellinger2", GeneratorKind::SquaredHellinger,
      [](double x) {
        const double d = std::sqrt(x) - 1.0;
        return d * d / 2.0;
      },
      RealFunction([](double x) { return (1.0 - 1.0 / std::sqrt(x)) / 2.0; }),
      RealFunction([](double x) { return 0.25 / (x * std::sqrt(x)); }), 0.5,
      0.5);
}

GeneratorSpec jensen_shannon_generator() {
  // log1p keeps the evaluation accurate near x = 1 where both terms cancel.
  return GeneratorSpec(
      "js", GeneratorKind::JensenShannon,
      [](double x) {
        const double u = (x - 1.0) / (x + 1.0);
        return (x * std::log1p(u) + std::log1p(-u)) / 2.0;
      },
      RealFunction([](double x) {
        return std::log1p((x - 1.0) / (x + 1.0)) / 2.0;
      }),
      RealFunction([](double x) { return 1.0 / (2.0 * x * (x + 1.0)); }),
      std::log(2.0) / 2.0, std::log(2.0) / 2.0);
}

GeneratorSpec jeffreys_generator() {
  return GeneratorSpec(
      "jeffreys", GeneratorKind::Jeffreys,
      [](double x) { return (x - 1.0) * std::log(x) / 2.0; },
      RealFunction(
          [](double x) { return (std::log(x) + (x - 1.0) / x) / 2.0; }),
      RealFunction([](double x) { return (x + 1.0) / (2.0 * x * x); }), kInf,
      kInf);
}

GeneratorSpec triangular_generator() {
  return GeneratorSpec(
      "triangular", GeneratorKind::Triangular,
      [](double x) {
        const double d = x - 1.0;
        return d * d / (2.0 * (x + 1.0));
      },
      RealFunction([](double x) {
        const double s = x + 1.0;
        return (x - 1.0) * (x + 3.0) / (2.0 * s * s);
      }),
      RealFunction([](double x) {
        const double s = x + 1.0;
        return 4.0 / (s * s * s);
      }),
      0.5, 0.5);
}

std::vector<GeneratorSpec> builtin_generators() {
  return {total_variation_generator(), squared_hellinger_generator(),
          jensen_shannon_generator(), jeffreys_generator(),
          triangular_generator()};
}

GeneratorSpec generator_by_name(std::string_view name) {
  for (auto& g : builtin_generators()) {
    if (g.name() == name) return g;
  }
  throw ArgumentError("unknown generator '" + std::string(name) +
                      "' (expected one of tv, hellinger2, js, jeffreys, "
                      "triangular)");
}

std::vector<GeneratorSpec> generators_from_list(std::string_view names) {
  if (names.empty()) return builtin_generators();
  std::vector<GeneratorSpec> out;
  std::size_t start = 0;
  while (start <= names.size()) {
    const auto comma = names.find(',', start);
    const auto end = comma == std::string_view::npos ? names.size() : comma;
    auto token = names.substr(start, end - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) out.push_back(generator_by_name(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ArgumentError("generator list is empty");
  return out;
}

GeneratorSpec symmetrized(const GeneratorSpec& g) {
  if (g.kind() == GeneratorKind::TotalVariation) return g;
  const double limit = (g.f_at_zero() + g.slope_at_infinity()) / 2.0;
  auto f = [g](double x) { return (g.f(x) + x * g.f(1.0 / x)) / 2.0; };
  std::optional<RealFunction> fp;
  std::optional<RealFunction> fpp;
  if (g.is_smooth()) {
    fp = [g](double x) {
      const double inv = 1.0 / x;
      return (g.f_prime(x) + g.f(inv) - g.f_prime(inv) * inv) / 2.0;
    };
    fpp = [g](double x) {
      const double inv = 1.0 / x;
      return (g.f_double_prime(x) + g.f_double_prime(inv) * inv * inv * inv) /
             2.0;
    };
  }
  return GeneratorSpec("sym(" + g.name() + ")", GeneratorKind::Custom,
                       std::move(f), std::move(fp), std::move(fpp), limit,
                       limit);
}

ExtendedReal eval_generator(const GeneratorSpec& g, double x) {
  if (std::isnan(x) || x < 0.0) {
    throw DomainError("generator argument must be >= 0");
  }
  if (x == 0.0) return g.f_at_zero();
  if (std::isinf(x)) {
    if (g.slope_at_infinity() > 0.0) return ExtendedReal::infinity();
    throw DomainError("f(inf) is undefined for generator '" + g.name() +
                      "' with non-positive slope at infinity");
  }
  return g.f(x);
}

}  // namespace structdiv
