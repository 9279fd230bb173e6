#include "fdiv/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

#include "fdiv/error.hpp"
#include "fdiv/pushforward.hpp"

namespace structdiv {
namespace {

constexpr double kPi = std::numbers::pi;

ParameterPoint first_angle_point(int n, double angle) {
  ParameterPoint point{std::vector<double>(static_cast<std::size_t>(n), 0.0)};
  point.angles[0] = angle;
  return point;
}

void require_qubits(int n) {
  if (n < 1) throw ArgumentError("qubit count must be >= 1");
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string random_pauli_string(Rng& rng, int num_qubits, bool allow_identity) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  while (true) {
    std::string s;
    for (int i = 0; i < num_qubits; ++i) s += kLetters[uniform_int(rng, 0, 3)];
    if (allow_identity || s.find_first_not_of('I') != std::string::npos) return s;
  }
}

/// Random measure on a random non-empty subset of the pool.
DiscreteMeasure random_measure_on(Rng& rng, const std::vector<ParameterPoint>& pool) {
  std::vector<std::size_t> chosen;
  while (chosen.empty()) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (uniform_int(rng, 0, 2) > 0) chosen.push_back(i);
    }
  }
  const auto weights = random_simplex(rng, chosen.size());
  std::vector<std::pair<ParameterPoint, double>> atoms;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    atoms.emplace_back(pool[chosen[i]], weights[i]);
  }
  return parameter_measure(atoms);
}

BoundReport sqrt_delta_report(BoundKind kind, Domain space, int k, int n,
                              double lhs, double rhs) {
  BoundReport report;
  report.kind = kind;
  report.space = space;
  report.generator = "sqrt_delta";
  report.k = k;
  report.n = n;
  report.lhs = lhs;
  report.rhs = rhs;
  return finalize(report);
}

void validate_grids(std::span<const double> r_grid, std::span<const int> k_list,
                    std::span<const GeneratorSpec> generators,
                    std::span<const int> n_list) {
  if (r_grid.empty() || n_list.empty() || generators.empty()) {
    throw ArgumentError("tightness sweep grids must be non-empty");
  }
  for (double r : r_grid) {
    if (!(r > 0.0 && r <= 1.0)) throw ArgumentError("r values must lie in (0, 1]");
  }
  for (int k : k_list) {
    if (k < 1) throw ArgumentError("k values must be >= 1");
  }
  for (int n : n_list) require_qubits(n);
}

}  // namespace

std::pair<DiscreteMeasure, DiscreteMeasure> gradient_equality_pair(int n, double r) {
  require_qubits(n);
  return parameter_binary_pair(r, first_angle_point(n, 0.0),
                               first_angle_point(n, kPi / 2.0));
}

std::pair<DiscreteMeasure, DiscreteMeasure> moment_equality_pair(int n, double r,
                                                                 int k) {
  require_qubits(n);
  const double angle = moment_constant(k) == 1 ? kPi / 2.0 : kPi;
  return parameter_binary_pair(r, first_angle_point(n, 0.0),
                               first_angle_point(n, angle));
}

std::pair<DiscreteMeasure, DiscreteMeasure> unitary_moment_equality_pair(int n,
                                                                         double r,
                                                                         int k) {
  require_qubits(n);
  const auto problem = canonical_cn1(n);
  const double angle = moment_constant(k) == 1 ? kPi / 2.0 : kPi;
  const Matrix identity = Matrix::Identity(problem.circuit.dim(), problem.circuit.dim());
  const Matrix rotated = hermitian_expm(problem.circuit.generator(0), angle);
  return binary_pair(r, unitary_label(identity), unitary_label(rotated),
                     Domain::UnitaryGroup);
}

void sort_reports(std::vector<BoundReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const BoundReport& a, const BoundReport& b) {
                     const auto key = [](const BoundReport& x) {
                       return std::make_tuple(to_string(x.kind), to_string(x.space),
                                              std::string_view(x.generator), x.k,
                                              x.n, x.r);
                     };
                     return key(a) < key(b);
                   });
}

std::vector<BoundReport> tightness_sweep(std::span<const double> r_grid,
                                         std::span<const int> k_list,
                                         std::span<const GeneratorSpec> generators,
                                         std::span<const int> n_list,
                                         const TightnessOptions& options) {
  validate_grids(r_grid, k_list, generators, n_list);
  if (k_list.empty() && !options.include_gradient) {
    throw ArgumentError("tightness sweep has nothing to evaluate");
  }
  std::vector<BoundReport> reports;
  for (int n : n_list) {
    const auto problem = canonical_cn1(n);
    for (double r : r_grid) {
      for (const auto& g : generators) {
        if (options.include_gradient) {
          const auto [p, q] = gradient_equality_pair(n, r);
          auto report = check_gradient_bound(g, p, q, problem, 0);
          report.r = r;
          report.metadata = "gate=0;pair=theta{0,pi/2}";
          reports.push_back(finalize(report, options.tight_tolerance));
        }
        for (int k : k_list) {
          for (Domain space : options.spaces) {
            const bool theta = space == Domain::ParameterSpace;
            const auto [p, q] = theta ? moment_equality_pair(n, r, k)
                                      : unitary_moment_equality_pair(n, r, k);
            auto report = check_moment_bound(g, p, q, problem, k);
            report.r = r;
            report.metadata = moment_constant(k) == 1
                                  ? (theta ? "pair=theta{0,pi/2}" : "pair=U{I,exp(-i pi H/2)}")
                                  : (theta ? "pair=theta{0,pi}" : "pair=U{I,exp(-i pi H)}");
            reports.push_back(finalize(report, options.tight_tolerance));
          }
        }
      }
    }
  }
  sort_reports(reports);
  return reports;
}

HermitianOperator random_pauli_sum(Rng& rng, int num_qubits, int max_terms) {
  while (true) {
    std::vector<PauliTerm> terms;
    const int count = uniform_int(rng, 1, max_terms);
    for (int t = 0; t < count; ++t) {
      terms.push_back({uniform_real(rng, -1.0, 1.0),
                       random_pauli_string(rng, num_qubits, true)});
    }
    auto op = HermitianOperator::from_pauli_sum(std::move(terms));
    if (spectral_summary(op).op_norm > 1e-6) return op;
  }
}

QuantumState random_state(Rng& rng, int num_qubits) {
  std::normal_distribution<double> normal;
  Vector v(Eigen::Index{1} << num_qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(rng), normal(rng));
  v.normalize();
  return QuantumState(v);
}

std::vector<double> random_simplex(Rng& rng, std::size_t size) {
  std::exponential_distribution<double> exponential(1.0);
  std::vector<double> w(size);
  double total = 0.0;
  for (auto& x : w) {
    x = exponential(rng) + 1e-6;
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

RandomInstance random_instance(Rng& rng, const RandomInstanceOptions& options) {
  const int n = uniform_int(rng, 1, options.max_qubits);
  const int layers = uniform_int(rng, 1, options.max_layers);
  std::vector<std::vector<HermitianOperator>> gates;
  for (int l = 0; l < layers; ++l) {
    std::vector<HermitianOperator> layer;
    const int m = uniform_int(rng, 1, options.max_gates_per_layer);
    for (int g = 0; g < m; ++g) layer.push_back(random_pauli_sum(rng, n));
    gates.push_back(std::move(layer));
  }
  CircuitSpec circuit(n, std::move(gates));
  auto init = uniform_int(rng, 0, 3) == 0 ? QuantumState::plus_all(n)
                                          : random_state(rng, n);
  auto observable = random_pauli_sum(rng, n);

  const int pool_size = uniform_int(rng, 1, options.max_support);
  std::vector<ParameterPoint> pool;
  for (int i = 0; i < pool_size; ++i) {
    ParameterPoint point;
    for (int j = 0; j < circuit.arity(); ++j) {
      point.angles.push_back(uniform_real(rng, 0.0, 2.0 * kPi));
    }
    pool.push_back(std::move(point));
  }
  auto p = random_measure_on(rng, pool);
  auto q = uniform_int(rng, 0, 19) == 0 ? p : random_measure_on(rng, pool);
  const int gate = uniform_int(rng, 0, circuit.arity() - 1);
  return RandomInstance{CircuitProblem{std::move(circuit), std::move(init),
                                       std::move(observable)},
                        std::move(p), std::move(q), gate};
}

std::vector<BoundReport> soundness_sweep(std::span<const GeneratorSpec> generators,
                                         const SoundnessOptions& options) {
  if (generators.empty()) throw ArgumentError("generator list is empty");
  Rng rng(options.seed);
  std::vector<BoundReport> reports;
  for (int i = 0; i < options.instances; ++i) {
    const auto inst = random_instance(rng, options.instance);
    const std::vector<DiscreteMeasure> theta{inst.p, inst.q};
    const auto pushed = pushforward_joint(theta, inst.problem.circuit);
    const std::string tag = "instance=" + std::to_string(i);
    for (const auto& g : generators) {
      auto grad = check_gradient_bound(g, inst.p, inst.q, inst.problem, inst.gate);
      grad.metadata = tag + ";" + grad.metadata;
      reports.push_back(std::move(grad));
      for (int k = 1; k <= options.max_k; ++k) {
        auto on_theta = check_moment_bound(g, inst.p, inst.q, inst.problem, k);
        on_theta.metadata = tag;
        reports.push_back(std::move(on_theta));
        auto on_unitary = check_moment_bound(g, pushed[0], pushed[1], inst.problem, k);
        on_unitary.metadata = tag;
        reports.push_back(std::move(on_unitary));
      }
    }
  }
  return reports;
}

std::vector<BoundReport> sqrt_delta_sweep(const SoundnessOptions& options) {
  Rng rng(options.seed);
  std::vector<BoundReport> reports;
  for (int i = 0; i < options.instances; ++i) {
    const auto inst = random_instance(rng, options.instance);
    const auto& problem = inst.problem;
    const int n = problem.circuit.num_qubits();
    const double norm = spectral_summary(problem.observable).op_norm;
    const double half_range = spectral_summary(problem.circuit.generator(inst.gate)).half_range;
    const double root_delta = std::sqrt(triangular_discrimination(inst.p, inst.q));
    reports.push_back(sqrt_delta_report(
        BoundKind::GradientBound, Domain::ParameterSpace, 0, n,
        std::abs(expected_abs_gradient(inst.p, problem, inst.gate) -
                 expected_abs_gradient(inst.q, problem, inst.gate)) / norm,
        2.0 * half_range * root_delta));

    const std::vector<DiscreteMeasure> theta{inst.p, inst.q};
    const auto pushed = pushforward_joint(theta, problem.circuit);
    const double root_delta_u = std::sqrt(triangular_discrimination(pushed[0], pushed[1]));
    for (int k = 1; k <= options.max_k; ++k) {
      const double scale = std::pow(norm, k);
      reports.push_back(sqrt_delta_report(
          BoundKind::MomentBound, Domain::ParameterSpace, k, n,
          std::abs(cost_moment(inst.p, problem, k) - cost_moment(inst.q, problem, k)) / scale,
          moment_constant(k) * root_delta));
      reports.push_back(sqrt_delta_report(
          BoundKind::MomentBound, Domain::UnitaryGroup, k, n,
          std::abs(cost_moment(pushed[0], problem, k) - cost_moment(pushed[1], problem, k)) /
              scale,
          moment_constant(k) * root_delta_u));
    }
  }
  return reports;
}

std::vector<DpiRecord> dpi_sweep(std::span<const GeneratorSpec> generators, int trials,
                                 std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DpiRecord> out;

  for (int t = 0; t < trials; ++t) {
    const int m = uniform_int(rng, 1, 6);
    const int m_out = uniform_int(rng, 1, 5);
    std::vector<std::string> sources;
    std::vector<std::string> targets;
    for (int i = 0; i < m; ++i) sources.push_back("z" + std::to_string(i));
    for (int i = 0; i < m_out; ++i) targets.push_back("y" + std::to_string(i));
    Eigen::MatrixXd kernel(m, m_out);
    for (int i = 0; i < m; ++i) {
      auto row = random_simplex(rng, static_cast<std::size_t>(m_out));
      // Occasionally make the row deterministic.
      if (uniform_int(rng, 0, 3) == 0) {
        std::fill(row.begin(), row.end(), 0.0);
        row[static_cast<std::size_t>(uniform_int(rng, 0, m_out - 1))] = 1.0;
      }
      double total = 0.0;
      for (int j = 0; j < m_out; ++j) total += row[static_cast<std::size_t>(j)];
      for (int j = 0; j < m_out; ++j) kernel(i, j) = row[static_cast<std::size_t>(j)] / total;
    }
    const StochasticMap k(sources, targets, kernel);
    auto random_on_sources = [&] {
      const auto w = random_simplex(rng, sources.size());
      std::vector<Atom> atoms;
      for (std::size_t i = 0; i < sources.size(); ++i) {
        if (uniform_int(rng, 0, 4) > 0 || i == 0) atoms.push_back({sources[i], w[i]});
      }
      double total = 0.0;
      for (const auto& a : atoms) total += a.weight;
      for (auto& a : atoms) a.weight /= total;
      return make_measure(std::move(atoms));
    };
    const auto p = random_on_sources();
    const auto q = random_on_sources();
    const auto kp = apply_stochastic_map(k, p);
    const auto kq = apply_stochastic_map(k, q);
    for (const auto& g : generators) {
      out.push_back({g.name(), "kernel", structural_divergence(g, p, q),
                     structural_divergence(g, kp, kq)});
    }
  }

  for (int t = 0; t < trials; ++t) {
    // Generators +-(1/2) P with P a non-identity Pauli string have
    // exp(-2 pi i H) = -I, so shifting an angle by 2 pi changes the unitary
    // only by a global phase and shifting by 4 pi not at all.
    const int n = uniform_int(rng, 1, 3);
    const int layers = uniform_int(rng, 1, 2);
    std::vector<std::vector<HermitianOperator>> gates;
    for (int l = 0; l < layers; ++l) {
      std::vector<HermitianOperator> layer;
      const int m = uniform_int(rng, 1, 3);
      for (int g = 0; g < m; ++g) {
        const double sign = uniform_int(rng, 0, 1) == 0 ? -0.5 : 0.5;
        layer.push_back(HermitianOperator::from_pauli_sum(
            {{sign, random_pauli_string(rng, n, false)}}));
      }
      gates.push_back(std::move(layer));
    }
    const CircuitSpec circuit(n, std::move(gates));
    std::vector<ParameterPoint> pool;
    const int bases = uniform_int(rng, 1, 4);
    for (int b = 0; b < bases; ++b) {
      ParameterPoint base;
      for (int j = 0; j < circuit.arity(); ++j) {
        base.angles.push_back(uniform_real(rng, 0.0, 2.0 * kPi));
      }
      const int copies = uniform_int(rng, 0, 2);
      pool.push_back(base);
      for (int c = 0; c < copies; ++c) {
        ParameterPoint shifted = base;
        auto& angle = shifted.angles[static_cast<std::size_t>(
            uniform_int(rng, 0, circuit.arity() - 1))];
        angle += 2.0 * kPi * uniform_int(rng, 1, 2);
        if (std::find(pool.begin(), pool.end(), shifted) == pool.end()) {
          pool.push_back(std::move(shifted));
        }
      }
    }
    const auto p = random_measure_on(rng, pool);
    const auto q = random_measure_on(rng, pool);
    const std::vector<DiscreteMeasure> theta{p, q};
    const auto pushed = pushforward_joint(theta, circuit);
    for (const auto& g : generators) {
      out.push_back({g.name(), "pushforward", structural_divergence(g, p, q),
                     structural_divergence(g, pushed[0], pushed[1])});
    }
  }
  return out;
}

FixedTvResult fixed_tv_oracle(const GeneratorSpec& g, double t, int trials,
                           int max_support, std::uint64_t seed) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("fixed_tv_oracle requires 0 < t < 1");
  if (max_support < 2) throw ArgumentError("support size must allow two atoms");
  if (trials < 1) throw ArgumentError("trials must be positive");
  Rng rng(seed);
  FixedTvResult result;
  result.t = t;
  result.d_f_t = binary_divergence(g, t).value();
  {
    const auto [p, q] = binary_pair(t, "lo", "hi");
    result.binary_value = symmetric_f_divergence(g, p, q).value();
  }
  result.min_found = std::numeric_limits<double>::infinity();

  for (int trial = 0; trial < trials; ++trial) {
    const int m = uniform_int(rng, 2, max_support);
    const int excess_p = uniform_int(rng, 1, m - 1);  // atoms where p > q
    // Shared mass 1 - t, sometimes restricted to a random subset.
    std::vector<double> shared = random_simplex(rng, static_cast<std::size_t>(m));
    if (uniform_int(rng, 0, 1) == 0) {
      const auto keep = static_cast<std::size_t>(uniform_int(rng, 0, m - 1));
      for (std::size_t i = 0; i < shared.size(); ++i) {
        if (i != keep && uniform_int(rng, 0, 1) == 0) shared[i] = 0.0;
      }
      double total = 0.0;
      for (double s : shared) total += s;
      for (double& s : shared) s /= total;
    }
    const auto a = random_simplex(rng, static_cast<std::size_t>(excess_p));
    const auto b = random_simplex(rng, static_cast<std::size_t>(m - excess_p));
    std::vector<Atom> p_atoms;
    std::vector<Atom> q_atoms;
    for (int i = 0; i < m; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      double p = (1.0 - t) * shared[idx];
      double q = p;
      if (i < excess_p) {
        p += t * a[idx];
      } else {
        q += t * b[static_cast<std::size_t>(i - excess_p)];
      }
      const std::string label = "x" + std::to_string(i);
      p_atoms.push_back({label, p});
      q_atoms.push_back({label, q});
    }
    const auto p = make_measure(std::move(p_atoms));
    const auto q = make_measure(std::move(q_atoms));
    if (std::abs(total_variation(p, q) - t) > 1e-12) {
      ++result.rejected;
      continue;
    }
    ++result.accepted;
    result.min_found =
        std::min(result.min_found, symmetric_f_divergence(g, p, q).value());
  }
  return result;
}

std::vector<AsymptoticRow> asymptotic_sweep(std::span<const GeneratorSpec> generators,
                                            const MeasureFamily& family, double alpha,
                                            std::span<const double> steps) {
  if (generators.empty() || steps.empty()) {
    throw ArgumentError("asymptotic sweep needs generators and steps");
  }
  std::vector<AsymptoticRow> rows;
  const auto base = family(alpha);
  for (const auto& atom : base.atoms()) {
    if (!(atom.weight > 0.0)) throw DomainError("family has a non-positive atom");
  }
  for (const auto& g : generators) {
    if (!g.is_smooth()) {
      throw DomainError("asymptotic sweep needs a smooth generator, got '" +
                        g.name() + "'");
    }
    for (double step : steps) {
      if (!(step > 0.0)) throw ArgumentError("steps must be positive");
      const auto shifted = family(alpha + step);
      AsymptoticRow row;
      row.generator = g.name();
      row.alpha = alpha;
      row.delta_alpha = step;
      row.structural = structural_divergence(g, base, shifted);
      row.sqrt_delta = std::sqrt(triangular_discrimination(base, shifted));
      row.ratio = row.structural / row.sqrt_delta;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace structdiv
