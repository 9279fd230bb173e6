// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "fdiv/bounds.hpp"
#include "fdiv/divergence.hpp"
#include "fdiv/error.hpp"
#include "fdiv/generator.hpp"
#include "fdiv/sweeps.hpp"

using namespace structdiv;
using oracle::kPi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Tracks the worst observed value of a quantity that must stay below a limit.
struct Worst {
  double value = 0.0;
  std::string where;
  void see(double v, const std::string& w) {
    if (where.empty() || v > value) {
      value = v;
      where = w;
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const std::vector<double> kRGrid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

Outcome gradient_tightness() {
  const auto c11 = canonical_c11();
  Worst worst;
  bool lhs_ok = true;
  for (double r : kRGrid) {
    const auto [p, q] = gradient_equality_pair(1, r);
    for (const auto& g : builtin_generators()) {
      const auto rep = check_gradient_bound(g, p, q, c11, 0);
      // Independent expectation: |E|d| difference| = r, rhs = 2 * 0.5 * 1 * D^str.
      lhs_ok = lhs_ok && std::abs(rep.lhs - r) <= 1e-12;
      const double rhs = 2.0 * 0.5 * 1.0 * structural_divergence(g, p, q);
      worst.see(std::abs(rep.lhs - rhs), g.name() + " r=" + fmt(r));
    }
  }
  return {worst.value <= 1e-9 && lhs_ok,
          "max |lhs-rhs| = " + fmt(worst.value) + " (" + worst.where + ")"};
}

Outcome moment_tightness() {
  TightnessOptions opts;
  opts.spaces = {Domain::ParameterSpace, Domain::UnitaryGroup};
  const std::vector<int> ks{1, 2, 3, 4}, ns{1, 2, 3};
  const auto gens = builtin_generators();
  const auto rows = tightness_sweep(kRGrid, ks, gens, ns, opts);
  Worst worst;
  bool lhs_ok = rows.size() == kRGrid.size() * ks.size() * ns.size() * gens.size() * 2;
  for (const auto& row : rows) {
    worst.see(std::abs(row.slack), row.generator + " k=" + std::to_string(row.k) +
                                       " n=" + std::to_string(row.n) + " r=" + fmt(row.r) + " " +
                                       std::string(to_string(row.space)));
    lhs_ok = lhs_ok && std::abs(row.lhs - (row.k % 2 ? 2.0 : 1.0) * row.r) <= 1e-12;
  }
  return {worst.value <= 1e-9 && lhs_ok, std::to_string(rows.size()) + " rows, max |slack| = " +
                                              fmt(worst.value) + " (" + worst.where + ")"};
}

Outcome soundness() {
  SoundnessOptions opts;
  opts.instances = 1000;
  const auto rows = soundness_sweep(builtin_generators(), opts);
  const auto extra = sqrt_delta_sweep(opts);
  int violations = 0;
  double min_slack = INFINITY;
  for (const auto* set : {&rows, &extra}) {
    for (const auto& r : *set) {
      violations += r.slack < -1e-10 ? 1 : 0;
      min_slack = std::min(min_slack, r.slack);
    }
  }
  return {violations == 0, std::to_string(rows.size() + extra.size()) + " checks, " +
                               std::to_string(violations) + " violations, min slack " +
                               fmt(min_slack)};
}

Outcome dpi() {
  const auto records = dpi_sweep(builtin_generators(), 500, kDefaultSeed);
  int kernel = 0, pushed = 0, bad = 0;
  double worst = -INFINITY;
  for (const auto& r : records) {
    (r.source == "kernel" ? kernel : pushed)++;
    bad += r.after > r.before + 1e-12 ? 1 : 0;
    worst = std::max(worst, r.after - r.before);
  }
  const int gens = static_cast<int>(builtin_generators().size());
  return {bad == 0 && kernel >= 500 * gens && pushed > 0,
          std::to_string(kernel / gens) + " kernel triples, " + std::to_string(pushed / gens) +
              " push-forwards, max increase " + fmt(worst)};
}

Outcome binary_shape() {
  bool monotone = true;
  double worst_convex = 0.0, worst_roundtrip = 0.0;
  constexpr int kSteps = 1000;
  for (const auto& g : builtin_generators()) {
    std::vector<double> d(kSteps);
    for (int i = 0; i < kSteps; ++i) d[i] = binary_divergence(g, double(i) / kSteps).value();
    for (int i = 1; i < kSteps; ++i) monotone = monotone && d[i] > d[i - 1];
    for (int i = 1; i + 1 < kSteps; ++i)
      worst_convex = std::min(worst_convex, d[i + 1] - 2 * d[i] + d[i - 1]);
    for (int i = 0; i < kSteps; ++i) {
      const double s = double(i) / kSteps;
      worst_roundtrip = std::max(worst_roundtrip, std::abs(invert_binary_divergence(g, d[i]) - s));
    }
  }
  return {monotone && worst_convex >= -1e-10 && worst_roundtrip <= 1e-10,
          std::string(monotone ? "strictly increasing" : "NOT monotone") +
              ", min second difference " + fmt(worst_convex) + ", max round-trip error " +
              fmt(worst_roundtrip)};
}

Outcome fixed_tv() {
  double worst_gap = INFINITY, worst_attain = 0.0, worst_closed = 0.0;
  for (const auto& g : builtin_generators()) {
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const auto res = fixed_tv_oracle(g, t, 10000, 6, kDefaultSeed);
      worst_gap = std::min(worst_gap, res.min_found - res.d_f_t);
      worst_attain = std::max(worst_attain, std::abs(res.binary_value - res.d_f_t));
      worst_closed = std::max(worst_closed,
                              std::abs(res.d_f_t - oracle::binary_closed_form(g.name(), t)));
    }
  }
  return {worst_gap >= -1e-12 && worst_attain <= 1e-12 && worst_closed <= 1e-12,
          "min(min_found - d_f(t)) = " + fmt(worst_gap) + ", binary pair error " +
              fmt(worst_attain) + ", closed-form error " + fmt(worst_closed)};
}

Outcome gradient_correctness() {
  Rng rng(kDefaultSeed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const double h = 1e-5;
  double worst_fd = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_instance(rng);
    const auto& c = inst.problem.circuit;
    std::vector<double> th(static_cast<std::size_t>(c.arity()));
    for (auto& t : th) t = angle(rng);
    for (int j = 0; j < c.arity(); ++j) {
      auto plus = th, minus = th;
      plus[j] += h;
      minus[j] -= h;
      const double fd = (cost(c, ParameterPoint{plus}, inst.problem.init, inst.problem.observable) -
                         cost(c, ParameterPoint{minus}, inst.problem.init, inst.problem.observable)) /
                        (2 * h);
      const double an = gradient(c, ParameterPoint{th}, j, inst.problem.init, inst.problem.observable);
      worst_fd = std::max(worst_fd, std::abs(an - fd));
    }
  }
  const auto c11 = canonical_c11();
  double worst_closed = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = -kPi + 2 * kPi * i / 99.0;
    const ParameterPoint pt{{t}};
    worst_closed = std::max(worst_closed,
                            std::abs(cost(c11.circuit, pt, c11.init, c11.observable) - std::cos(t)));
    worst_closed = std::max(worst_closed, std::abs(gradient(c11.circuit, pt, 0, c11.init,
                                                            c11.observable) + std::sin(t)));
  }
  return {worst_fd <= 1e-7 && worst_closed <= 1e-12,
          "finite-difference error " + fmt(worst_fd) + ", closed-form error " + fmt(worst_closed)};
}

Outcome asymptotic() {
  std::vector<GeneratorSpec> smooth;
  for (auto& g : builtin_generators())
    if (g.is_smooth()) smooth.push_back(g);
  const std::vector<double> steps{1e-2, 1e-3, 1e-4};
  bool ok = true;
  double worst_rel = 0.0, worst_tri = 0.0;
  for (const auto& row : asymptotic_sweep(smooth, bernoulli_measure, 0.5, steps)) {
    const double dev = std::abs(row.ratio - 1.0);
    if (row.generator == "triangular") {
      worst_tri = std::max(worst_tri, dev);
      ok = ok && dev <= 1e-12;
    } else {
      worst_rel = std::max(worst_rel, dev / row.delta_alpha);
      ok = ok && dev <= 10 * row.delta_alpha;
    }
  }
  return {ok, "max |ratio-1|/d_alpha = " + fmt(worst_rel) + " (limit 10), triangular |ratio-1| = " +
                  fmt(worst_tri)};
}

Outcome closed_forms() {
  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_int_distribution<int> size(2, 8);
  std::exponential_distribution<double> e(1.0);
  std::bernoulli_distribution drop(0.2);
  const auto hel = squared_hellinger_generator();
  double worst_h = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(rng);
    std::vector<Atom> pa, qa;
    double sp = 0, sq = 0;
    std::vector<double> wp(n), wq(n);
    for (int i = 0; i < n; ++i) {
      sp += wp[i] = drop(rng) ? 0.0 : e(rng);
      sq += wq[i] = drop(rng) ? 0.0 : e(rng);
    }
    if (sp == 0 || sq == 0) {
      --trial;
      continue;
    }
    oracle::WeightMap mp, mq;
    for (int i = 0; i < n; ++i) {
      const auto label = "x" + std::to_string(i);
      pa.push_back({label, wp[i] / sp});
      qa.push_back({label, wq[i] / sq});
      if (wp[i] > 0) mp[label] = wp[i] / sp;
      if (wq[i] > 0) mq[label] = wq[i] / sq;
    }
    const auto p = make_measure(pa), q = make_measure(qa);
    const double bc = oracle::brute_bc(mp, mq);
    worst_h = std::max(worst_h,
                       std::abs(structural_divergence(hel, p, q) - std::sqrt(std::max(0.0, 1 - bc * bc))));
  }
  double worst_j = 0.0, worst_js = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double s = i / 1000.0;
    worst_j = std::max(worst_j, std::abs(binary_divergence(jeffreys_generator(), s).value() -
                                         oracle::binary_jeffreys(s)));
    worst_js = std::max(worst_js, std::abs(binary_divergence(jensen_shannon_generator(), s).value() -
                                           oracle::binary_js(s)));
  }
  return {worst_h <= 1e-10 && worst_j <= 1e-12 && worst_js <= 1e-12,
          "Hellinger error " + fmt(worst_h) + ", Jeffreys error " + fmt(worst_j) + ", JS error " +
              fmt(worst_js)};
}

Outcome fisher() {
  bool ok = true;
  double worst_ratio = 0.0;
  double worst_fisher = 0.0;
  for (double a : {0.3, 0.5, 0.7}) {
    const double info = 1.0 / (a * (1.0 - a));
    worst_fisher = std::max(worst_fisher, std::abs(fisher_information(bernoulli_measure, a, 1e-5) - info) / info);
    for (double d : {1e-2, 1e-3, 1e-4}) {
      const double delta = triangular_discrimination(bernoulli_measure(a), bernoulli_measure(a + d));
      const double err = std::abs(delta - d * d * info / 4.0);
      const double cap = 5.0 * d * d * d * (1.0 + std::pow(info, 1.5));
      ok = ok && err <= cap;
      worst_ratio = std::max(worst_ratio, err / cap);
    }
  }
  return {ok && worst_fisher <= 1e-6, "max error / allowance = " + fmt(worst_ratio) +
                                          ", Fisher relative error " + fmt(worst_fisher)};
}

Outcome thresholds() {
  bool exact = bp_divergence_threshold(0.2, 0.5, 1.0, 0.0, 0.0).threshold == 0.4 &&
               bp_divergence_threshold(0.1, 1.0, 1.0, 0.0, 0.0).threshold == 0.1 &&
               bp_divergence_threshold(0.1, 0.5, 1.0, 0.3, 0.0).threshold == 0.0 &&
               cc_divergence_threshold(0.05, 1.0, 2, 0.0).threshold == 0.05 &&
               cc_divergence_threshold(0.5, 2.0, 2, 0.0).threshold == 0.125 &&
               cc_divergence_threshold(0.0, 1.0, 2, 0.0).threshold == 0.0;

  const auto c11 = canonical_c11();
  const auto tv = total_variation_generator();
  const auto [p1, q1] = gradient_equality_pair(1, 0.1);
  const auto [p9, q9] = gradient_equality_pair(1, 0.9);
  const bool pinned = noise_sufficiency_check(tv, p1, q1, c11, 0, 0.2, 0.1, 2).gradient.verdict &&
                      !noise_sufficiency_check(tv, p9, q9, c11, 0, 0.2, 0.1, 2).gradient.verdict;

  int verdicts = 0, contradicted = 0;
  const auto observe = [&](const ThresholdReport& r) {
    if (!r.verdict) return;
    ++verdicts;
    contradicted += *r.measured_deviation > *r.deviation_cap + 1e-10 ? 1 : 0;
  };
  for (int n = 1; n <= 3; ++n) {
    const auto prob = canonical_cn1(n);
    for (double r : kRGrid) {
      for (int k = 1; k <= 4; ++k) {
        const auto [pg, qg] = gradient_equality_pair(n, r);
        const auto [pm, qm] = moment_equality_pair(n, r, k);
        for (const auto& g : builtin_generators()) {
          for (double cap : {0.1, 0.5, 1.0, 2.0}) {
            try {
              auto a = noise_sufficiency_check(g, pg, qg, prob, 0, cap, cap, k);
              observe(a.gradient);
              observe(a.moment);
              auto b = noise_sufficiency_check(g, pm, qm, prob, 0, cap, cap, k);
              observe(b.gradient);
              observe(b.moment);
            } catch (const ConsistencyError&) {
              ++contradicted;
            }
          }
        }
      }
    }
  }
  return {exact && pinned && contradicted == 0 && verdicts > 0,
          std::string(exact ? "formula values exact" : "formula values WRONG") + ", " +
              std::to_string(verdicts) + " true verdicts, " + std::to_string(contradicted) +
              " contradicted"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double budget_seconds;  // 0 = no runtime requirement
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "gradient-bound tightness", gradient_tightness, 1.0},
      {2, "moment-bound tightness", moment_tightness, 10.0},
      {3, "bound soundness sweep", soundness, 60.0},
      {4, "data processing inequality", dpi, 0.0},
      {5, "binary divergence monotone, convex, invertible", binary_shape, 0.0},
      {6, "fixed total variation minimum", fixed_tv, 0.0},
      {7, "gradient correctness", gradient_correctness, 0.0},
      {8, "asymptotic limit", asymptotic, 0.0},
      {9, "closed-form cross-checks", closed_forms, 0.0},
      {10, "Fisher expansion", fisher, 0.0},
      {11, "threshold coherence", thresholds, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt(seconds) + " s";
    if (c.budget_seconds > 0) {
      timing += " of " + fmt(c.budget_seconds) + " s";
      if (seconds >= c.budget_seconds) {
        out.pass = false;
        timing += " OVER BUDGET";
      }
    }
    failures += out.pass ? 0 : 1;
    std::printf("%s criterion %2d: %s: %s [%s]\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
