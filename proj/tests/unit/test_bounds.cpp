#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "fdiv/bounds.hpp"
#include "fdiv/error.hpp"
#include "fdiv/pushforward.hpp"
#include "fdiv/sweeps.hpp"

using namespace structdiv;
using oracle::kPi;

TEST_CASE("moment constant") {
  CHECK(moment_constant(1) == 2);
  CHECK(moment_constant(2) == 1);
  CHECK(moment_constant(3) == 2);
  CHECK(moment_constant(4) == 1);
  CHECK_THROWS_AS(moment_constant(0), ArgumentError);
}

TEST_CASE("expected gradient magnitude") {
  const auto c11 = canonical_c11();
  for (double r : {0.0, 0.3, 0.8}) {
    const auto [p, q] = gradient_equality_pair(1, r);
    CHECK(expected_abs_gradient(p, c11, 0) == doctest::Approx((1 + r) / 2).epsilon(1e-14));
    CHECK(expected_abs_gradient(q, c11, 0) == doctest::Approx((1 - r) / 2).epsilon(1e-14));
  }
  const auto point = parameter_measure({{ParameterPoint{{0.0}}, 1.0}});
  CHECK(expected_abs_gradient(point, c11, 0) == 0.0);
  const auto ends = parameter_measure({{ParameterPoint{{0.0}}, 0.5}, {ParameterPoint{{kPi}}, 0.5}});
  CHECK(expected_abs_gradient(ends, c11, 0) <= 1e-15);
  CHECK_THROWS_AS(expected_abs_gradient(make_measure({{"a", 1.0}}), c11, 0), ValidationError);
}

TEST_CASE("cost moments") {
  const auto c11 = canonical_c11();
  const auto point = parameter_measure({{ParameterPoint{{0.0}}, 1.0}});
  for (int k = 1; k <= 4; ++k) CHECK(cost_moment(point, c11, k) == doctest::Approx(1.0));
  const double r = 0.35;
  const auto [p2, q2] = moment_equality_pair(1, r, 2);
  CHECK(cost_moment(p2, c11, 2) == doctest::Approx((1 - r) / 2).epsilon(1e-14));
  const auto [p1, q1] = moment_equality_pair(1, r, 1);
  CHECK(cost_moment(p1, c11, 1) == doctest::Approx(-r).epsilon(1e-14));

  // A unitary-group measure gives the same moment as its parameter preimage.
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = random_instance(rng);
    const auto pushed = pushforward(inst.p, inst.problem.circuit);
    for (int k = 1; k <= 3; ++k) {
      CHECK(cost_moment(pushed, inst.problem, k) ==
            doctest::Approx(cost_moment(inst.p, inst.problem, k)).epsilon(1e-10));
      CHECK(cost_moment(pushed, k, inst.problem.init, inst.problem.observable) ==
            doctest::Approx(cost_moment(inst.p, inst.problem, k)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(cost_moment(point, c11, 0), ArgumentError);
}

TEST_CASE("gradient bound is tight on the equality measures") {
  const auto c11 = canonical_c11();
  const auto [p, q] = gradient_equality_pair(1, 0.6);
  for (const auto& g : builtin_generators()) {
    CAPTURE(g.name());
    const auto rep = check_gradient_bound(g, p, q, c11, 0);
    CHECK(rep.lhs == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(rep.rhs == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(rep.tight);
    CHECK(rep.satisfied);
    const auto same = check_gradient_bound(g, p, p, c11, 0);
    CHECK(same.lhs == 0.0);
    CHECK(same.rhs == 0.0);
    CHECK(same.tight);
  }
}

TEST_CASE("moment bound is tight on the equality measures") {
  const auto c11 = canonical_c11();
  for (const auto& g : builtin_generators()) {
    CAPTURE(g.name());
    const auto [pe, qe] = unitary_moment_equality_pair(1, 0.4, 2);
    const auto even = check_moment_bound(g, pe, qe, c11, 2);
    CHECK(even.space == Domain::UnitaryGroup);
    CHECK(even.lhs == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(even.tight);
    const auto [po, qo] = unitary_moment_equality_pair(1, 0.4, 1);
    const auto odd = check_moment_bound(g, po, qo, c11, 1);
    CHECK(odd.lhs == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(odd.rhs == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(odd.tight);
    const auto same = check_moment_bound(g, pe, pe, c11, 2);
    CHECK(same.lhs == 0.0);
    CHECK(same.rhs == 0.0);
  }
}

TEST_CASE("finalize and enforce") {
  BoundReport r;
  r.lhs = 0.5;
  r.rhs = 0.4;
  r = finalize(r);
  CHECK(r.slack == doctest::Approx(-0.1));
  CHECK_FALSE(r.satisfied);
  CHECK_FALSE(r.tight);
  CHECK_THROWS_AS(enforce(r), ConsistencyError);
  r.rhs = 0.5 - 5e-11;
  r = finalize(r);
  CHECK(r.satisfied);
  CHECK(r.tight);
  CHECK_NOTHROW(enforce(r));
}

TEST_CASE("necessary thresholds") {
  auto bp = bp_divergence_threshold(0.2, 0.5, 1.0, 0.0, 0.5);
  CHECK(bp.threshold == 0.4);
  CHECK(bp.verdict);
  CHECK(bp.kind == ThresholdKind::BPNecessary);
  CHECK(bp_divergence_threshold(0.1, 0.5, 1.0, 0.2, 0.0).threshold == 0.0);
  CHECK(bp_divergence_threshold(0.1, 1.0, 1.0, 0.0, 0.0).threshold == 0.1);
  CHECK_FALSE(bp_divergence_threshold(0.2, 0.5, 1.0, 0.0, 0.3).verdict);
  CHECK_THROWS_AS(bp_divergence_threshold(0.2, 0.0, 1.0, 0.0, 0.3), DomainError);

  CHECK(cc_divergence_threshold(0.05, 1.0, 2, 0.0).threshold == 0.05);
  CHECK(cc_divergence_threshold(0.0, 1.0, 2, 0.0).threshold == 0.0);
  CHECK(cc_divergence_threshold(0.5, 2.0, 2, 0.0).threshold == 0.125);
  CHECK_THROWS_AS(cc_divergence_threshold(0.5, 0.0, 2, 0.0), DomainError);
}

TEST_CASE("noise sufficiency") {
  const auto c11 = canonical_c11();
  const auto tv = total_variation_generator();
  {
    const auto [p, q] = gradient_equality_pair(1, 0.1);
    const auto same = noise_sufficiency_check(tv, p, p, c11, 0, 0.2, 0.1, 2);
    CHECK(same.gradient.verdict);
    CHECK(same.moment.verdict);
    CHECK(*same.gradient.measured_deviation == 0.0);
    CHECK(*same.moment.measured_deviation == 0.0);

    const auto res = noise_sufficiency_check(tv, p, q, c11, 0, 0.2, 0.1, 2);
    CHECK(res.gradient.actual_divergence == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(res.gradient.verdict);
    CHECK(*res.gradient.measured_deviation == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(*res.gradient.measured_deviation <= *res.gradient.deviation_cap);
  }
  {
    const auto [p, q] = gradient_equality_pair(1, 0.9);
    const auto res = noise_sufficiency_check(tv, p, q, c11, 0, 0.2, 0.1, 2);
    CHECK_FALSE(res.gradient.verdict);
  }
  // Whenever the verdict is true the measured deviation respects the cap.
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = random_instance(rng);
    for (const auto& g : builtin_generators()) {
      const auto res = noise_sufficiency_check(g, inst.p, inst.q, inst.problem, inst.gate, 0.5, 0.5,
                                               1 + trial % 4);
      if (res.gradient.verdict) {
        CHECK(*res.gradient.measured_deviation <= *res.gradient.deviation_cap + 1e-10);
      }
      if (res.moment.verdict) {
        CHECK(*res.moment.measured_deviation <= *res.moment.deviation_cap + 1e-10);
      }
    }
  }
}
