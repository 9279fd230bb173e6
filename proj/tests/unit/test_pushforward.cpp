#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "fdiv/divergence.hpp"
#include "fdiv/error.hpp"
#include "fdiv/pushforward.hpp"
#include "fdiv/sweeps.hpp"

using namespace structdiv;
using oracle::kPi;

TEST_CASE("phase canonicalisation") {
  const Matrix id = Matrix::Identity(2, 2);
  CHECK(max_abs_diff(canonicalize_phase(-id), id) <= 1e-15);
  CHECK(max_abs_diff(canonicalize_phase(Complex(0, 1) * id), id) <= 1e-15);
  Rng rng(2);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 20; ++i) {
    const auto h = random_pauli_sum(rng, 2);
    const Matrix v = hermitian_expm(h, u(rng));
    const Matrix rotated = std::polar(1.0, u(rng)) * v;
    CHECK(max_abs_diff(canonicalize_phase(v), canonicalize_phase(rotated)) <= 1e-12);
  }
}

TEST_CASE("unitary labels are lossless") {
  Rng rng(4);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 20; ++i) {
    const Matrix v = hermitian_expm(random_pauli_sum(rng, 1 + i % 3), u(rng));
    CHECK(max_abs_diff(decode_unitary_label(unitary_label(v)), v) == 0.0);
  }
  CHECK_THROWS_AS(decode_unitary_label("t:0"), ValidationError);
  CHECK_THROWS_AS(decode_unitary_label("U2:1,0"), ValidationError);
}

TEST_CASE("points that differ by a global phase merge") {
  // exp(-i 2 pi sigma_z / 2) = -I, the identity up to phase.
  const auto c11 = canonical_c11();
  const auto p = parameter_measure({{ParameterPoint{{0.0}}, 0.5}, {ParameterPoint{{2 * kPi}}, 0.5}});
  const auto pushed = pushforward(p, c11.circuit);
  REQUIRE(pushed.size() == 1);
  CHECK(pushed.atoms()[0].weight == 1.0);
  CHECK(pushed.domain() == Domain::UnitaryGroup);

  PushforwardOptions strict;
  strict.identify_global_phase = false;
  CHECK(pushforward(p, c11.circuit, strict).size() == 2);

  const auto period = parameter_measure({{ParameterPoint{{0.3}}, 0.5}, {ParameterPoint{{0.3 + 4 * kPi}}, 0.5}});
  CHECK(pushforward(period, c11.circuit, strict).size() == 1);
}

TEST_CASE("injective push-forward keeps the weights") {
  const auto c11 = canonical_c11();
  const auto p = parameter_measure(
      {{ParameterPoint{{0.1}}, 0.2}, {ParameterPoint{{0.7}}, 0.3}, {ParameterPoint{{1.9}}, 0.5}});
  const auto pushed = pushforward(p, c11.circuit);
  REQUIRE(pushed.size() == 3);
  std::vector<double> in, out;
  for (const auto& a : p.atoms()) in.push_back(a.weight);
  for (const auto& a : pushed.atoms()) out.push_back(a.weight);
  std::sort(in.begin(), in.end());
  std::sort(out.begin(), out.end());
  CHECK(in == out);
}

TEST_CASE("gradient equality measures push forward to {I, exp(-i pi H / 2)}") {
  const auto c11 = canonical_c11();
  const auto [p, q] = gradient_equality_pair(1, 0.4);
  const std::vector<DiscreteMeasure> both{p, q};
  const auto pushed = pushforward_joint(both, c11.circuit);
  const Matrix half = canonicalize_phase(oracle::rotation(0.5 * oracle::pauli('Z'), kPi / 2));
  const Matrix id = Matrix::Identity(2, 2);
  for (const auto& m : pushed) {
    REQUIRE(m.size() == 2);
    bool saw_id = false, saw_half = false;
    for (const auto& a : m.atoms()) {
      const Matrix u = decode_unitary_label(a.label);
      saw_id = saw_id || max_abs_diff(u, id) <= 1e-12;
      saw_half = saw_half || max_abs_diff(u, half) <= 1e-12;
    }
    CHECK(saw_id);
    CHECK(saw_half);
  }
  // Shared labels: the swapped weights survive the map.
  CHECK(total_variation(pushed[0], pushed[1]) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("push-forward never increases the structural divergence") {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_instance(rng);
    const std::vector<DiscreteMeasure> both{inst.p, inst.q};
    const auto pushed = pushforward_joint(both, inst.problem.circuit);
    for (const auto& g : builtin_generators()) {
      CHECK(structural_divergence(g, pushed[0], pushed[1]) <=
            structural_divergence(g, inst.p, inst.q) + 1e-12);
    }
  }
}

TEST_CASE("push-forward input checks") {
  const auto c11 = canonical_c11();
  CHECK_THROWS_AS(pushforward(make_measure({{"a", 1.0}}), c11.circuit), ValidationError);
  PushforwardOptions bad;
  bad.tol = -1.0;
  CHECK_THROWS_AS(pushforward(parameter_measure({{ParameterPoint{{0.0}}, 1.0}}), c11.circuit, bad),
                  ArgumentError);
}
