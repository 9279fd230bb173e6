#include <doctest.h>

#include <numbers>
#include <random>

#include "fdiv/divergence.hpp"
#include "fdiv/error.hpp"
#include "fdiv/measure.hpp"

using namespace structdiv;

TEST_CASE("make_measure validation") {
  const auto m = make_measure({{"b", 0.5}, {"a", 0.5}});
  REQUIRE(m.size() == 2);
  CHECK(m.atoms()[0].label == "a");
  CHECK(m.weight_of("b") == 0.5);
  CHECK(m.weight_of("zz") == 0.0);
  CHECK(m.domain() == Domain::Abstract);

  CHECK_THROWS_WITH_AS(make_measure({{"a", 1.0 + 1e-12}, {"b", -1e-12}}),
                       doctest::Contains("negative weight"), ValidationError);
  CHECK_THROWS_WITH_AS(make_measure({{"a", 0.7}, {"b", 0.2}}), doctest::Contains("mass"),
                       ValidationError);
  CHECK_THROWS_AS(make_measure({{"a", 0.5}, {"a", 0.5}}), ValidationError);
  CHECK_THROWS_AS(make_measure({{"a", std::nan("")}}), ValidationError);
}

TEST_CASE("tiny weights are pruned and the rest renormalised") {
  const auto m = make_measure({{"a", 1.0 - 1e-16}, {"b", 1e-16}});
  REQUIRE(m.size() == 1);
  CHECK(m.atoms()[0].weight == 1.0);
}

TEST_CASE("binary pair") {
  auto [p0, q0] = binary_pair(0.0, "lo", "hi");
  CHECK(p0.weight_of("lo") == 0.5);
  CHECK(q0.weight_of("hi") == 0.5);

  auto [p, q] = binary_pair(0.6, "lo", "hi");
  CHECK(p.weight_of("lo") == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(p.weight_of("hi") == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(q.weight_of("lo") == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(q.weight_of("hi") == doctest::Approx(0.2).epsilon(1e-15));

  auto [p1, q1] = binary_pair(1.0, "lo", "hi");
  CHECK(p1.weight_of("hi") == 1.0);
  CHECK(p1.size() == 1);
  CHECK(q1.weight_of("lo") == 1.0);

  CHECK_THROWS_AS(binary_pair(1.5, "lo", "hi"), DomainError);
}

TEST_CASE("parameter labels round-trip exactly") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    ParameterPoint pt{{u(rng), u(rng), u(rng)}};
    CHECK(decode_parameter_label(parameter_label(pt)) == pt);
  }
  ParameterPoint pi{{std::numbers::pi / 2, 0.0}};
  CHECK(parameter_label(pi) == "t:1.5707963267948966,0");
  CHECK_THROWS_AS(decode_parameter_label("x:1"), ValidationError);
  CHECK_THROWS_AS(decode_parameter_label("t:1,abc"), ValidationError);

  const auto m = parameter_measure({{pi, 0.25}, {ParameterPoint{{0.0, 0.0}}, 0.75}});
  CHECK(m.domain() == Domain::ParameterSpace);
  CHECK(m.weight_of("t:0,0") == 0.75);
}

TEST_CASE("support alignment") {
  const auto a = make_measure({{"a", 1.0}});
  const auto b = make_measure({{"b", 1.0}});
  auto al = align_supports(a, b);
  CHECK(al.labels == std::vector<std::string>{"a", "b"});
  CHECK(al.p == std::vector<double>{1.0, 0.0});
  CHECK(al.q == std::vector<double>{0.0, 1.0});

  const auto p = make_measure({{"a", 0.5}, {"b", 0.5}});
  al = align_supports(p, p);
  CHECK(al.p == al.q);

  const auto q = make_measure({{"b", 0.9}, {"c", 0.1}});
  al = align_supports(p, q);
  CHECK(al.labels == std::vector<std::string>{"a", "b", "c"});
  CHECK(al.p == std::vector<double>{0.5, 0.5, 0.0});
  CHECK(al.q == std::vector<double>{0.0, 0.9, 0.1});

  const auto theta = parameter_measure({{ParameterPoint{{0.0}}, 1.0}});
  CHECK_THROWS_AS(align_supports(theta, a), ValidationError);
}

TEST_CASE("stochastic maps") {
  const auto p = make_measure({{"a", 0.3}, {"b", 0.7}});
  const auto q = make_measure({{"a", 0.6}, {"b", 0.4}});
  StochasticMap identity({"a", "b"}, {"a", "b"}, Eigen::MatrixXd::Identity(2, 2));
  CHECK(apply_stochastic_map(identity, p) == p);

  Eigen::MatrixXd flat(2, 3);
  flat << 0.2, 0.3, 0.5, 0.2, 0.3, 0.5;
  StochasticMap collapse({"a", "b"}, {"x", "y", "z"}, flat);
  const auto kp = apply_stochastic_map(collapse, p);
  const auto kq = apply_stochastic_map(collapse, q);
  for (const auto& a : kp.atoms()) CHECK(a.weight == doctest::Approx(kq.weight_of(a.label)).epsilon(1e-15));
  for (const auto& g : builtin_generators()) CHECK(structural_divergence(g, kp, kq) <= 1e-15);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd k(4, 3);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 3; ++j) k(i, j) = u(rng);
      k.row(i) /= k.row(i).sum();
    }
    std::vector<Atom> pa, qa;
    double sp = 0, sq = 0;
    std::vector<double> wp(4), wq(4);
    for (int i = 0; i < 4; ++i) sp += (wp[i] = u(rng) + 0.01), sq += (wq[i] = u(rng) + 0.01);
    for (int i = 0; i < 4; ++i) {
      pa.push_back({"s" + std::to_string(i), wp[i] / sp});
      qa.push_back({"s" + std::to_string(i), wq[i] / sq});
    }
    const auto rp = make_measure(pa), rq = make_measure(qa);
    StochasticMap map({"s0", "s1", "s2", "s3"}, {"y0", "y1", "y2"}, k);
    for (const auto& g : builtin_generators()) {
      CHECK(structural_divergence(g, apply_stochastic_map(map, rp), apply_stochastic_map(map, rq)) <=
            structural_divergence(g, rp, rq) + 1e-12);
    }
  }

  Eigen::MatrixXd bad(1, 2);
  bad << 0.5, 0.6;
  CHECK_THROWS_AS(StochasticMap({"a"}, {"x", "y"}, bad), ValidationError);
  bad << 1.5, -0.5;
  CHECK_THROWS_AS(StochasticMap({"a"}, {"x", "y"}, bad), ValidationError);
  // A source outside the kernel's rows cannot be mapped.
  StochasticMap only_a({"a"}, {"x"}, Eigen::MatrixXd::Ones(1, 1));
  CHECK_THROWS_AS(apply_stochastic_map(only_a, p), ValidationError);
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}
