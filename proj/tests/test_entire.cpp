#include <doctest.h>

#include <cmath>
#include <numbers>

#include "apspec/entire.hpp"
#include "apspec/io.hpp"

using namespace apspec;

namespace {

TrigPolynomial single(Frequency lambda, Complex c = {1.0, 0.0}) {
  const std::size_t dim = lambda.size();
  return TrigPolynomial(dim, {{std::move(lambda), c}});
}

const RealVector kRadii{5.0, 10.0, 20.0, 40.0};

}  // namespace

TEST_CASE("type estimate on exact cases") {
  const auto e = estimate_type(single({1.0}), kRadii, 16);
  CHECK(std::abs(e.sigma_hat - 1.0) < 0.02);
  CHECK(e.radii == kRadii);
  CHECK(!e.truncated);

  CHECK(estimate_type(Constant{2, {3.0, 0.0}}, kRadii, 16).sigma_hat <= 0.01);
  CHECK(std::abs(estimate_type(single({3.0, 4.0}), kRadii, 16).sigma_hat - 5.0) < 0.05);

  const auto zero = estimate_type(TrigPolynomial(2), kRadii, 16);
  CHECK(zero.sigma_hat == 0.0);
  CHECK(std::isinf(zero.log_c0_hat));

  const auto s = estimate_type(SincProduct{2, 1.0, {1.0, 0.0}}, kRadii, 16);
  CHECK(std::abs(s.sigma_hat - std::sqrt(2.0)) < 0.1);
}

TEST_CASE("type estimate preconditions and overflow truncation") {
  CHECK_THROWS_AS(estimate_type(single({1.0}), {5.0, 10.0}, 16), std::invalid_argument);
  CHECK_THROWS_AS(estimate_type(single({1.0}), {5.0, 5.0, 10.0}, 16), std::invalid_argument);
  CHECK_THROWS_AS(estimate_type(single({1.0, 1.0}), kRadii, 3), std::invalid_argument);

  const auto t = estimate_type(single({30.0}), {5.0, 10.0, 20.0, 40.0}, 16);
  CHECK(t.truncated);
  CHECK(t.radii.size() == 3);
  CHECK(std::abs(t.sigma_hat - 30.0) < 0.05);
}

TEST_CASE("type estimate is non-negative and tracks exact_type on random polynomials") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const auto p = generate_polynomial({.seed = seed, .dim = 1 + seed % 3});
    const auto e = estimate_type(p, kRadii, 16);
    CHECK(e.sigma_hat >= 0.0);
    CHECK(std::abs(e.sigma_hat - exact_type(p)) < 0.05);
  }
}

TEST_CASE("make_check") {
  const auto ok = make_check(1.0, 2.0, 0.0, "x");
  CHECK(ok.margin == 1.0);
  CHECK(ok.passed);
  CHECK(make_check(2.0, 1.95, 0.1, "y").passed);
  CHECK(!make_check(2.0, 1.8, 0.1, "z").passed);
}

TEST_CASE("sampling bound on a delta-net") {
  const auto c = logvinenko_check(Constant{1, {2.0, 0.0}}, 0.0, 0.25, 10.0, 101);
  CHECK(c.passed);
  CHECK(c.lhs == doctest::Approx(2.0));

  const auto cosine = logvinenko_check(Cosine{{1.0}}, 1.0, 0.25, 20.0, 4001);
  CHECK(cosine.lhs == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cosine.rhs >= 4.0 / 3.0 * std::cos(0.125) - 1e-12);
  CHECK(cosine.passed);

  CHECK_THROWS_AS(logvinenko_check(Cosine{{1.0}}, 3.6, 0.25, 20.0, 101), std::invalid_argument);
}

TEST_CASE("Poisson majorant") {
  const PoissonConfig cfg;
  const auto k = poisson_majorant_check(Constant{1, {3.0, 0.0}}, 0.0, 1.0, 1e4, 200'000, cfg);
  CHECK(k.passed);
  CHECK(k.lhs == doctest::Approx(std::log(3.0)));

  for (double s : {0.25, 1.0, 2.0}) {
    const auto e = poisson_majorant_check(single({1.0}), 0.3, s, 1e4 * s, 100'000, cfg);
    CHECK(e.lhs == doctest::Approx(-s).epsilon(1e-12));
    CHECK(std::abs(e.rhs - cfg.tail_allowance - e.lhs) < 1e-6);
    CHECK(e.passed);
  }

  const auto s = poisson_majorant_check(SincProduct{1, 1.0, {1.0, 0.0}}, 0.0, 1.0, 1e4, 1'000'000, cfg);
  CHECK(s.lhs == doctest::Approx(std::log(std::sinh(1.0))).epsilon(1e-10));
  CHECK(s.passed);

  CHECK_THROWS_AS(poisson_majorant_check(single({1.0}), 0.0, 3.0, 1e5, 1000, cfg), std::invalid_argument);
  CHECK_THROWS_AS(poisson_majorant_check(single({1.0}), 0.0, 1.0, 100.0, 1000, cfg), std::invalid_argument);
}

TEST_CASE("Phragmen-Lindelof bound") {
  const auto k = phragmen_lindelof_check(Constant{1, {2.0, 0.0}}, 1.0, 3.0);
  CHECK(k.passed);
  CHECK(std::abs(k.margin) < 1e-12);

  for (double y : {0.5, 2.0, 6.0}) {
    const auto e = phragmen_lindelof_check(single({1.0}), 0.7, y);
    CHECK(std::abs(e.margin) <= 1e-6);
    CHECK(e.passed);
  }

  const TrigPolynomial sine(1, {{{1.0}, {0.0, -0.5}}, {{-1.0}, {0.0, 0.5}}});
  for (double y : {0.5, 1.0, 3.0}) {
    const auto c = phragmen_lindelof_check(sine, 0.0, y);
    CHECK(c.lhs == doctest::Approx(std::sinh(y)).epsilon(1e-12));
    CHECK(c.margin > 0.0);
    CHECK(c.passed);
  }
}

TEST_CASE("growth envelope") {
  const auto e = growth_envelope_check(single({1.0}), 10.0, 201);
  CHECK(e.c1_hat == doctest::Approx(1.0));
  REQUIRE(e.argmax.size() == 1);
  CHECK(e.argmax[0] == 0.0);
  CHECK(e.check.passed);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = generate_polynomial({.seed = seed, .dim = 1 + seed % 2});
    const std::size_t n = p.dim() == 1 ? 401 : 41;
    const auto small = growth_envelope_check(p, 5.0, n);
    const auto large = growth_envelope_check(p, 10.0, 2 * n - 1);
    CHECK(small.c1_hat <= p.coefficient_l1() + 1e-12);
    CHECK(large.c1_hat >= small.c1_hat);
  }
}

TEST_CASE("linspace nodes include both ends") {
  const auto x = linspace_nodes(2.0, 5);
  CHECK(x == RealVector{-2.0, -1.0, 0.0, 1.0, 2.0});
}

TEST_CASE("numerical indicator matches the closed form") {
  CHECK(indicator_numeric(single({1.0}), 50.0) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(indicator_numeric(Cosine{{2.0}}, 50.0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::abs(indicator_numeric(SincProduct{1, 1.0, {1.0, 0.0}}, 200.0) - 1.0) < 0.02);
  CHECK(std::abs(indicator_numeric(single({100.0}), 50.0) + 100.0) < 1e-6);
}
