#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "apspec/io.hpp"
#include "apspec/meanvalue.hpp"

using namespace apspec;

namespace {

TrigPolynomial single(Frequency lambda, Complex c = {1.0, 0.0}) {
  const std::size_t dim = lambda.size();
  return TrigPolynomial(dim, {{std::move(lambda), c}});
}

// Independent oracle for the finite-T coefficient: product of per-axis
// integrals of exp(i u x) over [-T, T], evaluated term by term.
Complex coefficient_oracle(const TrigPolynomial& p, const Frequency& lambda, double t) {
  Complex sum{0.0, 0.0};
  for (const auto& term : p.terms()) {
    double prod = 1.0;
    for (std::size_t j = 0; j < p.dim(); ++j) {
      const double u = term.frequency[j] - lambda[j];
      prod *= u == 0.0 ? 1.0 : std::sin(u * t) / (u * t);
    }
    sum += term.coeff * prod;
  }
  return sum;
}

}  // namespace

TEST_CASE("box average of |f|") {
  const FunctionSource c = Constant{2, {3.0, 4.0}};
  CHECK(box_average_abs(c, {.half_width = 7.0, .points_per_axis = 10}) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(box_average_abs(single({0.3, -1.0}), {.half_width = 11.0, .points_per_axis = 64}) ==
        doctest::Approx(1.0).epsilon(1e-14));
  const double cosine =
      box_average_abs(Cosine{{1.0}}, {.half_width = 100.0 * std::numbers::pi, .points_per_axis = 1'000'000});
  CHECK(std::abs(cosine - 2.0 / std::numbers::pi) < 1e-4);
}

TEST_CASE("Besicovitch seminorm ladder") {
  const QuadratureSpec q{.half_width = 50.0, .points_per_axis = 4096};
  const auto zero = besicovitch_seminorm(TrigPolynomial(1), {}, q);
  CHECK(zero.value == 0.0);

  const auto e = besicovitch_seminorm(single({0.7}), {50.0, 4, 2}, q);
  REQUIRE(e.levels.size() == 4);
  for (const auto& level : e.levels) CHECK(std::abs(level.value - 1.0) < 1e-6);
  CHECK(e.levels[3].half_width == 400.0);
  CHECK(e.levels[3].points_per_axis == 4096u * 8u);

  const auto c = besicovitch_seminorm(Cosine{{1.0}}, {50.0, 4, 2}, q);
  CHECK(std::abs(c.value - 2.0 / std::numbers::pi) < 1e-3);
  CHECK(c.tail == 2);
  CHECK(c.tail_spread() >= 0.0);

  CHECK_THROWS_AS(besicovitch_seminorm(Cosine{{1.0}}, {50.0, 2, 3}, q), std::invalid_argument);
  CHECK_THROWS_AS(besicovitch_seminorm(Cosine{{1.0}}, {50.0, 2, 0}, q), std::invalid_argument);
}

TEST_CASE("closed-form coefficients") {
  const Complex c{0.3, -0.4};
  for (double t : {1.0, 17.0, 1e4}) {
    CHECK(fourier_coeff_closed_form(single({1.5, -2.0}, c), {1.5, -2.0}, t) == c);
  }
  const double mu = 0.8, t = 13.0;
  const TrigPolynomial two(1, {{{0.0}, {1.0, 0.0}}, {{mu}, {2.0, 0.0}}});
  const Complex expected = 1.0 + 2.0 * std::sin(mu * t) / (mu * t);
  CHECK(std::abs(fourier_coeff_closed_form(two, {0.0}, t) - expected) < 1e-15);
  CHECK(dirichlet_factor(0.0, 5.0) == 1.0);
  CHECK(dirichlet_factor(1e-9, 5.0) == doctest::Approx(1.0));
}

TEST_CASE("closed form matches the term-by-term oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto p = generate_polynomial({.seed = seed, .dim = 1 + seed % 3});
    Frequency lambda(p.dim());
    for (auto& v : lambda) v = u(rng);
    for (double t : {3.0, 50.0, 200.0}) {
      CHECK(std::abs(fourier_coeff_closed_form(p, lambda, t) - coefficient_oracle(p, lambda, t)) < 1e-14);
    }
  }
}

TEST_CASE("cross-talk stays below sum|c| / (gap T)") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = generate_polynomial({.seed = seed, .dim = 1 + seed % 3});
    const double t = 200.0;
    for (const auto& term : p.terms()) {
      double others = 0.0;
      for (const auto& m : p.terms()) {
        if (&m != &term) others += std::abs(m.coeff);
      }
      const Complex a = fourier_coeff_closed_form(p, term.frequency, t);
      CHECK(std::abs(a - term.coeff) <= others / (p.min_frequency_gap() * t) + 1e-15);
    }
    Frequency far(p.dim(), 10.0);
    CHECK(std::abs(fourier_coeff_closed_form(p, far, t)) <= p.coefficient_l1() / (8.0 * t));
  }
}

TEST_CASE("quadrature coefficient") {
  const FunctionSource c = Constant{2, {0.5, 0.25}};
  const auto a = fourier_coeff_quadrature(c, {0.0, 0.0}, {.half_width = 10.0, .points_per_axis = 64});
  CHECK(std::abs(a - Complex{0.5, 0.25}) < 1e-10);

  const TrigPolynomial p = generate_polynomial({.seed = 17, .dim = 1, .terms = 3});
  const QuadratureSpec q{.half_width = 20.0, .points_per_axis = 100'000};
  for (double l : {-2.0, -0.3, 0.0, 1.1, 2.5}) {
    const Complex quad = fourier_coeff_quadrature(p, {l}, q);
    CHECK(std::abs(quad - fourier_coeff_closed_form(p, {l}, q.half_width)) < 1e-8);
  }

  // e^{i mu x} away from lambda decays like 1/(|mu - lambda| T)
  const auto e = single({1.0});
  double previous = 1.0;
  for (double t : {25.0, 50.0, 100.0, 200.0}) {
    const double mag = std::abs(fourier_coeff_closed_form(e, {0.5}, t));
    CHECK(mag <= 1.0 / (0.5 * t));
    CHECK(mag <= previous);
    previous = 1.0 / (0.5 * t);
  }
}

TEST_CASE("midpoint error constant: fitted over a sweep and frozen") {
  // Fit: the worst observed ratio err / (B (T(1+max|l|)/n)^2) over random
  // polynomials, box sizes and grids. The frozen constant must cover it.
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = generate_polynomial({.seed = seed, .dim = 1, .terms = 4});
    for (double t : {5.0, 20.0, 60.0}) {
      for (std::size_t n : {512u, 2048u, 8192u}) {
        const QuadratureSpec q{.half_width = t, .points_per_axis = n};
        for (double l : {-1.0, 0.0, 0.5}) {
          const double err = std::abs(fourier_coeff_quadrature(p, {l}, q) - fourier_coeff_closed_form(p, {l}, t));
          double max_lambda = std::abs(l);
          for (const auto& term : p.terms()) max_lambda = std::max(max_lambda, std::abs(term.frequency[0] - l));
          const double model = quadrature_error_bound(p.coefficient_l1(), t, max_lambda, n);
          worst = std::max(worst, err / model * kQuadratureErrorConstant);
        }
      }
    }
  }
  MESSAGE("fitted midpoint constant: " << worst);
  CHECK(worst <= kQuadratureErrorConstant);
  CHECK(worst > 1e-3);
}

TEST_CASE("spectrum scan") {
  const Complex c{0.0, 2.0};
  const auto one = spectrum_scan(single({1.0, -1.0}, c), {{1.0, -1.0}, {0.0, 0.0}},
                                 {.half_width = 200.0, .points_per_axis = 256}, 0.05);
  REQUIRE(one.entries.size() == 1);
  CHECK(one.entries[0].coeff == c);
  CHECK(one.closed_form);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = generate_polynomial({.seed = seed, .dim = 1 + seed % 3});
    std::vector<Frequency> candidates;
    for (const auto& t : p.terms()) candidates.push_back(t.frequency);
    candidates.push_back(Frequency(p.dim(), 4.0));
    const auto report = spectrum_scan(p, candidates, {.half_width = 200.0, .points_per_axis = 16}, 0.05);
    CHECK(report.entries.size() == p.size());
    for (std::size_t k = 1; k < report.entries.size(); ++k) {
      CHECK(report.entries[k - 1].magnitude >= report.entries[k].magnitude);
    }
    for (const auto& e : report.entries) {
      CHECK(e.magnitude >= 0.05);
      CHECK(e.frequency != Frequency(p.dim(), 4.0));
    }
  }

  const TrigPolynomial close(1, {{{0.0}, {1.0, 0.0}}, {{0.001}, {1.0, 0.0}}});
  CHECK_THROWS_AS(spectrum_scan(close, {{0.0}}, {.half_width = 200.0, .points_per_axis = 16}, 0.05),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectrum_scan(single({1.0}), {}, {.half_width = 200.0, .points_per_axis = 16}, 0.05),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectrum_scan(single({1.0}), {{1.0, 0.0}}, {.half_width = 200.0, .points_per_axis = 16}, 0.05),
                  std::invalid_argument);

  // sinc has no almost periodic spectrum: its mean-value coefficients vanish
  const auto s = spectrum_scan(SincProduct{1, 1.0, {1.0, 0.0}}, grid_candidates({-2.0}, {2.0}, 0.5),
                               {.half_width = 200.0, .points_per_axis = 65536}, 0.05);
  CHECK(!s.closed_form);
  CHECK(s.entries.empty());
}

TEST_CASE("candidate grid") {
  const auto g = grid_candidates({-1.0, 0.0}, {1.0, 0.5}, 0.5);
  CHECK(g.size() == 10);
  CHECK(g.front() == Frequency{-1.0, 0.0});
  CHECK(g.back() == Frequency{1.0, 0.5});
  CHECK_THROWS_AS(grid_candidates({0.0}, {1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("rotation identity") {
  const auto p = generate_polynomial({.seed = 1, .dim = 2});
  const auto id = rotation_coefficient_identity_check(p, Matrix::Identity(2, 2), {0.3, 0.1}, 40.0);
  CHECK(id.gap == 0.0);

  Matrix r(2, 2);
  const double h = std::sqrt(0.5);
  r << h, -h, h, h;
  const auto s = single({0.6, -1.2}, {0.2, 0.9});
  for (double t : {10.0, 1e3}) {
    const auto check = rotation_coefficient_identity_check(s, r, {0.6, -1.2}, t);
    CHECK(std::abs(check.lhs - Complex{0.2, 0.9}) < 1e-12);
    CHECK(check.gap <= 1e-12);
  }
  double previous = 1.0;
  for (double t : {50.0, 100.0, 200.0, 400.0}) {
    const auto off = rotation_coefficient_identity_check(p, r, {3.0, 3.0}, t);
    CHECK(std::max(std::abs(off.lhs), std::abs(off.rhs)) <= previous);
    previous = p.coefficient_l1() / (0.5 * t);
  }
}
