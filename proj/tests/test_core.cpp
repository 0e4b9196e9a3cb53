#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "apspec/core.hpp"
#include "apspec/io.hpp"

using namespace apspec;

namespace {

TrigPolynomial single(Frequency lambda, Complex c = {1.0, 0.0}) {
  const std::size_t dim = lambda.size();
  return TrigPolynomial(dim, {{std::move(lambda), c}});
}

Matrix random_orthogonal(std::size_t p, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(p, p);
}

}  // namespace

TEST_CASE("eval_real on single terms") {
  const std::vector<double> x1{0.7};
  CHECK(std::abs(eval_real(single({0.0}), x1) - Complex{1.0, 0.0}) < 1e-15);
  const std::vector<double> pi{std::numbers::pi};
  CHECK(std::abs(eval_real(single({1.0}), pi) - Complex{-1.0, 0.0}) < 1e-15);
  const std::vector<double> zero{0.0, 0.0};
  CHECK(std::abs(eval_real(single({1.0, 1.0}, {2.0, 0.0}), zero) - Complex{2.0, 0.0}) < 1e-15);
}

TEST_CASE("eval_complex follows exp(i<x,l>) exp(-<y,l>)") {
  const auto z = ComplexPoint{{0.0}, {1.0}};
  CHECK(std::abs(eval_complex(single({1.0}), z) - std::exp(-1.0)) < 1e-15);

  const Complex c0{0.3, -2.0};
  CHECK(std::abs(eval_complex(single({0.0}, c0), ComplexPoint{{4.0}, {-9.0}}) - c0) < 1e-15);

  const auto w = ComplexPoint{{0.0, 0.0}, {3.0 / 5.0, 4.0 / 5.0}};
  CHECK(std::abs(eval_complex(single({3.0, 4.0}), w) - std::exp(-5.0)) < 1e-15);
}

TEST_CASE("eval_complex agrees with eval_real on real points") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = generate_polynomial({.seed = seed, .dim = 1 + seed % 3});
    RealVector x(p.dim());
    for (auto& v : x) v = u(rng);
    CHECK(std::abs(eval_complex(p, ComplexPoint::real(x)) - eval_real(p, x)) < 1e-13);
  }
}

TEST_CASE("overflow guard") {
  const auto p = single({1.0});
  CHECK_THROWS_AS(eval_complex(p, ComplexPoint{{0.0}, {-701.0}}), OverflowGuardError);
  CHECK_NOTHROW(eval_complex(p, ComplexPoint{{0.0}, {-699.0}}));
  try {
    eval_complex(p, ComplexPoint{{0.0}, {800.0}});
    FAIL("expected overflow");
  } catch (const OverflowGuardError& e) {
    CHECK(e.term() == 0);
    CHECK(e.exponent() == doctest::Approx(800.0));
  }
}

TEST_CASE("duplicate frequencies merge into the first occurrence") {
  const TrigPolynomial p(1, {{{2.0}, {1.0, 0.0}}, {{-1.0}, {0.5, 0.0}}, {{2.0 + 1e-13}, {0.25, 1.0}}});
  REQUIRE(p.size() == 2);
  CHECK(p.terms()[0].frequency[0] == 2.0);
  CHECK(p.terms()[0].coeff == Complex{1.25, 1.0});
  CHECK(p.terms()[1].frequency[0] == -1.0);
  CHECK_THROWS_AS(TrigPolynomial(2, {{{1.0}, {1.0, 0.0}}}), std::invalid_argument);
}

TEST_CASE("exact_type") {
  CHECK(exact_type(single({3.0})) == 3.0);
  CHECK(exact_type(single({0.0}, {4.0, 0.0})) == 0.0);
  CHECK(exact_type(single({3.0, 4.0})) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(exact_type(TrigPolynomial(2)) == 0.0);
  CHECK(exact_type(TrigPolynomial(1, {{{9.0}, {0.0, 0.0}}, {{1.0}, {1.0, 0.0}}})) == 1.0);
}

TEST_CASE("rotate") {
  const auto p = generate_polynomial({.seed = 4, .dim = 2});
  const auto same = rotate(p, Matrix::Identity(2, 2));
  REQUIRE(same.size() == p.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    CHECK(same.terms()[n].frequency == p.terms()[n].frequency);
    CHECK(same.terms()[n].coeff == p.terms()[n].coeff);
  }

  Matrix a(2, 2);
  a << 0.0, -1.0, 1.0, 0.0;
  const auto r = rotate(single({1.0, 0.0}, {0.5, 0.5}), a);
  CHECK(r.terms()[0].frequency[0] == doctest::Approx(0.0));
  CHECK(r.terms()[0].frequency[1] == doctest::Approx(-1.0));
  CHECK(r.terms()[0].coeff == Complex{0.5, 0.5});

  // pointwise: P_A(x) = P(A x)
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const auto q = rotate(p, a);
  for (int k = 0; k < 10; ++k) {
    Eigen::Vector2d x(u(rng), u(rng));
    const Eigen::Vector2d ax = a * x;
    const std::vector<double> xv{x[0], x[1]}, axv{ax[0], ax[1]};
    CHECK(std::abs(eval_real(q, xv) - eval_real(p, axv)) < 1e-12);
  }

  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(rotate(p, bad), std::invalid_argument);
}

TEST_CASE("rotation preserves coefficient multisets and type") {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t dim = 1 + seed % 3;
    const auto p = generate_polynomial({.seed = seed, .dim = dim});
    const auto q = rotate(p, random_orthogonal(dim, rng));
    REQUIRE(q.size() == p.size());
    for (std::size_t n = 0; n < p.size(); ++n) CHECK(q.terms()[n].coeff == p.terms()[n].coeff);
    CHECK(exact_type(q) == doctest::Approx(exact_type(p)).epsilon(1e-12));
  }
}

TEST_CASE("sinc and sinc_multiplier") {
  CHECK(sinc(0.0) == 1.0);
  for (double u : {1e-5, 5e-5, 9.9e-5, 1e-4, 2e-4, 0.3, 3.0}) {
    CHECK(sinc(u) == doctest::Approx(std::sin(u) / u).epsilon(1e-15));
  }
  CHECK(std::abs(sinc(Complex{0.0, 1.0}) - std::sinh(1.0)) < 1e-15);

  const FunctionSource one = Constant{1, {1.0, 0.0}};
  CHECK(std::abs(sinc_multiplier(Constant{3, {1.0, 0.0}}, ComplexPoint::real({0.0, 0.0, 0.0}), 3) - 1.0) < 1e-15);
  CHECK(std::abs(sinc_multiplier(one, ComplexPoint::real({std::numbers::pi}), 1)) < 1e-15);
  // series oracle for sinh(1) = sum 1/(2k+1)!
  double series = 0.0, term = 1.0;
  for (int k = 1; k < 30; k += 2) {
    series += term;
    term /= static_cast<double>((k + 1) * (k + 2));
  }
  CHECK(std::abs(sinc_multiplier(one, ComplexPoint{{0.0}, {1.0}}, 1) - series) < 1e-14);
}

TEST_CASE("function sources") {
  const FunctionSource c = Cosine{{1.0, 2.0}};
  REQUIRE(c.as_polynomial());
  CHECK(c.as_polynomial()->size() == 2);
  CHECK(c.declared_type() == doctest::Approx(std::sqrt(5.0)));
  const std::vector<double> x{0.3, -0.8};
  CHECK(std::abs(eval_real(c, x) - std::cos(0.3 - 1.6)) < 1e-15);

  const FunctionSource s = SincProduct{2, 1.5, {1.0, 0.0}};
  CHECK(s.declared_type() == doctest::Approx(1.5 * std::sqrt(2.0)));
  CHECK(!s.as_polynomial());
  CHECK(std::abs(eval_real(s, x) - sinc(0.45) * sinc(-1.2)) < 1e-15);

  const FunctionSource k = Constant{2, {0.0, 3.0}};
  CHECK(k.declared_type() == 0.0);
  CHECK(k.sup_bound() == 3.0);
}

TEST_CASE("restriction to the first axis and the indicator") {
  const auto p = TrigPolynomial(2, {{{1.0, 2.0}, {1.0, 0.0}}, {{-0.5, 0.0}, {0.5, 0.0}}});
  const std::vector<double> xp{0.7};
  const auto g = restrict_to_first_axis(p, xp);
  CHECK(g.dim() == 1);
  for (double w : {-1.0, 0.0, 2.5}) {
    const std::vector<double> full{w, 0.7}, one{w};
    CHECK(std::abs(eval_real(g, one) - eval_real(p, full)) < 1e-14);
  }
  CHECK(upper_indicator(g) == 0.5);
  CHECK(upper_indicator(single({1.0})) == -1.0);
  CHECK(upper_indicator(Cosine{{2.0}}) == 2.0);
  CHECK(upper_indicator(SincProduct{1, 3.0, {1.0, 0.0}}) == 3.0);
  CHECK(upper_indicator(Constant{1, {2.0, 0.0}}) == 0.0);
}
