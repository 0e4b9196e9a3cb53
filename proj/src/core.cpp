#include "apspec/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace apspec {

namespace {

void require_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    std::ostringstream os;
    os << what << ": dimension mismatch (expected " << expected << ", got " << got << ")";
    throw std::invalid_argument(os.str());
  }
}

bool same_frequency(const Frequency& a, const Frequency& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (std::abs(a[j] - b[j]) > kMergeTolerance) return false;
  }
  return true;
}

void guard_exponent(double exponent, std::size_t term) {
  if (std::abs(exponent) > kOverflowGuard) {
    std::ostringstream os;
    os << "overflow guard: term " << term << " has |<y, lambda>| = " << std::abs(exponent)
       << " > " << kOverflowGuard;
    throw OverflowGuardError(os.str(), term, exponent);
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double euclidean_norm(std::span<const double> v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

// ---------------------------------------------------------------------------
// TrigPolynomial

TrigPolynomial::TrigPolynomial(std::size_t dim, std::vector<TrigTerm> terms) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("trigonometric polynomial: dimension must be >= 1");
  terms_.reserve(terms.size());
  for (auto& t : terms) {
    require_dim(dim, t.frequency.size(), "trigonometric polynomial term");
    for (double c : t.frequency) {
      if (!std::isfinite(c)) throw std::invalid_argument("trigonometric polynomial: non-finite frequency");
    }
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
      throw std::invalid_argument("trigonometric polynomial: non-finite coefficient");
    }
    auto hit = std::find_if(terms_.begin(), terms_.end(),
                            [&](const TrigTerm& u) { return same_frequency(u.frequency, t.frequency); });
    if (hit != terms_.end()) {
      hit->coeff += t.coeff;
    } else {
      terms_.push_back(std::move(t));
    }
  }
}

double TrigPolynomial::coefficient_l1() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

double TrigPolynomial::min_frequency_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < terms_.size(); ++a) {
    for (std::size_t b = a + 1; b < terms_.size(); ++b) {
      double d = 0.0;
      for (std::size_t j = 0; j < dim_; ++j) {
        d = std::max(d, std::abs(terms_[a].frequency[j] - terms_[b].frequency[j]));
      }
      gap = std::min(gap, d);
    }
  }
  return gap;
}

Complex eval_real(const TrigPolynomial& p, std::span<const double> x) {
  require_dim(p.dim(), x.size(), "eval_real");
  Complex sum{0.0, 0.0};
  for (const auto& t : p.terms()) {
    sum += t.coeff * std::polar(1.0, dot(x, t.frequency));
  }
  return sum;
}

Complex eval_complex(const TrigPolynomial& p, const ComplexPoint& z) {
  require_dim(p.dim(), z.re.size(), "eval_complex");
  require_dim(p.dim(), z.im.size(), "eval_complex");
  Complex sum{0.0, 0.0};
  for (std::size_t n = 0; n < p.size(); ++n) {
    const auto& t = p.terms()[n];
    const double damping = dot(z.im, t.frequency);
    guard_exponent(damping, n);
    // exp(i<z, lambda>) = exp(i<x, lambda>) * exp(-<y, lambda>)
    sum += t.coeff * std::polar(std::exp(-damping), dot(z.re, t.frequency));
  }
  return sum;
}

double exact_type(const TrigPolynomial& p) {
  double sigma = 0.0;
  for (const auto& t : p.terms()) {
    if (t.coeff == Complex{}) continue;
    sigma = std::max(sigma, euclidean_norm(t.frequency));
  }
  return sigma;
}

TrigPolynomial rotate(const TrigPolynomial& p, const Matrix& a) {
  const auto dim = static_cast<Eigen::Index>(p.dim());
  if (a.rows() != dim || a.cols() != dim) {
    throw std::invalid_argument("rotate: matrix shape does not match polynomial dimension");
  }
  const Matrix defect = a.transpose() * a - Matrix::Identity(dim, dim);
  if (defect.cwiseAbs().maxCoeff() > kOrthogonalityTolerance) {
    throw std::invalid_argument("rotate: matrix is not orthogonal");
  }
  std::vector<TrigTerm> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    const Eigen::Map<const Eigen::VectorXd> lambda(t.frequency.data(), dim);
    const Eigen::VectorXd rotated = a.transpose() * lambda;
    terms.push_back({Frequency(rotated.data(), rotated.data() + dim), t.coeff});
  }
  return TrigPolynomial(p.dim(), std::move(terms));
}

// ---------------------------------------------------------------------------
// sinc

Complex sinc(Complex u) {
  if (std::abs(u) < kSincSeriesRadius) {
    const Complex u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0 - u2 * u2 * u2 / 5040.0;
  }
  if (std::abs(u.imag()) > kOverflowGuard) {
    throw OverflowGuardError("overflow guard: sinc argument has |Im| > 700", 0, u.imag());
  }
  return std::sin(u) / u;
}

double sinc(double u) {
  if (std::abs(u) < kSincSeriesRadius) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0 - u2 * u2 * u2 / 5040.0;
  }
  return std::sin(u) / u;
}

// ---------------------------------------------------------------------------
// FunctionSource

FunctionSource::FunctionSource(TrigPolynomial poly) : variant_(std::move(poly)), dim_(std::get<TrigPolynomial>(variant_).dim()) {}

FunctionSource::FunctionSource(SincProduct s) : variant_(s), dim_(s.dim) {
  if (s.dim == 0) throw std::invalid_argument("sinc product: dimension must be >= 1");
  if (!(s.scale > 0.0) || !std::isfinite(s.scale)) throw std::invalid_argument("sinc product: scale must be positive");
}

FunctionSource::FunctionSource(Cosine c) : variant_(c), dim_(c.frequency.size()) {
  if (c.frequency.empty()) throw std::invalid_argument("cosine: empty frequency");
  for (double v : c.frequency) {
    if (!std::isfinite(v)) throw std::invalid_argument("cosine: non-finite frequency");
  }
}

FunctionSource::FunctionSource(Constant c) : variant_(c), dim_(c.dim) {
  if (c.dim == 0) throw std::invalid_argument("constant: dimension must be >= 1");
}

double FunctionSource::declared_type() const {
  return std::visit(overloaded{
                        [](const TrigPolynomial& p) { return exact_type(p); },
                        [](const SincProduct& s) {
                          return s.amplitude == Complex{} ? 0.0 : s.scale * std::sqrt(static_cast<double>(s.dim));
                        },
                        [](const Cosine& c) { return euclidean_norm(c.frequency); },
                        [](const Constant&) { return 0.0; },
                    },
                    variant_);
}

std::optional<TrigPolynomial> FunctionSource::as_polynomial() const {
  return std::visit(overloaded{
                        [](const TrigPolynomial& p) -> std::optional<TrigPolynomial> { return p; },
                        [](const SincProduct&) -> std::optional<TrigPolynomial> { return std::nullopt; },
                        [](const Cosine& c) -> std::optional<TrigPolynomial> {
                          Frequency neg = c.frequency;
                          for (double& v : neg) v = -v;
                          return TrigPolynomial(c.frequency.size(), {{c.frequency, 0.5}, {neg, 0.5}});
                        },
                        [](const Constant& c) -> std::optional<TrigPolynomial> {
                          return TrigPolynomial(c.dim, {{Frequency(c.dim, 0.0), c.value}});
                        },
                    },
                    variant_);
}

double FunctionSource::sup_bound() const {
  return std::visit(overloaded{
                        [](const TrigPolynomial& p) { return p.coefficient_l1(); },
                        [](const SincProduct& s) { return std::abs(s.amplitude); },
                        [](const Cosine&) { return 1.0; },
                        [](const Constant& c) { return std::abs(c.value); },
                    },
                    variant_);
}

std::string FunctionSource::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const TrigPolynomial& p) { os << "poly(dim=" << p.dim() << ",terms=" << p.size() << ")"; },
                 [&](const SincProduct& s) {
                   os << "sinc" << s.dim << ":" << s.scale;
                   if (s.amplitude != Complex{1.0, 0.0}) os << "*" << s.amplitude;
                 },
                 [&](const Cosine& c) {
                   os << "cos:";
                   for (std::size_t j = 0; j < c.frequency.size(); ++j) os << (j ? "," : "") << c.frequency[j];
                 },
                 [&](const Constant& c) {
                   os << "const" << c.dim << ":" << c.value.real();
                   if (c.value.imag() != 0.0) os << "," << c.value.imag();
                 },
             },
             variant_);
  return os.str();
}

ComplexPoint ComplexPoint::real(RealVector x) {
  RealVector zeros(x.size(), 0.0);
  return {std::move(x), std::move(zeros)};
}

Complex eval_real(const FunctionSource& f, std::span<const double> x) {
  require_dim(f.dim(), x.size(), "eval_real");
  return std::visit(overloaded{
                        [&](const TrigPolynomial& p) { return eval_real(p, x); },
                        [&](const SincProduct& s) {
                          Complex v = s.amplitude;
                          for (double xj : x) v *= sinc(s.scale * xj);
                          return v;
                        },
                        [&](const Cosine& c) { return Complex{std::cos(dot(x, c.frequency)), 0.0}; },
                        [&](const Constant& c) { return c.value; },
                    },
                    f.variant());
}

Complex eval_complex(const FunctionSource& f, const ComplexPoint& z) {
  require_dim(f.dim(), z.re.size(), "eval_complex");
  require_dim(f.dim(), z.im.size(), "eval_complex");
  return std::visit(overloaded{
                        [&](const TrigPolynomial& p) { return eval_complex(p, z); },
                        [&](const SincProduct& s) {
                          Complex v = s.amplitude;
                          for (std::size_t j = 0; j < z.dim(); ++j) {
                            const double damping = s.scale * z.im[j];
                            guard_exponent(damping, j);
                            v *= sinc(Complex{s.scale * z.re[j], damping});
                          }
                          return v;
                        },
                        [&](const Cosine& c) {
                          const double damping = dot(z.im, c.frequency);
                          guard_exponent(damping, 0);
                          return std::cos(Complex{dot(z.re, c.frequency), damping});
                        },
                        [&](const Constant& c) { return c.value; },
                    },
                    f.variant());
}

Complex sinc_multiplier(const FunctionSource& f, const ComplexPoint& z, int power) {
  if (power < 1) throw std::invalid_argument("sinc_multiplier: power must be positive");
  Complex v = eval_complex(f, z);
  for (std::size_t j = 0; j < z.dim(); ++j) {
    guard_exponent(z.im[j], j);
    v *= std::pow(sinc(Complex{z.re[j], z.im[j]}), power);
  }
  return v;
}

FunctionSource restrict_to_first_axis(const FunctionSource& f, std::span<const double> transverse) {
  require_dim(f.dim() - 1, transverse.size(), "restrict_to_first_axis");
  if (const auto* s = std::get_if<SincProduct>(&f.variant())) {
    Complex amp = s->amplitude;
    for (double xj : transverse) amp *= sinc(s->scale * xj);
    return SincProduct{1, s->scale, amp};
  }
  if (const auto* c = std::get_if<Constant>(&f.variant())) {
    return Constant{1, c->value};
  }
  const TrigPolynomial p = *f.as_polynomial();
  std::vector<TrigTerm> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    const std::span<const double> tail(t.frequency.data() + 1, t.frequency.size() - 1);
    terms.push_back({{t.frequency[0]}, t.coeff * std::polar(1.0, dot(transverse, tail))});
  }
  return TrigPolynomial(1, std::move(terms));
}

double upper_indicator(const FunctionSource& g) {
  require_dim(1, g.dim(), "upper_indicator");
  return std::visit(overloaded{
                        [](const TrigPolynomial& p) {
                          // |g(it)| ~ max_n |c_n| exp(-lambda_n t)
                          double h = -std::numeric_limits<double>::infinity();
                          for (const auto& t : p.terms()) {
                            if (t.coeff != Complex{}) h = std::max(h, -t.frequency[0]);
                          }
                          return std::isfinite(h) ? h : 0.0;
                        },
                        [](const SincProduct& s) { return s.amplitude == Complex{} ? 0.0 : s.scale; },
                        [](const Cosine& c) { return std::abs(c.frequency[0]); },
                        [](const Constant&) { return 0.0; },
                    },
                    g.variant());
}

}  // namespace apspec
