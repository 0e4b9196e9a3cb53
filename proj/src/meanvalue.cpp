#include "apspec/meanvalue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace apspec {

void LadderSpec::validate() const {
  if (!(base_half_width > 0.0) || !std::isfinite(base_half_width)) {
    throw std::invalid_argument("ladder: base half width must be positive");
  }
  if (levels < 1) throw std::invalid_argument("ladder: need at least one level");
  if (tail < 1 || tail > levels) throw std::invalid_argument("ladder: tail must satisfy 1 <= m <= K");
}

double LadderSpec::half_width(std::size_t level) const {
  return std::ldexp(base_half_width, static_cast<int>(level));
}

double SeminormEstimate::tail_spread() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t k = levels.size() - tail; k < levels.size(); ++k) {
    lo = std::min(lo, levels[k].value);
    hi = std::max(hi, levels[k].value);
  }
  return hi - lo;
}

double box_average_abs(const FunctionSource& f, const QuadratureSpec& q) {
  q.validate(f.dim());
  const GridSampler sampler(f, real_box_axes(f.dim(), q.half_width, q.points_per_axis));
  return grid_mean(sampler.extents(), q.summation,
                   [&](std::span<const std::size_t> idx) { return Complex{std::abs(sampler(idx)), 0.0}; })
      .real();
}

SeminormEstimate besicovitch_seminorm(const FunctionSource& f, const LadderSpec& ladder,
                                      const QuadratureSpec& q_template) {
  ladder.validate();
  SeminormEstimate est;
  est.tail = ladder.tail;
  for (std::size_t k = 0; k < ladder.levels; ++k) {
    QuadratureSpec q = q_template;
    q.half_width = ladder.half_width(k);
    q.points_per_axis = q_template.points_per_axis << k;
    est.levels.push_back({q.half_width, q.points_per_axis, box_average_abs(f, q)});
  }
  est.value = 0.0;
  for (std::size_t k = ladder.levels - ladder.tail; k < ladder.levels; ++k) {
    est.value = std::max(est.value, est.levels[k].value);
  }
  return est;
}

double dirichlet_factor(double u, double half_width) { return sinc(u * half_width); }

Complex fourier_coeff_closed_form(const TrigPolynomial& p, const Frequency& lambda, double half_width) {
  if (lambda.size() != p.dim()) throw std::invalid_argument("fourier coefficient: dimension mismatch");
  if (!(half_width > 0.0)) throw std::invalid_argument("fourier coefficient: T must be positive");
  Complex sum{0.0, 0.0};
  for (const auto& t : p.terms()) {
    double factor = 1.0;
    for (std::size_t j = 0; j < lambda.size(); ++j) factor *= dirichlet_factor(t.frequency[j] - lambda[j], half_width);
    sum += t.coeff * factor;
  }
  return sum;
}

Complex fourier_coeff_quadrature(const FunctionSource& f, const Frequency& lambda, const QuadratureSpec& q) {
  if (lambda.size() != f.dim()) throw std::invalid_argument("fourier coefficient: dimension mismatch");
  // the demodulated integrand is separable, so the budget applies per axis
  q.validate(1);
  GridSampler sampler(f, real_box_axes(f.dim(), q.half_width, q.points_per_axis));
  sampler.demodulate(lambda);
  return sampler.separable_mean(q.summation);
}

double quadrature_error_bound(double sup_bound, double half_width, double max_frequency, std::size_t n) {
  const double ratio = half_width * (1.0 + max_frequency) / static_cast<double>(n);
  return kQuadratureErrorConstant * sup_bound * ratio * ratio;
}

double spectrum_error_floor(const FunctionSource& f, const std::vector<Frequency>& candidates,
                            const QuadratureSpec& q) {
  if (const auto poly = f.as_polynomial()) {
    const double gap = poly->min_frequency_gap();
    if (!std::isfinite(gap)) return 0.0;
    return poly->coefficient_l1() / (gap * q.half_width);
  }
  double max_frequency = f.declared_type();
  for (const auto& c : candidates) max_frequency = std::max(max_frequency, euclidean_norm(c));
  return 10.0 * quadrature_error_bound(f.sup_bound(), q.half_width, max_frequency, q.points_per_axis);
}

SpectrumReport spectrum_scan(const FunctionSource& f, const std::vector<Frequency>& candidates,
                             const QuadratureSpec& q, double threshold) {
  if (candidates.empty()) throw std::invalid_argument("spectrum scan: empty candidate set");
  for (const auto& c : candidates) {
    if (c.size() != f.dim()) throw std::invalid_argument("spectrum scan: candidate dimension mismatch");
  }
  SpectrumReport report;
  report.threshold = threshold;
  report.quadrature = q;
  report.error_floor = spectrum_error_floor(f, candidates, q);
  if (!(threshold > report.error_floor)) {
    std::ostringstream os;
    os << "spectrum scan: threshold " << threshold << " does not exceed the error floor " << report.error_floor;
    throw std::invalid_argument(os.str());
  }

  const auto poly = f.as_polynomial();
  report.closed_form = poly.has_value();
  if (!poly) q.validate(1);
  for (const auto& lambda : candidates) {
    const Complex a = poly ? fourier_coeff_closed_form(*poly, lambda, q.half_width)
                           : fourier_coeff_quadrature(f, lambda, q);
    const double mag = std::abs(a);
    if (mag >= threshold) report.entries.push_back({lambda, a, mag});
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.magnitude > b.magnitude; });
  return report;
}

std::vector<Frequency> grid_candidates(const RealVector& lower, const RealVector& upper, double step) {
  if (lower.size() != upper.size() || lower.empty()) throw std::invalid_argument("candidate grid: bad box");
  if (!(step > 0.0)) throw std::invalid_argument("candidate grid: step must be positive");
  std::vector<std::size_t> counts;
  std::size_t total = 1;
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!(upper[j] >= lower[j])) throw std::invalid_argument("candidate grid: upper < lower");
    // tolerate rounding so that e.g. [-1, 1] with step 0.5 yields 5 points
    const auto c = static_cast<std::size_t>(std::floor((upper[j] - lower[j]) / step + 1e-9)) + 1;
    counts.push_back(c);
    total *= c;
  }
  if (total > 50'000'000) throw BudgetError("candidate grid: too many candidates");
  std::vector<Frequency> out;
  out.reserve(total);
  std::vector<std::size_t> idx(lower.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Frequency lambda(lower.size());
    for (std::size_t j = 0; j < lower.size(); ++j) lambda[j] = lower[j] + static_cast<double>(idx[j]) * step;
    out.push_back(std::move(lambda));
    for (std::size_t j = lower.size(); j-- > 0;) {
      if (++idx[j] < counts[j]) break;
      idx[j] = 0;
    }
  }
  return out;
}

RotationIdentity rotation_coefficient_identity_check(const TrigPolynomial& p, const Matrix& a,
                                                     const Frequency& lambda, double half_width) {
  const TrigPolynomial rotated = rotate(p, a);
  const Eigen::Map<const Eigen::VectorXd> l(lambda.data(), static_cast<Eigen::Index>(lambda.size()));
  const Eigen::VectorXd pulled = a.transpose() * l;
  const Frequency lambda_a(pulled.data(), pulled.data() + pulled.size());
  RotationIdentity out;
  out.lhs = fourier_coeff_closed_form(p, lambda, half_width);
  out.rhs = fourier_coeff_closed_form(rotated, lambda_a, half_width);
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace apspec
