#include "apspec/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace apspec {

namespace {

constexpr Complex kI{0.0, 1.0};

double box_volume(double half_width, std::size_t dim) {
  return std::pow(2.0 * half_width, static_cast<double>(dim));
}

void check_budget(double count) {
  if (count > static_cast<double>(default_point_budget())) {
    throw BudgetError("contour quadrature: grid exceeds the point budget");
  }
}

// Mean of f(z1, x') exp(i kappa z1) over the tensor grid {z1 nodes} x
// transverse midpoints.
Complex edge_mean(const FunctionSource& f, AxisNodes z1, double kappa, double half_width, const ContourGrid& grid) {
  std::vector<AxisNodes> axes;
  axes.push_back(std::move(z1));
  const RealVector transverse = midpoint_nodes(half_width, grid.transverse_points);
  for (std::size_t j = 1; j < f.dim(); ++j) axes.emplace_back(transverse.begin(), transverse.end());
  double count = static_cast<double>(axes[0].size());
  for (std::size_t j = 1; j < f.dim(); ++j) count *= static_cast<double>(grid.transverse_points);
  check_budget(count);

  GridSampler sampler(f, std::move(axes));
  std::vector<Complex> weight;
  weight.reserve(sampler.axis(0).size());
  for (const Complex z : sampler.axis(0)) weight.push_back(std::exp(kI * kappa * z));
  sampler.multiply_axis(0, weight);
  return grid_mean(sampler.extents(), grid.summation, sampler);
}

void validate_contour(const FunctionSource& f, const ContourSpec& spec, const ContourGrid& grid) {
  if (!(spec.half_width > 0.0)) throw std::invalid_argument("contour: T must be positive");
  if (!(spec.eta > 0.0)) throw std::invalid_argument("contour: eta must be positive");
  if (!(spec.sigma >= 0.0)) throw std::invalid_argument("contour: sigma must be nonnegative");
  if (!(spec.y1 >= 0.0)) throw std::invalid_argument("contour: y1 must be nonnegative");
  if (grid.x1_points < 2 || grid.s_points < 1 || (f.dim() > 1 && grid.transverse_points < 1)) {
    throw std::invalid_argument("contour: grid too small");
  }
}

AxisNodes shifted_real_axis(double half_width, std::size_t n, double y) {
  const RealVector x = midpoint_nodes(half_width, n);
  AxisNodes out;
  out.reserve(n);
  for (double xi : x) out.emplace_back(xi, y);
  return out;
}

}  // namespace

double strip_constant(std::size_t dim, double norm) {
  const double p = static_cast<double>(dim);
  return std::pow(2.0, p + 1.0) * (1.0 + 2.0 * std::pow(3.0, p) * norm);
}

double LemmaConfig::threshold_half_width() const { return min_half_width.value_or(std::max(50.0, 100.0 * s0)); }

double strip_norm(const FunctionSource& f, const LemmaConfig& config) {
  return besicovitch_seminorm(f, config.ladder, config.norm_quadrature).value * config.norm_safety;
}

StripBoundResult lemma_strip_bound(const FunctionSource& f, double sigma, double s, const QuadratureSpec& q,
                                   const LemmaConfig& config) {
  return lemma_strip_bound(f, sigma, s, q, config, strip_norm(f, config));
}

StripBoundResult lemma_strip_bound(const FunctionSource& f, double sigma, double s, const QuadratureSpec& q,
                                   const LemmaConfig& config, double norm) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("lemma_strip_bound: sigma must be nonnegative");
  if (!(s > 0.0) || s > config.s0) {
    std::ostringstream os;
    os << "lemma_strip_bound: s = " << s << " outside (0, s0 = " << config.s0 << "]";
    throw PreconditionError(os.str());
  }
  const double t_min = config.threshold_half_width();
  if (q.half_width < t_min) {
    std::ostringstream os;
    os << "lemma_strip_bound: T = " << q.half_width << " below T(s0) = " << t_min;
    throw PreconditionError(os.str());
  }
  q.validate(f.dim());

  std::vector<AxisNodes> axes = real_box_axes(f.dim(), q.half_width, q.points_per_axis);
  for (auto& z : axes[0]) z += Complex{0.0, s};
  const GridSampler sampler(f, std::move(axes));
  const double mean =
      grid_mean(sampler.extents(), q.summation,
                [&](std::span<const std::size_t> idx) { return Complex{std::abs(sampler(idx)), 0.0}; })
          .real();

  StripBoundResult r;
  r.s = s;
  r.sigma = sigma;
  r.half_width = q.half_width;
  r.min_half_width = t_min;
  r.norm = norm;
  r.c8 = strip_constant(f.dim(), norm);
  r.lhs = box_volume(q.half_width, f.dim()) * mean * std::exp(-s * sigma);
  r.rhs = r.c8 * std::pow(q.half_width, static_cast<double>(f.dim()));
  r.tolerance = 1e-9 * r.rhs;
  r.passed = r.lhs <= r.rhs + r.tolerance;
  return r;
}

Complex top_edge_integral(const FunctionSource& f, const ContourSpec& spec, const ContourGrid& grid) {
  validate_contour(f, spec, grid);
  const double kappa = spec.sigma + spec.eta;
  return box_volume(spec.half_width, f.dim()) *
         edge_mean(f, shifted_real_axis(spec.half_width, grid.x1_points, spec.y1), kappa, spec.half_width, grid);
}

ContourDecomposition contour_decomposition(const FunctionSource& f, const ContourSpec& spec,
                                           const ContourGrid& grid) {
  validate_contour(f, spec, grid);
  const double t = spec.half_width;
  const double kappa = spec.sigma + spec.eta;
  const double volume = box_volume(t, f.dim());

  ContourDecomposition out;
  out.spec = spec;
  out.grid = grid;
  out.i0 = volume * edge_mean(f, shifted_real_axis(t, grid.x1_points, 0.0), kappa, t, grid);
  out.i2 = volume * edge_mean(f, shifted_real_axis(t, grid.x1_points, spec.y1), kappa, t, grid);
  if (spec.y1 > 0.0) {
    const RealVector s = midpoint_nodes(spec.y1 / 2.0, grid.s_points);
    AxisNodes left, right;
    for (double si : s) {
      left.emplace_back(-t, si + spec.y1 / 2.0);
      right.emplace_back(t, si + spec.y1 / 2.0);
    }
    // i * y1 * (2T)^{p-1} * mean over the side grid
    const Complex side_scale = kI * spec.y1 * box_volume(t, f.dim() - 1);
    out.i1 = side_scale * edge_mean(f, std::move(left), kappa, t, grid);
    out.i3 = side_scale * edge_mean(f, std::move(right), kappa, t, grid);
  }
  out.closure_gap = std::abs(out.i0 - (out.i1 + out.i2 - out.i3));
  return out;
}

I2Decay i2_decay(const FunctionSource& f, double sigma, double eta, double half_width, const RealVector& y1_values,
                 const ContourGrid& grid, double c8) {
  I2Decay out;
  RealVector magnitudes;
  const double scale = c8 * std::pow(half_width, static_cast<double>(f.dim()));
  for (double y1 : y1_values) {
    const double mag = std::abs(top_edge_integral(f, {sigma, eta, half_width, y1}, grid));
    magnitudes.push_back(mag);
    const double rhs = scale * std::exp(-eta * y1);
    std::ostringstream os;
    os << "i2 bound y1=" << y1 << " T=" << half_width << " eta=" << eta;
    out.bounds.push_back(make_check(mag, rhs, 1e-9 * rhs, os.str()));
  }

  const auto poly = f.as_polynomial();
  const bool slow_terms_absent =
      poly && std::all_of(poly->terms().begin(), poly->terms().end(),
                          [&](const TrigTerm& t) { return t.coeff == Complex{} || t.frequency[0] >= -sigma; });
  if (slow_terms_absent) {
    for (std::size_t k = 1; k < y1_values.size(); ++k) {
      if (magnitudes[k - 1] == 0.0) continue;
      const double delta = y1_values[k] - y1_values[k - 1];
      std::ostringstream os;
      os << "i2 ratio y1=" << y1_values[k - 1] << "->" << y1_values[k];
      out.ratios.push_back(
          make_check(magnitudes[k] / magnitudes[k - 1], std::exp(-eta * delta) * 1.05, 0.0, os.str()));
    }
  }
  return out;
}

std::vector<InequalityCheck> i2_decay_check(const FunctionSource& f, double sigma, double eta, double half_width,
                                            const RealVector& y1_values, const ContourGrid& grid, double c8) {
  return i2_decay(f, sigma, eta, half_width, y1_values, grid, c8).bounds;
}

VerifyConfig default_verify_config(std::size_t dim) {
  VerifyConfig c;
  c.lemma.s0 = c.lemma_s;
  switch (dim) {
    case 1:
      c.lemma.ladder = {50.0, 4, 2};
      c.lemma.norm_quadrature.points_per_axis = 4096;
      c.lemma_quadrature.points_per_axis = 4096;
      c.i2_grid = {.x1_points = 8192, .transverse_points = 1, .s_points = 2};
      break;
    case 2:
      c.lemma.ladder = {25.0, 4, 2};
      c.lemma.norm_quadrature.points_per_axis = 128;
      c.lemma_quadrature.points_per_axis = 256;
      c.i2_grid = {.x1_points = 8192, .transverse_points = 32, .s_points = 2};
      break;
    default:
      c.lemma.ladder = {10.0, 4, 2};
      c.lemma.norm_quadrature.points_per_axis = 16;
      c.lemma_quadrature.points_per_axis = 48;
      c.i2_grid = {.x1_points = 4096, .transverse_points = 16, .s_points = 2};
      break;
  }
  c.lemma.norm_quadrature.half_width = c.lemma.ladder.base_half_width;
  return c;
}

bool VerificationReport::all_checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return c.passed; }) &&
         std::all_of(strip_bounds.begin(), strip_bounds.end(), [](const StripBoundResult& r) { return r.passed; });
}

void assess_containment(VerificationReport& report) {
  const double radius = report.type_estimate.sigma_hat + report.tol;
  double worst = -radius;
  for (const auto& e : report.spectrum.entries) worst = std::max(worst, euclidean_norm(e.frequency) - radius);
  report.max_violation = worst;
  report.containment = worst <= 0.0;
}

VerificationReport verify_theorem1(const FunctionSource& f, const VerifyConfig& config) {
  VerificationReport report;
  try {
    report.type_estimate = estimate_type(f, config.radii, std::max(config.n_dirs, 2 * f.dim()));

    std::vector<Frequency> candidates = config.candidates;
    double step = 0.0;
    if (config.grid_lower && config.grid_upper) {
      auto grid = grid_candidates(*config.grid_lower, *config.grid_upper, config.grid_step);
      candidates.insert(candidates.end(), grid.begin(), grid.end());
      step = config.grid_step;
    }
    if (config.include_source_frequencies) {
      if (const auto poly = f.as_polynomial()) {
        for (const auto& t : poly->terms()) candidates.push_back(t.frequency);
      }
    }
    if (candidates.empty()) candidates.push_back(Frequency(f.dim(), 0.0));
    report.spectrum = spectrum_scan(f, candidates, config.spectrum_quadrature, config.threshold);

    report.tol = config.tol.value_or(2.0 * report.type_estimate.residual + step + kTypeFitAllowance);
    assess_containment(report);
    report.sigma_checked = report.type_estimate.sigma_hat + report.tol;

    const double norm = strip_norm(f, config.lemma);
    report.strip_bounds.push_back(
        lemma_strip_bound(f, report.sigma_checked, config.lemma_s, config.lemma_quadrature, config.lemma, norm));
    const double c8 = strip_constant(f.dim(), norm);
    auto decay =
        i2_decay(f, report.sigma_checked, config.eta, config.i2_half_width, config.y1_values, config.i2_grid, c8);
    report.checks.insert(report.checks.end(), decay.bounds.begin(), decay.bounds.end());
    report.diagnostics = std::move(decay.ratios);
  } catch (const std::exception& e) {
    throw VerificationAborted(std::string("verification aborted: ") + e.what(), std::move(report));
  }
  return report;
}

}  // namespace apspec
