#include "apspec/entire.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "apspec/quadrature.hpp"

namespace apspec {

namespace {

RealVector unit(RealVector v) {
  const double n = euclidean_norm(v);
  for (double& c : v) c /= n;
  return v;
}

RealVector negated(RealVector v) {
  for (double& c : v) c = -c;
  return v;
}

std::vector<RealVector> sample_directions(const FunctionSource& f, std::size_t n_dirs) {
  const std::size_t p = f.dim();
  std::vector<RealVector> dirs;
  for (std::size_t j = 0; j < p; ++j) {
    RealVector e(p, 0.0);
    e[j] = 1.0;
    dirs.push_back(e);
    e[j] = -1.0;
    dirs.push_back(e);
  }
  if (const auto* s = std::get_if<SincProduct>(&f.variant())) {
    (void)s;
    for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
      RealVector d(p);
      for (std::size_t j = 0; j < p; ++j) d[j] = (mask >> j) & 1u ? -1.0 : 1.0;
      dirs.push_back(unit(d));
    }
  } else if (const auto poly = f.as_polynomial()) {
    for (const auto& t : poly->terms()) {
      if (t.coeff == Complex{} || euclidean_norm(t.frequency) == 0.0) continue;
      const RealVector u = unit(t.frequency);
      dirs.push_back(u);
      dirs.push_back(negated(u));
    }
  }
  std::mt19937_64 rng(0x5eedf00dULL);
  std::normal_distribution<double> gauss;
  while (dirs.size() < n_dirs) {
    RealVector d(p);
    for (double& c : d) c = gauss(rng);
    if (euclidean_norm(d) > 1e-8) dirs.push_back(unit(d));
  }
  return dirs;
}

double log_max_modulus(const FunctionSource& f, const std::vector<RealVector>& dirs, double r) {
  double best = 0.0;
  for (const auto& u : dirs) {
    ComplexPoint z{RealVector(u.size(), 0.0), u};
    for (double& c : z.im) c *= r;
    best = std::max(best, std::abs(eval_complex(f, z)));
  }
  return std::log(best);
}

template <class Visit>
void for_each_grid_point(const std::vector<RealVector>& axes, Visit&& visit) {
  const std::size_t dim = axes.size();
  std::vector<std::size_t> idx(dim, 0);
  RealVector x(dim);
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.size();
  for (std::size_t n = 0; n < total; ++n) {
    for (std::size_t j = 0; j < dim; ++j) x[j] = axes[j][idx[j]];
    visit(std::span<const std::size_t>(idx), std::span<const double>(x));
    for (std::size_t j = dim; j-- > 0;) {
      if (++idx[j] < axes[j].size()) break;
      idx[j] = 0;
    }
  }
}

double grid_sup_abs(const FunctionSource& f, const std::vector<RealVector>& axes) {
  std::vector<AxisNodes> complex_axes;
  double count = 1.0;
  for (const auto& a : axes) {
    complex_axes.emplace_back(a.begin(), a.end());
    count *= static_cast<double>(a.size());
  }
  if (count > static_cast<double>(default_point_budget())) throw BudgetError("sup grid exceeds the point budget");
  const GridSampler sampler(f, std::move(complex_axes));
  double sup = 0.0;
  for_each_grid_point(axes, [&](std::span<const std::size_t> idx, std::span<const double>) {
    sup = std::max(sup, std::abs(sampler(idx)));
  });
  return sup;
}

}  // namespace

RealVector linspace_nodes(double half_width, std::size_t n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least 2 points");
  RealVector nodes(n);
  const double step = 2.0 * half_width / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) nodes[k] = -half_width + static_cast<double>(k) * step;
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  return nodes;
}

TypeEstimate estimate_type(const FunctionSource& f, const RealVector& radii, std::size_t n_dirs) {
  if (radii.size() < 3) throw std::invalid_argument("estimate_type: need at least 3 radii");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || (k > 0 && !(radii[k] > radii[k - 1]))) {
      throw std::invalid_argument("estimate_type: radii must be positive and strictly increasing");
    }
  }
  if (n_dirs < 2 * f.dim()) throw std::invalid_argument("estimate_type: need n_dirs >= 2p");

  const auto dirs = sample_directions(f, n_dirs);
  TypeEstimate est;
  est.directions = dirs.size();
  for (double r : radii) {
    try {
      est.log_max_modulus.push_back(log_max_modulus(f, dirs, r));
      est.radii.push_back(r);
    } catch (const OverflowGuardError&) {
      est.truncated = true;
      break;
    }
  }
  if (est.radii.size() < 2) {
    throw std::range_error("estimate_type: overflow guard left fewer than two usable radii");
  }

  const std::size_t used = est.radii.size();
  const std::size_t fit_count = std::max<std::size_t>(2, (used + 1) / 2);
  const std::size_t first = used - fit_count;
  if (!std::isfinite(est.log_max_modulus[first])) {
    // zero function: no growth at all
    est.sigma_hat = 0.0;
    est.log_c0_hat = -std::numeric_limits<double>::infinity();
    return est;
  }

  double mr = 0.0, ml = 0.0;
  for (std::size_t k = first; k < used; ++k) {
    mr += est.radii[k];
    ml += est.log_max_modulus[k];
  }
  mr /= static_cast<double>(fit_count);
  ml /= static_cast<double>(fit_count);
  double srr = 0.0, srl = 0.0;
  for (std::size_t k = first; k < used; ++k) {
    srr += (est.radii[k] - mr) * (est.radii[k] - mr);
    srl += (est.radii[k] - mr) * (est.log_max_modulus[k] - ml);
  }
  const double slope = srl / srr;
  const double intercept = ml - slope * mr;
  for (std::size_t k = first; k < used; ++k) {
    est.residual = std::max(est.residual, std::abs(est.log_max_modulus[k] - (intercept + slope * est.radii[k])));
  }
  est.sigma_hat = std::max(0.0, slope);
  est.log_c0_hat = intercept;
  return est;
}

InequalityCheck make_check(double lhs, double rhs, double tolerance, std::string context) {
  InequalityCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rhs - lhs;
  c.tolerance = tolerance;
  c.passed = c.margin >= -tolerance;
  c.context = std::move(context);
  return c;
}

InequalityCheck logvinenko_check(const FunctionSource& f, double sigma, double delta, double box_half_width,
                                 std::size_t dense_n) {
  if (!(sigma >= 0.0) || !(delta > 0.0) || !(box_half_width > 0.0)) {
    throw std::invalid_argument("logvinenko_check: need sigma >= 0, delta > 0 and L > 0");
  }
  if (sigma * delta > 0.5) {
    std::ostringstream os;
    os << "logvinenko_check: sigma*delta = " << sigma * delta << " exceeds 1/2";
    throw PreconditionError(os.str());
  }
  const std::size_t p = f.dim();
  // cubic lattice with covering radius spacing*sqrt(p)/2 <= delta
  const double spacing = std::min(delta, 2.0 * delta / std::sqrt(static_cast<double>(p)));
  const auto half_count = static_cast<long>(std::floor(box_half_width / spacing + 1e-9));
  RealVector net;
  for (long k = -half_count; k <= half_count; ++k) net.push_back(static_cast<double>(k) * spacing);
  if (net.back() < box_half_width) {
    // cover the box edge
    net.insert(net.begin(), -box_half_width);
    net.push_back(box_half_width);
  }

  const double dense_sup = grid_sup_abs(f, std::vector<RealVector>(p, linspace_nodes(box_half_width, dense_n)));
  const double net_sup = grid_sup_abs(f, std::vector<RealVector>(p, net));
  const double rhs = net_sup / (1.0 - sigma * delta);

  std::ostringstream os;
  os << "logvinenko sigma=" << sigma << " delta=" << delta << " L=" << box_half_width
     << " (sup over [-L,L]^p stands in for sup over R^p)";
  return make_check(dense_sup, rhs, 1e-12 * std::max(1.0, rhs), os.str());
}

InequalityCheck poisson_majorant_check(const FunctionSource& g, double x0, double s, double truncation,
                                       std::size_t n_int, const PoissonConfig& config) {
  if (g.dim() != 1) throw std::invalid_argument("poisson_majorant_check: needs a one-dimensional slice");
  if (!(s > 0.0) || s > config.s0) throw PreconditionError("poisson_majorant_check: s must lie in (0, s0]");
  if (truncation < config.truncation_factor * s) {
    throw PreconditionError("poisson_majorant_check: truncation T_int below the required multiple of s");
  }
  if (n_int < 4) throw std::invalid_argument("poisson_majorant_check: n_int too small");

  std::ostringstream os;
  os << "poisson x0=" << x0 << " s=" << s << " T_int=" << truncation;

  const double lhs = std::log(std::abs(eval_complex(g, ComplexPoint{{x0}, {s}})));
  const double h = upper_indicator(g);
  if (!std::isfinite(lhs)) {
    os << " (zero of g: vacuous)";
    return make_check(lhs, lhs, 0.0, os.str());
  }

  const double log_floor = std::log(std::numeric_limits<double>::min());
  auto poisson_integral = [&](std::size_t n) {
    const RealVector t = midpoint_nodes(truncation, n);
    AxisNodes nodes;
    nodes.reserve(n);
    for (double ti : t) nodes.emplace_back(x0 + ti, 0.0);
    const GridSampler sampler(g, {std::move(nodes)});
    const std::size_t extent = n;
    const Complex mean = grid_mean(std::span<const std::size_t>(&extent, 1), Summation::compensated,
                                   [&](std::span<const std::size_t> idx) {
                                     const double ti = t[idx[0]];
                                     const double lg = std::max(log_floor, std::log(std::abs(sampler(idx))));
                                     return Complex{lg / (ti * ti + s * s), 0.0};
                                   });
    // mean * 2T = integral
    return s / std::numbers::pi * mean.real() * 2.0 * truncation;
  };
  const double fine = poisson_integral(n_int);
  const double coarse = poisson_integral(n_int / 2);
  const double rhs = fine + config.tail_allowance + h * s;
  return make_check(lhs, rhs, std::abs(fine - coarse) + 1e-12, os.str());
}

InequalityCheck phragmen_lindelof_check(const FunctionSource& g, double x, double y, const SupGrid& grid) {
  if (g.dim() != 1) throw std::invalid_argument("phragmen_lindelof_check: needs a one-dimensional slice");
  if (!(y > 0.0)) throw std::invalid_argument("phragmen_lindelof_check: y must be positive");
  const RealVector nodes = linspace_nodes(grid.half_width, grid.points);
  const double sup = grid_sup_abs(g, {nodes});
  const double h = upper_indicator(g);
  const double lhs = std::abs(eval_complex(g, ComplexPoint{{x}, {y}}));
  const double rhs = sup * std::exp(h * y);
  // Bernstein: the grid misses the true sup by at most sigma*step/2 of it
  const double step = nodes[1] - nodes[0];
  const double miss = std::min(0.5, g.declared_type() * step / 2.0);
  const double tolerance = rhs * miss / (1.0 - miss) + 1e-12 * std::max(1.0, rhs);
  std::ostringstream os;
  os << "phragmen-lindelof x=" << x << " y=" << y << " h=" << h << " sup over [-" << grid.half_width << ","
     << grid.half_width << "]";
  return make_check(lhs, rhs, tolerance, os.str());
}

GrowthEnvelope growth_envelope_check(const FunctionSource& f, double box_half_width, std::size_t n) {
  const std::size_t p = f.dim();
  const RealVector nodes = linspace_nodes(box_half_width, n);
  std::vector<RealVector> axes(p, nodes);
  double count = std::pow(static_cast<double>(n), static_cast<double>(p));
  if (count > static_cast<double>(default_point_budget())) throw BudgetError("envelope grid exceeds the point budget");
  std::vector<AxisNodes> complex_axes(p, AxisNodes(nodes.begin(), nodes.end()));
  const GridSampler sampler(f, std::move(complex_axes));

  GrowthEnvelope env;
  double best_value = 0.0;
  double best_weight = 1.0;
  env.argmax = RealVector(p, 0.0);
  const double power = static_cast<double>(p);
  for_each_grid_point(axes, [&](std::span<const std::size_t> idx, std::span<const double> x) {
    double weight = 1.0;
    for (double xj : x) weight *= std::pow(1.0 + std::abs(xj), power);
    const double value = std::abs(sampler(idx));
    if (value / weight > env.c1_hat) {
      env.c1_hat = value / weight;
      best_value = value;
      best_weight = weight;
      env.argmax.assign(x.begin(), x.end());
    }
  });
  std::ostringstream os;
  os << "growth envelope L=" << box_half_width << " n=" << n;
  env.check = make_check(best_value, env.c1_hat * best_weight, 1e-12 * std::max(1.0, best_value), os.str());
  return env;
}

double indicator_numeric(const FunctionSource& g, double t_max) {
  if (g.dim() != 1) throw std::invalid_argument("indicator_numeric: needs a one-dimensional slice");
  auto log_mod = [&](double t) { return std::log(std::abs(eval_complex(g, ComplexPoint{{0.0}, {t}}))); };
  double t = t_max;
  for (int tries = 0; tries < 60; ++tries, t /= 2.0) {
    try {
      const double hi = log_mod(t);
      const double lo = log_mod(0.9 * t);
      return (hi - lo) / (0.1 * t);
    } catch (const OverflowGuardError&) {
    }
  }
  throw std::range_error("indicator_numeric: no safe t found");
}

}  // namespace apspec
