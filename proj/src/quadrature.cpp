#include "apspec/quadrature.hpp"

#include <cstdlib>
#include <sstream>
#include <string>

namespace apspec {

namespace {

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(raw, &pos);
    if (pos != std::string(raw).size() || v == 0) return fallback;
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    return fallback;
  }
}

}  // namespace

std::size_t default_point_budget() { return env_size("APSPEC_MAX_POINTS", 100'000'000); }

std::size_t worker_count() {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  return env_size("APSPEC_THREADS", hw);
}

std::size_t default_points_per_axis(std::size_t dim) {
  switch (dim) {
    case 1: return 4096;
    case 2: return 256;
    case 3: return 48;
    default: return 16;
  }
}

void QuadratureSpec::validate(std::size_t dim) const {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("quadrature: half width must be positive and finite");
  }
  if (points_per_axis < 2) throw std::invalid_argument("quadrature: need at least 2 points per axis");
  double count = 1.0;
  for (std::size_t j = 0; j < dim; ++j) count *= static_cast<double>(points_per_axis);
  if (count > static_cast<double>(max_points)) {
    std::ostringstream os;
    os << "quadrature: " << points_per_axis << "^" << dim << " points exceeds the budget of " << max_points;
    throw BudgetError(os.str());
  }
}

RealVector midpoint_nodes(double half_width, std::size_t n) {
  RealVector nodes(n);
  const double h = 2.0 * half_width / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) nodes[k] = -half_width + (static_cast<double>(k) + 0.5) * h;
  return nodes;
}

std::vector<AxisNodes> real_box_axes(std::size_t dim, double half_width, std::size_t n) {
  const RealVector nodes = midpoint_nodes(half_width, n);
  AxisNodes axis(nodes.begin(), nodes.end());
  return std::vector<AxisNodes>(dim, axis);
}

GridSampler::GridSampler(const FunctionSource& f, std::vector<AxisNodes> axes) : axes_(std::move(axes)) {
  if (axes_.size() != f.dim()) throw std::invalid_argument("grid sampler: axis count does not match dimension");
  for (const auto& a : axes_) extents_.push_back(a.size());

  if (const auto* s = std::get_if<SincProduct>(&f.variant())) {
    SeparableTerm term{s->amplitude, {}};
    for (std::size_t j = 0; j < axes_.size(); ++j) {
      std::vector<Complex> table;
      table.reserve(axes_[j].size());
      for (const Complex z : axes_[j]) {
        if (std::abs(s->scale * z.imag()) > kOverflowGuard) {
          std::ostringstream os;
          os << "overflow guard: sinc factor at grid node " << z << " on axis " << j;
          throw OverflowGuardError(os.str(), j, s->scale * z.imag());
        }
        table.push_back(sinc(s->scale * z));
      }
      term.tables.push_back(std::move(table));
    }
    terms_.push_back(std::move(term));
    return;
  }

  const TrigPolynomial p = *f.as_polynomial();
  for (std::size_t n = 0; n < p.size(); ++n) {
    const auto& t = p.terms()[n];
    double worst = 0.0;
    for (std::size_t j = 0; j < axes_.size(); ++j) {
      double axis_worst = 0.0;
      for (const Complex z : axes_[j]) axis_worst = std::max(axis_worst, std::abs(t.frequency[j] * z.imag()));
      worst += axis_worst;
    }
    if (worst > kOverflowGuard) {
      std::ostringstream os;
      os << "overflow guard: term " << n << " reaches |<y, lambda>| = " << worst << " on the grid";
      throw OverflowGuardError(os.str(), n, worst);
    }
    SeparableTerm term{t.coeff, {}};
    for (std::size_t j = 0; j < axes_.size(); ++j) {
      std::vector<Complex> table;
      table.reserve(axes_[j].size());
      for (const Complex z : axes_[j]) table.push_back(std::exp(Complex{0.0, t.frequency[j]} * z));
      term.tables.push_back(std::move(table));
    }
    terms_.push_back(std::move(term));
  }
}

void GridSampler::multiply_axis(std::size_t axis, std::span<const Complex> weights) {
  if (axis >= axes_.size() || weights.size() != axes_[axis].size()) {
    throw std::invalid_argument("grid sampler: weight table does not match axis");
  }
  for (auto& term : terms_) {
    for (std::size_t k = 0; k < weights.size(); ++k) term.tables[axis][k] *= weights[k];
  }
}

Complex GridSampler::separable_mean(Summation policy) const {
  ComplexAccumulator total(policy);
  for (const auto& term : terms_) {
    Complex v = term.coeff;
    for (const auto& table : term.tables) {
      ComplexAccumulator axis(policy);
      for (const Complex t : table) axis.add(t);
      v *= axis.value() / static_cast<double>(table.size());
    }
    total.add(v);
  }
  return total.value();
}

void GridSampler::demodulate(const Frequency& lambda) {
  if (lambda.size() != axes_.size()) throw std::invalid_argument("grid sampler: frequency dimension mismatch");
  for (std::size_t j = 0; j < axes_.size(); ++j) {
    std::vector<Complex> w;
    w.reserve(axes_[j].size());
    for (const Complex z : axes_[j]) w.push_back(std::exp(Complex{0.0, -lambda[j]} * z));
    multiply_axis(j, w);
  }
}

}  // namespace apspec
