#pragma once

// Tensor-grid quadrature with deterministic, partition-then-reduce summation.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <span>
#include <thread>
#include <vector>

#include "apspec/core.hpp"

namespace apspec {

enum class Summation { compensated, naive };

/// Default ceiling on n^p; APSPEC_MAX_POINTS overrides it.
std::size_t default_point_budget();

struct QuadratureSpec {
  double half_width = 1.0;
  std::size_t points_per_axis = 2;
  Summation summation = Summation::compensated;
  std::size_t max_points = default_point_budget();

  /// Throws std::invalid_argument on a malformed spec and BudgetError when
  /// points_per_axis^dim exceeds max_points.
  void validate(std::size_t dim) const;
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexAccumulator {
 public:
  explicit ComplexAccumulator(Summation policy = Summation::compensated) : policy_(policy) {}

  void add(Complex v) noexcept {
    if (policy_ == Summation::compensated) {
      re_.add(v.real());
      im_.add(v.imag());
    } else {
      naive_ += v;
    }
  }
  Complex value() const noexcept {
    return policy_ == Summation::compensated ? Complex{re_.value(), im_.value()} : naive_;
  }

 private:
  Summation policy_;
  CompensatedSum re_;
  CompensatedSum im_;
  Complex naive_{0.0, 0.0};
};

/// Midpoints of n equal cells on [-T, T].
RealVector midpoint_nodes(double half_width, std::size_t n);

/// Default points per axis: 4096 in one dimension, scaled down with p so
/// that tensor grids stay at desk scale.
std::size_t default_points_per_axis(std::size_t dim);

/// Worker count for grid sweeps; APSPEC_THREADS overrides hardware_concurrency.
std::size_t worker_count();

inline constexpr std::size_t kChunkPoints = 1u << 14;

/// Mean of fn(index) over the tensor grid with the given per-axis extents.
///
/// The grid is cut into fixed-size chunks in linear-index order; chunk sums
/// are reduced in chunk order, so the result is bitwise identical for any
/// number of workers.
template <class Fn>
Complex grid_mean(std::span<const std::size_t> extents, Summation policy, const Fn& fn) {
  std::size_t total = 1;
  for (auto e : extents) total *= e;
  if (total == 0) return {0.0, 0.0};
  const std::size_t dim = extents.size();
  const std::size_t chunks = (total + kChunkPoints - 1) / kChunkPoints;
  std::vector<Complex> partial(chunks);

  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * kChunkPoints;
    const std::size_t end = std::min(total, begin + kChunkPoints);
    std::vector<std::size_t> idx(dim);
    std::size_t rest = begin;
    for (std::size_t j = dim; j-- > 0;) {
      idx[j] = rest % extents[j];
      rest /= extents[j];
    }
    ComplexAccumulator acc(policy);
    for (std::size_t lin = begin; lin < end; ++lin) {
      acc.add(fn(std::span<const std::size_t>(idx)));
      for (std::size_t j = dim; j-- > 0;) {
        if (++idx[j] < extents[j]) break;
        idx[j] = 0;
      }
    }
    partial[c] = acc.value();
  };

  const std::size_t workers = std::min(worker_count(), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    }
  }

  ComplexAccumulator acc(policy);
  for (const auto& v : partial) acc.add(v);
  return acc.value() / static_cast<double>(total);
}

using AxisNodes = std::vector<Complex>;

/// Samples a FunctionSource on a tensor grid whose axes may be complex.
///
/// Every source in the family is a finite sum of products of one-variable
/// factors, so the sampler tabulates each factor once per axis and a grid
/// value costs dim multiplications per term.
class GridSampler {
 public:
  GridSampler(const FunctionSource& f, std::vector<AxisNodes> axes);

  std::span<const std::size_t> extents() const noexcept { return extents_; }
  std::size_t dim() const noexcept { return extents_.size(); }
  const AxisNodes& axis(std::size_t j) const { return axes_[j]; }

  /// Multiplies the sampled function by w(z_axis), tabulated per node.
  void multiply_axis(std::size_t axis, std::span<const Complex> weights);

  /// Multiplies the sampled function by exp(-i <z, lambda>).
  void demodulate(const Frequency& lambda);

  /// Tensor-grid mean computed as a sum of products of per-axis means. Equal
  /// to grid_mean over the same grid, at O(n p) cost instead of O(n^p).
  Complex separable_mean(Summation policy) const;

  Complex operator()(std::span<const std::size_t> idx) const {
    Complex sum{0.0, 0.0};
    for (const auto& term : terms_) {
      Complex v = term.coeff;
      for (std::size_t j = 0; j < idx.size(); ++j) v *= term.tables[j][idx[j]];
      sum += v;
    }
    return sum;
  }

 private:
  struct SeparableTerm {
    Complex coeff;
    std::vector<std::vector<Complex>> tables;
  };

  std::vector<AxisNodes> axes_;
  std::vector<std::size_t> extents_;
  std::vector<SeparableTerm> terms_;
};

/// Real midpoint axes for the box [-T, T]^dim.
std::vector<AxisNodes> real_box_axes(std::size_t dim, double half_width, std::size_t n);

}  // namespace apspec
