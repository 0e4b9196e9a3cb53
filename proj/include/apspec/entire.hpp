#pragma once

// Growth-side estimates for entire functions of exponential type, and the
// majorant inequalities (sampling bound, Poisson majorant, Phragmen-Lindelof,
// polynomial growth envelope) as numerically checkable records.

#include <string>
#include <vector>

#include "apspec/core.hpp"

namespace apspec {

struct TypeEstimate {
  double sigma_hat = 0.0;
  double log_c0_hat = 0.0;
  RealVector radii;             ///< radii actually used, strictly increasing
  RealVector log_max_modulus;   ///< log M(r) per radius
  std::size_t directions = 0;
  double residual = 0.0;        ///< max |log M(r) - fit| over the fitted radii
  bool truncated = false;       ///< radii dropped by the overflow guard
};

/// Fits log M(r) ~ log C0 + sigma r, M(r) = max_u |f(i r u)|, over the upper
/// half of the radii. Directions: +-e_j, +-lambda/|lambda| for every
/// frequency of a polynomial source, the diagonals for sinc products, then
/// deterministic pseudo-random unit vectors up to n_dirs.
TypeEstimate estimate_type(const FunctionSource& f, const RealVector& radii, std::size_t n_dirs);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  ///< rhs - lhs
  double tolerance = 0.0;
  bool passed = false;  ///< margin >= -tolerance
  std::string context;
};

InequalityCheck make_check(double lhs, double rhs, double tolerance, std::string context);

/// sup |f| over a dense grid on [-L, L]^p against
/// (1 - sigma delta)^{-1} sup |f| over a delta-net of the same box.
InequalityCheck logvinenko_check(const FunctionSource& f, double sigma, double delta, double box_half_width,
                                 std::size_t dense_n);

struct PoissonConfig {
  double s0 = 2.0;                  ///< largest admissible s
  double truncation_factor = 1e4;   ///< require T_int >= truncation_factor * s
  double tail_allowance = 0.69314718055994530942;  // log 2
};

/// log|g(x0 + is)| <= (s/pi) int_{|t|<=T_int} log|g(x0+t)| / (t^2 + s^2) dt
///                    + tail allowance + h s
/// for a one-dimensional source g with indicator h. The tolerance is the
/// difference between the n_int and n_int/2 midpoint sums.
InequalityCheck poisson_majorant_check(const FunctionSource& g, double x0, double s, double truncation,
                                       std::size_t n_int, const PoissonConfig& config = {});

struct SupGrid {
  double half_width = 200.0;
  std::size_t points = 200'001;
};

/// |g(x + iy)| <= sup_R |g| * exp(h y), with the sup sampled on SupGrid.
/// Tolerance covers the sampling gap of the sup via Bernstein's inequality.
InequalityCheck phragmen_lindelof_check(const FunctionSource& g, double x, double y, const SupGrid& grid = {});

struct GrowthEnvelope {
  double c1_hat = 0.0;
  RealVector argmax;
  InequalityCheck check;
};

/// C1_hat = max over an n^p grid on [-L, L]^p (endpoints included) of
/// |f(x)| / prod_j (1 + |x_j|)^p.
GrowthEnvelope growth_envelope_check(const FunctionSource& f, double box_half_width, std::size_t n);

/// Equispaced points on [-L, L] including both endpoints.
RealVector linspace_nodes(double half_width, std::size_t n);

/// Finite-difference slope of log|g(it)| / t near the largest safe t.
double indicator_numeric(const FunctionSource& g, double t_max);

}  // namespace apspec
