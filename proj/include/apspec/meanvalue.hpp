#pragma once

// Box averages over [-T, T]^p: Besicovitch seminorm, Fourier coefficients at
// finite T, and spectrum scanning over candidate frequencies.

#include <vector>

#include "apspec/core.hpp"
#include "apspec/quadrature.hpp"

namespace apspec {

/// T_k = base_half_width * 2^k for k = 0 .. levels-1; the top `tail`
/// levels feed the limsup surrogate.
struct LadderSpec {
  double base_half_width = 50.0;
  std::size_t levels = 4;
  std::size_t tail = 2;

  void validate() const;
  double half_width(std::size_t level) const;
};

struct LadderLevel {
  double half_width;
  std::size_t points_per_axis;
  double value;
};

struct SeminormEstimate {
  double value = 0.0;  ///< max over the top `tail` levels
  std::vector<LadderLevel> levels;
  std::size_t tail = 0;

  /// max - min of the averages over the tail levels.
  double tail_spread() const;
};

/// (1/2T)^p * integral of |f| over [-T, T]^p by the composite midpoint rule.
double box_average_abs(const FunctionSource& f, const QuadratureSpec& q);

/// Ladder estimate of the Besicovitch seminorm. Level k uses
/// q_template.points_per_axis * 2^k points per axis, so the grid step is the
/// same on every level.
SeminormEstimate besicovitch_seminorm(const FunctionSource& f, const LadderSpec& ladder,
                                      const QuadratureSpec& q_template);

/// D_T(u) = sin(uT)/(uT), D_T(0) = 1.
double dirichlet_factor(double u, double half_width);

/// Exact finite-T coefficient (1/2T)^p * integral of P(x) exp(-i<x, lambda>).
Complex fourier_coeff_closed_form(const TrigPolynomial& p, const Frequency& lambda, double half_width);

/// Midpoint-rule approximation of the same average for any source.
Complex fourier_coeff_quadrature(const FunctionSource& f, const Frequency& lambda, const QuadratureSpec& q);

/// Frozen constant of the midpoint error model, see quadrature_error_bound.
inline constexpr double kQuadratureErrorConstant = 0.25;

/// C * B * T^2 (1 + max|lambda|)^2 / n^2, with B a bound on sup |f|.
double quadrature_error_bound(double sup_bound, double half_width, double max_frequency, std::size_t n);

struct SpectrumEntry {
  Frequency frequency;
  Complex coeff;
  double magnitude;
};

struct SpectrumReport {
  std::vector<SpectrumEntry> entries;  ///< sorted by descending magnitude
  double threshold = 0.0;
  double error_floor = 0.0;
  bool closed_form = false;
  QuadratureSpec quadrature;
};

/// Noise floor a detection threshold must exceed: sum|c| / (gap * T) for
/// sources that are trigonometric polynomials, ten times the quadrature
/// error bound otherwise.
double spectrum_error_floor(const FunctionSource& f, const std::vector<Frequency>& candidates,
                            const QuadratureSpec& q);

SpectrumReport spectrum_scan(const FunctionSource& f, const std::vector<Frequency>& candidates,
                             const QuadratureSpec& q, double threshold);

/// Uniform grid lower + k*step inside the box [lower, upper].
std::vector<Frequency> grid_candidates(const RealVector& lower, const RealVector& upper, double step);

struct RotationIdentity {
  Complex lhs;
  Complex rhs;
  double gap;
};

/// a(lambda, P) against a(A^T lambda, P_A), both at finite T in closed form.
RotationIdentity rotation_coefficient_identity_check(const TrigPolynomial& p, const Matrix& a,
                                                     const Frequency& lambda, double half_width);

}  // namespace apspec
