#pragma once

// Numerical certification of spectral containment sp f in B(0, sigma) for
// entire functions of exponential type sigma, together with the strip
// estimate and the contour-shift decomposition behind it.

#include <optional>
#include <stdexcept>
#include <vector>

#include "apspec/core.hpp"
#include "apspec/entire.hpp"
#include "apspec/meanvalue.hpp"
#include "apspec/quadrature.hpp"

namespace apspec {

/// C8 = 2^{p+1} (1 + 2 * 3^p * norm).
double strip_constant(std::size_t dim, double norm);

struct LemmaConfig {
  double s0 = 1.0;
  /// T(s0); defaults to max(50, 100 s0) when unset.
  std::optional<double> min_half_width;
  /// Multiplier on the ladder seminorm before it enters C8.
  double norm_safety = 1.1;
  LadderSpec ladder;
  QuadratureSpec norm_quadrature{.half_width = 50.0, .points_per_axis = 4096};

  double threshold_half_width() const;
};

/// Ladder seminorm times the safety factor: the norm that enters C8.
double strip_norm(const FunctionSource& f, const LemmaConfig& config);

struct StripBoundResult {
  double lhs = 0.0;   ///< int_{[-T,T]^p} |f(x1 + is, x')| exp(-s sigma) dx
  double rhs = 0.0;   ///< C8 T^p
  double c8 = 0.0;
  double norm = 0.0;  ///< norm used inside C8
  double s = 0.0;
  double half_width = 0.0;
  double sigma = 0.0;
  double min_half_width = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

StripBoundResult lemma_strip_bound(const FunctionSource& f, double sigma, double s, const QuadratureSpec& q,
                                   const LemmaConfig& config = {});

/// Same, with the C8 norm supplied by the caller (e.g. computed once per
/// function and reused across s and T).
StripBoundResult lemma_strip_bound(const FunctionSource& f, double sigma, double s, const QuadratureSpec& q,
                                   const LemmaConfig& config, double norm);

struct ContourSpec {
  double sigma = 0.0;
  double eta = 1.0;
  double half_width = 50.0;
  double y1 = 1.0;
};

/// Grids for the rectangle edges: x1_points along the real and top edges,
/// s_points along the vertical sides, transverse_points on each of the
/// remaining p-1 axes.
struct ContourGrid {
  std::size_t x1_points = 65536;
  std::size_t transverse_points = 16;
  std::size_t s_points = 2048;
  Summation summation = Summation::compensated;
};

struct ContourDecomposition {
  Complex i0;
  Complex i1;
  Complex i2;
  Complex i3;
  double closure_gap = 0.0;  ///< |I0 - (I1 + I2 - I3)|
  ContourSpec spec;
  ContourGrid grid;
};

/// Integrals of f(z1, x') exp(i (sigma + eta) z1) over the four edges of
/// the rectangle [-T, T] x [0, y1] in the z1 plane, with x' integrated over
/// [-T, T]^{p-1}.
ContourDecomposition contour_decomposition(const FunctionSource& f, const ContourSpec& spec,
                                           const ContourGrid& grid = {});

/// Top-edge integral I2 alone.
Complex top_edge_integral(const FunctionSource& f, const ContourSpec& spec, const ContourGrid& grid = {});

struct I2Decay {
  /// |I2(T, y1)| <= C8 T^p exp(-eta y1), one per y1.
  std::vector<InequalityCheck> bounds;
  /// |I2(y')| / |I2(y)| <= exp(-eta (y' - y)) * 1.05 for successive y1, on
  /// polynomial sources with every lambda_1 >= -sigma. Diagnostic only:
  /// terms decaying at different rates can cancel at y and break it.
  std::vector<InequalityCheck> ratios;
};

I2Decay i2_decay(const FunctionSource& f, double sigma, double eta, double half_width, const RealVector& y1_values,
                 const ContourGrid& grid, double c8);

/// The bound checks of i2_decay.
std::vector<InequalityCheck> i2_decay_check(const FunctionSource& f, double sigma, double eta, double half_width,
                                            const RealVector& y1_values, const ContourGrid& grid, double c8);

struct VerifyConfig {
  RealVector radii{5.0, 10.0, 20.0, 40.0};
  std::size_t n_dirs = 16;

  std::vector<Frequency> candidates;
  /// Optional uniform candidate grid; grid_step enters the tolerance.
  std::optional<RealVector> grid_lower;
  std::optional<RealVector> grid_upper;
  double grid_step = 0.0;
  bool include_source_frequencies = true;

  QuadratureSpec spectrum_quadrature{.half_width = 200.0, .points_per_axis = 65536};
  double threshold = 0.05;
  /// Containment tolerance; when unset, 2 * fit residual + grid step +
  /// kTypeFitAllowance.
  std::optional<double> tol;

  LemmaConfig lemma;
  double lemma_s = 0.5;
  QuadratureSpec lemma_quadrature{.half_width = 50.0, .points_per_axis = 4096};

  double eta = 0.5;
  RealVector y1_values{1.0, 2.0, 4.0, 8.0};
  double i2_half_width = 50.0;
  ContourGrid i2_grid{.x1_points = 8192, .transverse_points = 16, .s_points = 2};
};

/// VerifyConfig tuned to the dimension: grids shrink with p so a corpus run
/// stays within desk-scale budgets.
VerifyConfig default_verify_config(std::size_t dim);

/// Accuracy of the type fit on polynomial sources; part of the default
/// containment tolerance.
inline constexpr double kTypeFitAllowance = 0.05;

struct VerificationReport {
  TypeEstimate type_estimate;
  SpectrumReport spectrum;
  double tol = 0.0;
  double sigma_checked = 0.0;  ///< sigma used for the strip and decay checks
  bool containment = false;
  double max_violation = 0.0;
  std::vector<StripBoundResult> strip_bounds;
  std::vector<InequalityCheck> checks;
  std::vector<InequalityCheck> diagnostics;  ///< reported, not part of the verdict

  bool all_checks_passed() const;
};

/// Recomputes containment and max_violation from the spectrum, the type
/// estimate and tol. An empty spectrum counts as lambda = 0.
void assess_containment(VerificationReport& report);

class VerificationAborted : public std::runtime_error {
 public:
  VerificationAborted(const std::string& what, VerificationReport partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const VerificationReport& partial() const noexcept { return partial_; }

 private:
  VerificationReport partial_;
};

VerificationReport verify_theorem1(const FunctionSource& f, const VerifyConfig& config);

}  // namespace apspec
