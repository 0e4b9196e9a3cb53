#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "apspec/meanvalue.hpp"
#include "apspec/quadrature.hpp"

namespace apspec::cli {

enum class Command { spectrum, type, norm, lemma, contour, verify, envelope, generate };

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// Defaults shared by every command; each report echoes the values it used.
inline constexpr double kDefaultT0 = 50.0;
inline constexpr std::size_t kDefaultLevels = 4;
inline constexpr std::size_t kDefaultTail = 2;
inline constexpr double kDefaultThreshold = 0.05;
inline constexpr double kDefaultSpectrumT = 200.0;
inline constexpr double kDefaultS = 0.5;
inline constexpr double kDefaultEta = 0.5;
inline constexpr double kDefaultY1 = 2.0;
inline constexpr double kDefaultDelta = 0.25;
inline constexpr double kDefaultEnvelopeL = 50.0;
inline constexpr double kDefaultNormTol = 1e-2;
inline constexpr double kDefaultTypeTol = 0.05;
inline constexpr double kDefaultContourTol = 1e-6;
inline constexpr double kDefaultEnvelopeTol = 1e-2;

struct RunConfig {
  Command command = Command::verify;
  std::string input;
  std::string output;  ///< base path; empty writes JSON to stdout

  std::optional<std::size_t> points;
  std::optional<double> half_width;  ///< --T
  double T0 = kDefaultT0;
  std::size_t levels = kDefaultLevels;
  std::size_t tail = kDefaultTail;
  double threshold = kDefaultThreshold;
  std::optional<double> tol;
  Summation summation = Summation::compensated;

  double s = kDefaultS;
  std::optional<double> s0;
  double eta = kDefaultEta;
  std::optional<double> y1;
  double delta = kDefaultDelta;
  double box = kDefaultEnvelopeL;
  std::optional<double> sigma;

  RealVector radii{5.0, 10.0, 20.0, 40.0};
  std::size_t dirs = 16;
  std::string candidates;  ///< "l1,l2;l1,l2;..."
  std::optional<RealVector> grid_lo;
  std::optional<RealVector> grid_hi;
  double grid_step = 0.0;
  std::optional<double> inject;

  std::uint64_t seed = 0;
  std::size_t dim = 1;
  std::size_t terms = 5;
  double radius = 2.0;
  double gap = 0.5;
};

/// Runs one command. Writes <output>.json and <output>.csv (generate writes
/// the polynomial JSON to <output> itself). Diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it; usage errors return kExitUsage.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apspec::cli
