#pragma once

// Function representations for almost periodic functions on R^p that extend
// to entire functions on C^p: generalized trigonometric polynomials plus a
// small closed catalog of analytic built-ins.

#include <complex>
#include <optional>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace apspec {

using Complex = std::complex<double>;
using RealVector = std::vector<double>;
using Frequency = RealVector;
using Matrix = Eigen::MatrixXd;

/// Raised when |<y, lambda>| of some term exceeds the overflow guard.
class OverflowGuardError : public std::range_error {
 public:
  OverflowGuardError(const std::string& what, std::size_t term, double exponent)
      : std::range_error(what), term_(term), exponent_(exponent) {}
  std::size_t term() const noexcept { return term_; }
  double exponent() const noexcept { return exponent_; }

 private:
  std::size_t term_;
  double exponent_;
};

/// Raised when a quadrature grid would exceed the configured point budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation's stated precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kOverflowGuard = 700.0;
inline constexpr double kMergeTolerance = 1e-12;
inline constexpr double kSincSeriesRadius = 1e-4;
inline constexpr double kOrthogonalityTolerance = 1e-10;

struct TrigTerm {
  Frequency frequency;
  Complex coeff;
};

/// P(x) = sum_n c_n exp(i <x, lambda_n>).
///
/// Terms keep insertion order. Frequencies that agree to within
/// kMergeTolerance in every coordinate are merged into the first occurrence
/// by summing coefficients, so the polynomial never carries the same
/// frequency twice.
class TrigPolynomial {
 public:
  explicit TrigPolynomial(std::size_t dim, std::vector<TrigTerm> terms = {});

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<TrigTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// sum_n |c_n|; serves as C_0 in |P(z)| <= C_0 exp(type |z|).
  double coefficient_l1() const;

  /// Smallest Chebyshev distance between two frequencies (infinity when
  /// there are fewer than two terms).
  double min_frequency_gap() const;

 private:
  std::size_t dim_;
  std::vector<TrigTerm> terms_;
};

/// amplitude * prod_j sin(a z_j) / (a z_j).
struct SincProduct {
  std::size_t dim = 1;
  double scale = 1.0;
  Complex amplitude{1.0, 0.0};
};

/// cos <x, lambda>.
struct Cosine {
  Frequency frequency;
};

struct Constant {
  std::size_t dim = 1;
  Complex value{1.0, 0.0};
};

/// A function we can evaluate on R^p and on C^p in closed form.
class FunctionSource {
 public:
  using Variant = std::variant<TrigPolynomial, SincProduct, Cosine, Constant>;

  FunctionSource(TrigPolynomial poly);  // NOLINT: implicit on purpose
  FunctionSource(SincProduct sinc);     // NOLINT
  FunctionSource(Cosine cosine);        // NOLINT
  FunctionSource(Constant constant);    // NOLINT

  std::size_t dim() const noexcept { return dim_; }
  const Variant& variant() const noexcept { return variant_; }

  /// Exponential type, known analytically for every member of the family.
  double declared_type() const;

  /// The trigonometric polynomial this source equals, when it is one
  /// (polynomials, cosines and constants).
  std::optional<TrigPolynomial> as_polynomial() const;

  /// sup over R^p of |f|, or a closed-form upper bound for it.
  double sup_bound() const;

  std::string describe() const;

 private:
  Variant variant_;
  std::size_t dim_;
};

struct ComplexPoint {
  RealVector re;
  RealVector im;

  std::size_t dim() const noexcept { return re.size(); }
  static ComplexPoint real(RealVector x);
};

Complex eval_real(const FunctionSource& f, std::span<const double> x);
Complex eval_complex(const FunctionSource& f, const ComplexPoint& z);

Complex eval_real(const TrigPolynomial& p, std::span<const double> x);
Complex eval_complex(const TrigPolynomial& p, const ComplexPoint& z);

/// max_n |lambda_n| over terms with nonzero coefficient; 0 for the zero and
/// the constant polynomial.
double exact_type(const TrigPolynomial& p);

/// f_A(x) = f(A x): every frequency lambda becomes A^T lambda.
TrigPolynomial rotate(const TrigPolynomial& p, const Matrix& a);

/// sin(u)/u with the removable singularity at 0 filled by a Taylor series.
Complex sinc(Complex u);
double sinc(double u);

/// f(z) * prod_j (sin z_j / z_j)^power.
Complex sinc_multiplier(const FunctionSource& f, const ComplexPoint& z, int power);

/// w -> f(w, x_2, ..., x_p) as a one-dimensional source.
FunctionSource restrict_to_first_axis(const FunctionSource& f, std::span<const double> transverse);

/// Phragmen-Lindelof indicator limsup_{t->+inf} log|g(it)|/t of a
/// one-dimensional source, computed from its closed form. Returns 0 for the
/// zero function.
double upper_indicator(const FunctionSource& g);

double euclidean_norm(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace apspec
