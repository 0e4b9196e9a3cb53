#pragma once

// JSON/CSV formats: trigonometric polynomial specs in, reports out.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "apspec/core.hpp"
#include "apspec/entire.hpp"
#include "apspec/meanvalue.hpp"
#include "apspec/verifier.hpp"

namespace apspec {

/// Malformed input. line/column are 1-based and 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

nlohmann::ordered_json to_json(const TrigPolynomial& p);
TrigPolynomial polynomial_from_json(const nlohmann::json& j);

/// `{"dim": p, "terms": [{"lambda": [...], "re": .., "im": ..}, ...]}`
TrigPolynomial parse_polynomial(std::string_view text);
std::string serialize_polynomial(const TrigPolynomial& p);

/// builtin:sinc<p>[:a], builtin:cos:l1,...,lp, builtin:const[<p>]:re[,im]
FunctionSource parse_builtin(std::string_view spec);

/// A `builtin:` spec, or a path to a polynomial JSON file.
FunctionSource load_source(const std::string& input);

nlohmann::ordered_json to_json(const QuadratureSpec& q);
nlohmann::ordered_json to_json(const LadderSpec& l);
nlohmann::ordered_json to_json(const SeminormEstimate& e);
nlohmann::ordered_json to_json(const SpectrumReport& r);
nlohmann::ordered_json to_json(const TypeEstimate& t);
nlohmann::ordered_json to_json(const InequalityCheck& c);
nlohmann::ordered_json to_json(const StripBoundResult& r);
nlohmann::ordered_json to_json(const ContourDecomposition& d);
nlohmann::ordered_json to_json(const GrowthEnvelope& e);
nlohmann::ordered_json to_json(const VerificationReport& r);

/// lambda_1,...,lambda_p,coeff_re,coeff_im,magnitude
std::string spectrum_csv(const SpectrumReport& r, std::size_t dim);
/// context,lhs,rhs,margin,tolerance,passed
std::string checks_csv(const std::vector<InequalityCheck>& checks);
/// check,lhs,rhs,margin,passed
std::string verification_csv(const VerificationReport& r);

/// Decimal text that parses back to the same double.
std::string format_double(double v);

struct GeneratorSpec {
  std::uint64_t seed = 0;
  std::size_t dim = 1;
  std::size_t terms = 5;
  double radius = 2.0;
  double min_gap = 0.5;
  std::size_t max_retries = 100'000;
};

/// Deterministic random polynomial: frequencies uniform in B(0, radius) with
/// pairwise Chebyshev separation >= min_gap, |c| uniform in [0.1, 1] and a
/// uniform phase. Throws PreconditionError when the packing is infeasible.
TrigPolynomial generate_polynomial(const GeneratorSpec& spec);

/// generate_polynomial for the acceptance corpus: seed i, dim 1 + i % 3,
/// 5 terms, radius 2, gap 0.5.
std::vector<TrigPolynomial> generate_corpus(std::size_t count, std::uint64_t first_seed = 0);

}  // namespace apspec
