#include "apspec/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace apspec {

using ojson = nlohmann::ordered_json;

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

double parse_number(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ParseError("builtin spec: bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string_view s, std::string_view what) {
  std::vector<double> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(parse_number(s.substr(0, comma), what));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

// "sinc3" -> 3, "sinc" -> 1
std::size_t parse_dim_suffix(std::string_view head, std::string_view stem) {
  const auto digits = head.substr(stem.size());
  if (digits.empty()) return 1;
  std::size_t dim = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), dim);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || dim == 0) {
    throw ParseError("builtin spec: bad dimension in '" + std::string(head) + "'");
  }
  return dim;
}

ojson complex_json(Complex c) { return ojson{{"re", c.real()}, {"im", c.imag()}}; }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// polynomials

ojson to_json(const TrigPolynomial& p) {
  ojson terms = ojson::array();
  for (const auto& t : p.terms()) {
    terms.push_back(ojson{{"lambda", t.frequency}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
  }
  return ojson{{"dim", p.dim()}, {"terms", std::move(terms)}};
}

TrigPolynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ParseError("polynomial: top level must be an object");
    if (!j.contains("dim") || !j.at("dim").is_number_integer() || j.at("dim").get<long long>() < 1) {
      throw ParseError("polynomial: 'dim' must be a positive integer");
    }
    const auto dim = j.at("dim").get<std::size_t>();
    if (!j.contains("terms") || !j.at("terms").is_array()) throw ParseError("polynomial: 'terms' must be an array");
    std::vector<TrigTerm> terms;
    std::size_t index = 0;
    for (const auto& t : j.at("terms")) {
      const std::string where = "polynomial term " + std::to_string(index++);
      if (!t.is_object() || !t.contains("lambda") || !t.at("lambda").is_array()) {
        throw ParseError(where + ": missing 'lambda' array");
      }
      Frequency lambda;
      for (const auto& c : t.at("lambda")) {
        if (!c.is_number()) throw ParseError(where + ": non-numeric frequency component");
        lambda.push_back(c.get<double>());
      }
      if (lambda.size() != dim) {
        throw ParseError(where + ": frequency has " + std::to_string(lambda.size()) + " components, dim is " +
                         std::to_string(dim));
      }
      auto number = [&](const char* key) {
        if (!t.contains(key)) return 0.0;
        if (!t.at(key).is_number()) throw ParseError(where + ": '" + key + "' must be a number");
        return t.at(key).get<double>();
      };
      terms.push_back({std::move(lambda), Complex{number("re"), number("im")}});
    }
    return TrigPolynomial(dim, std::move(terms));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("polynomial: ") + e.what());
  }
}

TrigPolynomial parse_polynomial(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is one past the offending character
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream os;
    os << "malformed JSON at line " << line << ", column " << column << ": " << e.what();
    throw ParseError(os.str(), line, column);
  }
  return polynomial_from_json(j);
}

std::string serialize_polynomial(const TrigPolynomial& p) { return to_json(p).dump(2) + "\n"; }

FunctionSource parse_builtin(std::string_view spec) {
  constexpr std::string_view prefix = "builtin:";
  if (spec.substr(0, prefix.size()) != prefix) throw ParseError("builtin spec must start with 'builtin:'");
  spec.remove_prefix(prefix.size());
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (head.substr(0, 4) == "sinc") {
    const std::size_t dim = parse_dim_suffix(head, "sinc");
    const double scale = args.empty() ? 1.0 : parse_number(args, "sinc scale");
    if (!(scale > 0.0)) throw ParseError("builtin spec: sinc scale must be positive");
    return SincProduct{dim, scale, Complex{1.0, 0.0}};
  }
  if (head == "cos") {
    if (args.empty()) throw ParseError("builtin spec: cos needs a frequency, e.g. builtin:cos:1.0,0.5");
    return Cosine{parse_list(args, "cos frequency")};
  }
  if (head.substr(0, 5) == "const") {
    const std::size_t dim = parse_dim_suffix(head, "const");
    if (args.empty()) return Constant{dim, Complex{1.0, 0.0}};
    const auto parts = parse_list(args, "constant value");
    if (parts.size() > 2) throw ParseError("builtin spec: constant takes re[,im]");
    return Constant{dim, Complex{parts[0], parts.size() == 2 ? parts[1] : 0.0}};
  }
  throw ParseError("builtin spec: unknown catalog entry '" + std::string(head) + "'");
}

FunctionSource load_source(const std::string& input) {
  if (input.rfind("builtin:", 0) == 0) return parse_builtin(input);
  std::ifstream in(input);
  if (!in) throw ParseError("cannot open input file '" + input + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_polynomial(buf.str());
}

// ---------------------------------------------------------------------------
// reports

ojson to_json(const QuadratureSpec& q) {
  return ojson{{"half_width", q.half_width},
               {"points_per_axis", q.points_per_axis},
               {"summation", q.summation == Summation::compensated ? "compensated" : "naive"},
               {"max_points", q.max_points}};
}

ojson to_json(const LadderSpec& l) {
  return ojson{{"base_half_width", l.base_half_width}, {"levels", l.levels}, {"tail", l.tail}};
}

ojson to_json(const SeminormEstimate& e) {
  ojson levels = ojson::array();
  for (const auto& l : e.levels) {
    levels.push_back(ojson{{"half_width", l.half_width}, {"points_per_axis", l.points_per_axis}, {"value", l.value}});
  }
  return ojson{{"value", e.value}, {"tail", e.tail}, {"tail_spread", e.tail_spread()}, {"levels", levels}};
}

ojson to_json(const SpectrumReport& r) {
  ojson entries = ojson::array();
  for (const auto& e : r.entries) {
    entries.push_back(ojson{{"lambda", e.frequency},
                            {"coeff_re", e.coeff.real()},
                            {"coeff_im", e.coeff.imag()},
                            {"magnitude", e.magnitude}});
  }
  return ojson{{"threshold", r.threshold},
               {"error_floor", r.error_floor},
               {"method", r.closed_form ? "closed_form" : "quadrature"},
               {"quadrature", to_json(r.quadrature)},
               {"entries", entries}};
}

ojson to_json(const TypeEstimate& t) {
  return ojson{{"sigma_hat", t.sigma_hat},     {"log_c0_hat", t.log_c0_hat},
               {"radii", t.radii},             {"log_max_modulus", t.log_max_modulus},
               {"directions", t.directions},   {"residual", t.residual},
               {"truncated", t.truncated}};
}

ojson to_json(const InequalityCheck& c) {
  return ojson{{"context", c.context}, {"lhs", c.lhs},         {"rhs", c.rhs},
               {"margin", c.margin},   {"tolerance", c.tolerance}, {"passed", c.passed}};
}

ojson to_json(const StripBoundResult& r) {
  return ojson{{"lhs", r.lhs},
               {"rhs", r.rhs},
               {"C8", r.c8},
               {"norm", r.norm},
               {"s", r.s},
               {"T", r.half_width},
               {"sigma", r.sigma},
               {"T_s0", r.min_half_width},
               {"tolerance", r.tolerance},
               {"passed", r.passed}};
}

ojson to_json(const ContourDecomposition& d) {
  return ojson{{"I0", complex_json(d.i0)},
               {"I1", complex_json(d.i1)},
               {"I2", complex_json(d.i2)},
               {"I3", complex_json(d.i3)},
               {"closure_gap", d.closure_gap},
               {"T", d.spec.half_width},
               {"y1", d.spec.y1},
               {"sigma", d.spec.sigma},
               {"eta", d.spec.eta},
               {"grid",
                ojson{{"x1_points", d.grid.x1_points},
                      {"transverse_points", d.grid.transverse_points},
                      {"s_points", d.grid.s_points}}}};
}

ojson to_json(const GrowthEnvelope& e) {
  return ojson{{"C1_hat", e.c1_hat}, {"argmax", e.argmax}, {"check", to_json(e.check)}};
}

ojson to_json(const VerificationReport& r) {
  ojson strips = ojson::array();
  for (const auto& s : r.strip_bounds) strips.push_back(to_json(s));
  ojson checks = ojson::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  ojson diagnostics = ojson::array();
  for (const auto& c : r.diagnostics) diagnostics.push_back(to_json(c));
  return ojson{{"containment", r.containment},
               {"max_violation", r.max_violation},
               {"tol", r.tol},
               {"sigma_checked", r.sigma_checked},
               {"type_estimate", to_json(r.type_estimate)},
               {"spectrum", to_json(r.spectrum)},
               {"strip_bounds", strips},
               {"checks", checks},
               {"all_checks_passed", r.all_checks_passed()},
               {"diagnostics", diagnostics}};
}

std::string spectrum_csv(const SpectrumReport& r, std::size_t dim) {
  std::ostringstream os;
  for (std::size_t j = 0; j < dim; ++j) os << "lambda_" << j + 1 << ",";
  os << "coeff_re,coeff_im,magnitude\n";
  for (const auto& e : r.entries) {
    for (double c : e.frequency) os << format_double(c) << ",";
    os << format_double(e.coeff.real()) << "," << format_double(e.coeff.imag()) << "," << format_double(e.magnitude)
       << "\n";
  }
  return os.str();
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}
}  // namespace

std::string checks_csv(const std::vector<InequalityCheck>& checks) {
  std::ostringstream os;
  os << "context,lhs,rhs,margin,tolerance,passed\n";
  for (const auto& c : checks) {
    os << csv_field(c.context) << "," << format_double(c.lhs) << "," << format_double(c.rhs) << ","
       << format_double(c.margin) << "," << format_double(c.tolerance) << "," << (c.passed ? "true" : "false")
       << "\n";
  }
  return os.str();
}

std::string verification_csv(const VerificationReport& r) {
  std::ostringstream os;
  os << "check,lhs,rhs,margin,passed\n";
  const double radius = r.type_estimate.sigma_hat + r.tol;
  os << "containment," << format_double(r.max_violation + radius) << "," << format_double(radius) << ","
     << format_double(-r.max_violation) << "," << (r.containment ? "true" : "false") << "\n";
  for (const auto& s : r.strip_bounds) {
    os << csv_field("strip bound s=" + format_double(s.s) + " T=" + format_double(s.half_width)) << ","
       << format_double(s.lhs) << "," << format_double(s.rhs) << "," << format_double(s.rhs - s.lhs) << ","
       << (s.passed ? "true" : "false") << "\n";
  }
  for (const auto& c : r.checks) {
    os << csv_field(c.context) << "," << format_double(c.lhs) << "," << format_double(c.rhs) << ","
       << format_double(c.margin) << "," << (c.passed ? "true" : "false") << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// generator

namespace {

// Uniform in [0, 1) from the top 53 bits; std::uniform_real_distribution is
// implementation-defined and would break cross-platform determinism.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

TrigPolynomial generate_polynomial(const GeneratorSpec& spec) {
  if (spec.dim < 1) throw PreconditionError("generate: dim must be >= 1");
  if (spec.terms > 20) throw PreconditionError("generate: at most 20 terms");
  if (!(spec.radius >= 0.0) || !(spec.min_gap >= 0.0)) throw PreconditionError("generate: negative radius or gap");
  std::mt19937_64 rng(spec.seed);
  std::vector<TrigTerm> terms;
  std::size_t retries = 0;
  while (terms.size() < spec.terms) {
    Frequency lambda(spec.dim);
    for (double& c : lambda) c = spec.radius * (2.0 * unit_uniform(rng) - 1.0);
    bool ok = euclidean_norm(lambda) <= spec.radius;
    for (const auto& t : terms) {
      if (!ok) break;
      double d = 0.0;
      for (std::size_t j = 0; j < spec.dim; ++j) d = std::max(d, std::abs(t.frequency[j] - lambda[j]));
      ok = d >= spec.min_gap;
    }
    if (!ok) {
      if (++retries > spec.max_retries) {
        throw PreconditionError("generate: could not pack the requested frequencies (infeasible gap/radius)");
      }
      continue;
    }
    const double magnitude = 0.1 + 0.9 * unit_uniform(rng);
    const double phase = 2.0 * std::numbers::pi * unit_uniform(rng);
    terms.push_back({std::move(lambda), std::polar(magnitude, phase)});
  }
  return TrigPolynomial(spec.dim, std::move(terms));
}

std::vector<TrigPolynomial> generate_corpus(std::size_t count, std::uint64_t first_seed) {
  std::vector<TrigPolynomial> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t seed = first_seed + i;
    corpus.push_back(generate_polynomial({.seed = seed, .dim = 1 + static_cast<std::size_t>(seed % 3)}));
  }
  return corpus;
}

}  // namespace apspec
