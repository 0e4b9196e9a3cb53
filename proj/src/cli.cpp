#include "apspec/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "apspec/entire.hpp"
#include "apspec/io.hpp"
#include "apspec/verifier.hpp"

namespace apspec::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Outcome {
  ojson result;
  std::string csv;
  bool passed = true;
};

const char* command_name(Command c) {
  switch (c) {
    case Command::spectrum: return "spectrum";
    case Command::type: return "type";
    case Command::norm: return "norm";
    case Command::lemma: return "lemma";
    case Command::contour: return "contour";
    case Command::verify: return "verify";
    case Command::envelope: return "envelope";
    case Command::generate: return "generate";
  }
  return "?";
}

RealVector broadcast(const RealVector& v, std::size_t dim, const char* what) {
  if (v.size() == dim) return v;
  if (v.size() == 1) return RealVector(dim, v[0]);
  throw std::invalid_argument(std::string(what) + ": expected 1 or " + std::to_string(dim) + " values");
}

std::vector<Frequency> parse_candidates(const std::string& text, std::size_t dim) {
  std::vector<Frequency> out;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    if (row.empty()) continue;
    Frequency lambda;
    std::stringstream cols(row);
    std::string col;
    while (std::getline(cols, col, ',')) {
      std::size_t pos = 0;
      lambda.push_back(std::stod(col, &pos));
      if (pos != col.size()) throw std::invalid_argument("candidates: bad number '" + col + "'");
    }
    if (lambda.size() != dim) throw std::invalid_argument("candidates: dimension mismatch in '" + row + "'");
    out.push_back(std::move(lambda));
  }
  return out;
}

// Explicit list, optional grid, and the source's own frequencies; a default
// grid around the declared type when nothing else applies.
std::vector<Frequency> build_candidates(const RunConfig& c, const FunctionSource& f, double& step) {
  std::vector<Frequency> out = parse_candidates(c.candidates, f.dim());
  step = 0.0;
  if (c.grid_lo || c.grid_hi) {
    if (!(c.grid_lo && c.grid_hi && c.grid_step > 0.0)) {
      throw std::invalid_argument("candidate grid needs --grid-lo, --grid-hi and --grid-step");
    }
    auto grid = grid_candidates(broadcast(*c.grid_lo, f.dim(), "--grid-lo"),
                                broadcast(*c.grid_hi, f.dim(), "--grid-hi"), c.grid_step);
    out.insert(out.end(), grid.begin(), grid.end());
    step = c.grid_step;
  }
  if (const auto poly = f.as_polynomial()) {
    for (const auto& t : poly->terms()) out.push_back(t.frequency);
  }
  if (out.empty()) {
    const double edge = f.declared_type() + 0.5;
    step = 0.25;
    out = grid_candidates(RealVector(f.dim(), -edge), RealVector(f.dim(), edge), step);
  }
  return out;
}

QuadratureSpec quadrature(const RunConfig& c, std::size_t dim, double half_width, std::size_t points) {
  QuadratureSpec q;
  q.half_width = c.half_width.value_or(half_width);
  q.points_per_axis = c.points.value_or(points);
  q.summation = c.summation;
  return q;
}

ojson echo_config(const RunConfig& c) {
  ojson j{{"T0", c.T0},       {"levels", c.levels}, {"tail", c.tail},   {"threshold", c.threshold},
          {"s", c.s},         {"eta", c.eta},       {"delta", c.delta}, {"L", c.box},
          {"radii", c.radii}, {"dirs", c.dirs},     {"seed", c.seed}};
  j["tol"] = c.tol ? ojson(*c.tol) : ojson(nullptr);
  j["points"] = c.points ? ojson(*c.points) : ojson(nullptr);
  j["T"] = c.half_width ? ojson(*c.half_width) : ojson(nullptr);
  j["y1"] = c.y1 ? ojson(*c.y1) : ojson(nullptr);
  j["max_points"] = default_point_budget();
  return j;
}

Outcome run_spectrum(const RunConfig& c, const FunctionSource& f) {
  double step = 0.0;
  const auto candidates = build_candidates(c, f, step);
  const bool closed = f.as_polynomial().has_value();
  const auto q = quadrature(c, f.dim(), kDefaultSpectrumT, closed ? default_points_per_axis(f.dim()) : 65536);
  const auto report = spectrum_scan(f, candidates, q, c.threshold);
  Outcome o;
  o.result = to_json(report);
  o.result["candidates"] = candidates.size();
  o.csv = spectrum_csv(report, f.dim());
  o.passed = !report.entries.empty();
  return o;
}

Outcome run_type(const RunConfig& c, const FunctionSource& f) {
  const auto est = estimate_type(f, c.radii, std::max(c.dirs, 2 * f.dim()));
  const double tol = c.tol.value_or(kDefaultTypeTol);
  const auto check = make_check(est.residual, tol, 0.0, "type fit residual");
  Outcome o;
  o.result = to_json(est);
  o.result["declared_type"] = f.declared_type();
  o.result["check"] = to_json(check);
  o.csv = checks_csv({check});
  o.passed = check.passed;
  return o;
}

Outcome run_norm(const RunConfig& c, const FunctionSource& f) {
  const LadderSpec ladder{c.T0, c.levels, c.tail};
  const auto q = quadrature(c, f.dim(), c.T0, default_points_per_axis(f.dim()));
  const auto est = besicovitch_seminorm(f, ladder, q);
  const double tol = c.tol.value_or(kDefaultNormTol);
  const auto check = make_check(est.tail_spread(), tol, 0.0, "ladder convergence (tail spread)");
  Outcome o;
  o.result = to_json(est);
  o.result["ladder"] = to_json(ladder);
  o.result["quadrature_template"] = to_json(q);
  o.result["check"] = to_json(check);
  std::ostringstream csv;
  csv << "level,half_width,points_per_axis,value\n";
  for (std::size_t k = 0; k < est.levels.size(); ++k) {
    csv << k << "," << format_double(est.levels[k].half_width) << "," << est.levels[k].points_per_axis << ","
        << format_double(est.levels[k].value) << "\n";
  }
  o.csv = csv.str();
  o.passed = check.passed;
  return o;
}

StripBoundResult strip_for(const RunConfig& c, const FunctionSource& f, double sigma, LemmaConfig& lemma) {
  lemma.s0 = c.s0.value_or(std::max(c.s, 1.0));
  lemma.ladder = {c.T0, c.levels, c.tail};
  lemma.norm_quadrature = quadrature(RunConfig{}, f.dim(), c.T0, default_points_per_axis(f.dim()));
  const auto q = quadrature(c, f.dim(), lemma.threshold_half_width(), default_points_per_axis(f.dim()));
  return lemma_strip_bound(f, sigma, c.s, q, lemma);
}

Outcome run_lemma(const RunConfig& c, const FunctionSource& f) {
  LemmaConfig lemma;
  const auto r = strip_for(c, f, c.sigma.value_or(f.declared_type()), lemma);
  Outcome o;
  o.result = to_json(r);
  o.result["s0"] = lemma.s0;
  o.result["norm_safety"] = lemma.norm_safety;
  o.csv = checks_csv({make_check(r.lhs, r.rhs, r.tolerance, "strip bound")});
  o.passed = r.passed;
  return o;
}

Outcome run_contour(const RunConfig& c, const FunctionSource& f) {
  ContourSpec spec;
  spec.sigma = c.sigma.value_or(f.declared_type());
  spec.eta = c.eta;
  spec.half_width = c.half_width.value_or(kDefaultT0);
  spec.y1 = c.y1.value_or(kDefaultY1);
  ContourGrid grid;
  grid.x1_points = c.points.value_or(65536);
  grid.s_points = 4096;
  grid.summation = c.summation;
  const auto d = contour_decomposition(f, spec, grid);
  const double tol = c.tol.value_or(kDefaultContourTol);
  const auto check = make_check(d.closure_gap, tol, 0.0, "contour closure gap");
  Outcome o;
  o.result = to_json(d);
  o.result["check"] = to_json(check);
  o.csv = checks_csv({check});
  o.passed = check.passed;
  return o;
}

Outcome run_verify(const RunConfig& c, const FunctionSource& f) {
  VerifyConfig v = default_verify_config(f.dim());
  v.radii = c.radii;
  v.n_dirs = c.dirs;
  v.candidates = parse_candidates(c.candidates, f.dim());
  if (c.grid_lo || c.grid_hi) {
    if (!(c.grid_lo && c.grid_hi && c.grid_step > 0.0)) {
      throw std::invalid_argument("candidate grid needs --grid-lo, --grid-hi and --grid-step");
    }
    v.grid_lower = broadcast(*c.grid_lo, f.dim(), "--grid-lo");
    v.grid_upper = broadcast(*c.grid_hi, f.dim(), "--grid-hi");
    v.grid_step = c.grid_step;
  }
  v.threshold = c.threshold;
  v.tol = c.tol;
  if (c.half_width) v.spectrum_quadrature.half_width = *c.half_width;
  if (c.points) v.spectrum_quadrature.points_per_axis = *c.points;
  v.spectrum_quadrature.summation = c.summation;
  v.lemma_s = c.s;
  v.lemma.s0 = c.s0.value_or(c.s);
  v.lemma_quadrature.half_width = std::max(v.lemma_quadrature.half_width, v.lemma.threshold_half_width());
  v.eta = c.eta;
  if (c.y1) v.y1_values = {*c.y1};

  auto report = verify_theorem1(f, v);
  ojson injected = nullptr;
  if (c.inject) {
    // detector negative control: a synthetic entry outside the certified ball
    Frequency lambda(f.dim(), 0.0);
    lambda[0] = report.type_estimate.sigma_hat + *c.inject;
    report.spectrum.entries.insert(report.spectrum.entries.begin(),
                                   SpectrumEntry{lambda, Complex{c.threshold, 0.0}, c.threshold});
    assess_containment(report);
    injected = lambda;
  }
  Outcome o;
  o.result = to_json(report);
  o.result["injected"] = injected;
  o.result["lemma_s0"] = v.lemma.s0;
  o.csv = verification_csv(report);
  o.passed = report.containment && report.all_checks_passed();
  return o;
}

Outcome run_envelope(const RunConfig& c, const FunctionSource& f) {
  std::size_t n = c.points.value_or(f.dim() == 1 ? 4001 : f.dim() == 2 ? 401 : 61);
  const auto small = growth_envelope_check(f, c.box, n);
  const auto large = growth_envelope_check(f, 2.0 * c.box, 2 * n - 1);
  const double tol = c.tol.value_or(kDefaultEnvelopeTol);
  const double change = small.c1_hat > 0.0 ? std::abs(large.c1_hat - small.c1_hat) / small.c1_hat : 0.0;
  const auto stability = make_check(change, tol, 0.0, "C1_hat relative change L -> 2L");
  Outcome o;
  o.result = ojson{{"L", to_json(small)}, {"2L", to_json(large)}, {"stability", to_json(stability)}};
  o.csv = checks_csv({small.check, large.check, stability});
  o.passed = small.check.passed && large.check.passed && stability.passed;
  return o;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::string output_base(const std::string& output) {
  constexpr std::string_view ext = ".json";
  if (output.size() > ext.size() && output.compare(output.size() - ext.size(), ext.size(), ext) == 0) {
    return output.substr(0, output.size() - ext.size());
  }
  return output;
}

int run_generate(const RunConfig& c, std::ostream& out) {
  const auto p = generate_polynomial(
      {.seed = c.seed, .dim = c.dim, .terms = c.terms, .radius = c.radius, .min_gap = c.gap});
  const std::string text = serialize_polynomial(p);
  if (c.output.empty()) {
    out << text;
  } else {
    write_file(c.output, text);
  }
  return kExitPass;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.tol && !(*c.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
    if (c.command == Command::generate) return run_generate(c, out);
    if (c.input.empty()) throw std::invalid_argument("--input is required");
    const FunctionSource f = load_source(c.input);

    Outcome o;
    switch (c.command) {
      case Command::spectrum: o = run_spectrum(c, f); break;
      case Command::type: o = run_type(c, f); break;
      case Command::norm: o = run_norm(c, f); break;
      case Command::lemma: o = run_lemma(c, f); break;
      case Command::contour: o = run_contour(c, f); break;
      case Command::verify: o = run_verify(c, f); break;
      case Command::envelope: o = run_envelope(c, f); break;
      case Command::generate: break;
    }
    ojson report{{"command", command_name(c.command)},
                 {"input", c.input},
                 {"source", f.describe()},
                 {"dim", f.dim()},
                 {"passed", o.passed},
                 {"config", echo_config(c)},
                 {"result", std::move(o.result)}};
    const std::string json_text = report.dump(2) + "\n";
    if (c.output.empty()) {
      out << json_text;
    } else {
      const std::string base = output_base(c.output);
      write_file(base + ".json", json_text);
      write_file(base + ".csv", o.csv);
    }
    if (!o.passed) err << command_name(c.command) << ": check failed\n";
    return o.passed ? kExitPass : kExitCheckFailed;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const VerificationAborted& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"apspec: spectra of almost periodic entire functions of exponential type"};
  app.require_subcommand(1);
  RunConfig c;
  std::vector<double> grid_lo, grid_hi;
  std::size_t points = 0;
  double half_width = 0.0, tol = 0.0, s0 = 0.0, y1 = 0.0, sigma = 0.0, inject = 0.0;
  std::string summation = "compensated";

  struct Sub {
    Command command;
    const char* description;
  };
  const Sub subs[] = {
      {Command::spectrum, "scan candidate frequencies for nonzero mean-value coefficients"},
      {Command::type, "estimate the exponential type from growth along imaginary directions"},
      {Command::norm, "Besicovitch seminorm by a ladder of box averages"},
      {Command::lemma, "strip integral bound with C8 = 2^{p+1}(1 + 2 3^p |f|_B)"},
      {Command::contour, "rectangle contour decomposition I0 = I1 + I2 - I3"},
      {Command::verify, "certify that the detected spectrum lies in the ball of the estimated type"},
      {Command::envelope, "polynomial growth envelope C1 on the real space"},
  };
  std::vector<std::pair<CLI::App*, Command>> commands;
  for (const auto& sub : subs) {
    CLI::App* cmd = app.add_subcommand(command_name(sub.command), sub.description);
    commands.emplace_back(cmd, sub.command);
    cmd->add_option("--input,-i", c.input, "polynomial JSON file or builtin:<spec>")->required();
    cmd->add_option("--output,-o", c.output, "report base path (writes .json and .csv)");
    cmd->add_option("--T0", c.T0, "ladder base half width");
    cmd->add_option("--levels", c.levels, "ladder levels K");
    cmd->add_option("--tail", c.tail, "ladder levels feeding the limsup");
    cmd->add_option("--points", points, "quadrature points per axis");
    cmd->add_option("--T", half_width, "box half width");
    cmd->add_option("--threshold", c.threshold, "spectrum detection threshold");
    cmd->add_option("--tol", tol, "tolerance of the command's check");
    cmd->add_option("--s", c.s, "strip height s");
    cmd->add_option("--s0", s0, "largest admissible s (T(s0) = max(50, 100 s0))");
    cmd->add_option("--eta", c.eta, "distance of the test frequency beyond sigma");
    cmd->add_option("--y1", y1, "height of the contour rectangle");
    cmd->add_option("--delta", c.delta, "net spacing");
    cmd->add_option("--L", c.box, "envelope box half width");
    cmd->add_option("--sigma", sigma, "exponential type to assume (default: the source's declared type)");
    cmd->add_option("--radii", c.radii, "radii for the type fit")->delimiter(',');
    cmd->add_option("--dirs", c.dirs, "number of imaginary directions");
    cmd->add_option("--candidates", c.candidates, "explicit candidates 'l1,l2;l1,l2'");
    cmd->add_option("--grid-lo", grid_lo, "candidate grid lower corner")->delimiter(',');
    cmd->add_option("--grid-hi", grid_hi, "candidate grid upper corner")->delimiter(',');
    cmd->add_option("--grid-step", c.grid_step, "candidate grid step");
    cmd->add_option("--inject", inject, "inject a synthetic entry at |lambda| = sigma_hat + value");
    cmd->add_option("--summation", summation, "compensated | naive")->check(CLI::IsMember({"compensated", "naive"}));
    cmd->add_option("--seed", c.seed, "seed (unused by analysis commands)");
  }
  CLI::App* gen = app.add_subcommand("generate", "write a deterministic random trigonometric polynomial");
  gen->add_option("--seed", c.seed, "generator seed");
  gen->add_option("--dim", c.dim, "dimension p");
  gen->add_option("--terms", c.terms, "number of terms (<= 20)");
  gen->add_option("--radius", c.radius, "frequency ball radius");
  gen->add_option("--gap", c.gap, "minimal Chebyshev gap between frequencies");
  gen->add_option("--output,-o", c.output, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  c.command = Command::generate;
  for (const auto& [cmd, command] : commands) {
    if (cmd->parsed()) {
      c.command = command;
      if (cmd->count("--points")) c.points = points;
      if (cmd->count("--T")) c.half_width = half_width;
      if (cmd->count("--tol")) c.tol = tol;
      if (cmd->count("--s0")) c.s0 = s0;
      if (cmd->count("--y1")) c.y1 = y1;
      if (cmd->count("--sigma")) c.sigma = sigma;
      if (cmd->count("--inject")) c.inject = inject;
      if (cmd->count("--grid-lo")) c.grid_lo = grid_lo;
      if (cmd->count("--grid-hi")) c.grid_hi = grid_hi;
    }
  }
  c.summation = summation == "naive" ? Summation::naive : Summation::compensated;
  return run(c, out, err);
}

}  // namespace apspec::cli
