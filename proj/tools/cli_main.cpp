// Command-line front end: computes weight-class constants and summation
// counterparts, runs the inequality verification suites, explores the
// envelope machinery (implicit functions, enlargement roots, concavity
// scans, vertex curves, extremal oracle), sweeps generated weights for the
// entropy/flatness ratio, and generates weight files.
//
// Exit codes: 0 success, 1 failed assertion, 2 invalid input/usage.
// Outputs are deterministic for a fixed configuration and seed.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dyw/bellman.hpp"
#include "dyw/constants.hpp"
#include "dyw/convexity.hpp"
#include "dyw/dyadic.hpp"
#include "dyw/generate.hpp"
#include "dyw/report.hpp"
#include "dyw/summation.hpp"
#include "dyw/verify.hpp"

namespace {

std::string jnum(double v) { return dyw::format_double(v); }

std::string jnum_or_null(double v) {
  return std::isfinite(v) ? dyw::format_double(v) : std::string("null");
}

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string jbool(bool b) { return b ? "true" : "false"; }

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + output_path);
  out << text << "\n";
  if (!out.good()) throw std::runtime_error("write failure on " + output_path);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    std::string token = s.substr(pos, end - pos);
    if (!token.empty()) out.push_back(token);
    pos = end + 1;
  }
  return out;
}

dyw::FunctionFamily parse_family(const std::string& token) {
  const std::size_t colon = token.find(':');
  const std::string head = token.substr(0, colon);
  const auto param = [&]() {
    if (colon == std::string::npos)
      throw std::invalid_argument("family \"" + head + "\" needs :p");
    return std::stod(token.substr(colon + 1));
  };
  if (head == "power") return dyw::FunctionFamily::power(param());
  if (head == "xlogx") return dyw::FunctionFamily::xlogx();
  if (head == "negpower") return dyw::FunctionFamily::negpower(param());
  if (head == "log") return dyw::FunctionFamily::neglog();
  throw std::invalid_argument("unknown family \"" + token +
                              "\" (power:p, xlogx, negpower:p, log)");
}

struct Moments {
  double x = 1.0;  // <w> at the root
  double y = 0.0;  // <log w> at the root
  double entropy = 0.0;  // <w log w> at the root
};

Moments root_moments(const dyw::DyadicWeight& w) {
  Moments m;
  m.x = w.average(dyw::DyadicWeight::root());
  const auto logs =
      dyw::profile_averages(w, [](double v) { return std::log(v); });
  const auto wlogs =
      dyw::profile_averages(w, [](double v) { return v * std::log(v); });
  m.y = logs[1];
  m.entropy = wlogs[1];
  return m;
}

dyw::Q0Mode parse_mode(const std::string& mode) {
  if (mode == "direct") return dyw::Q0Mode::direct;
  if (mode == "paper") return dyw::Q0Mode::scalar;
  throw std::invalid_argument("mode must be direct or paper");
}

// ---------------------------------------------------------------- commands

int run_constants(const std::string& input, const std::string& kinds_csv,
                  double p, const std::string& output) {
  const dyw::DyadicWeight w = dyw::read_weight(input);
  std::vector<dyw::ConstantKind> kinds;
  if (kinds_csv.empty()) {
    kinds = {dyw::ConstantKind::ap(p),
             dyw::ConstantKind::ainf(),
             dyw::ConstantKind::rhp(p),
             dyw::ConstantKind::rh1(),
             dyw::ConstantKind::rh1_via_maximal(),
             dyw::ConstantKind::rh1_via_luxemburg()};
    if (w.depth() >= 1) {
      kinds.push_back(dyw::ConstantKind::weak_rhp(p));
      kinds.push_back(dyw::ConstantKind::weak_rh1());
      kinds.push_back(dyw::ConstantKind::weak_rh1_via_luxemburg());
    }
  } else {
    for (const std::string& name : split_csv(kinds_csv))
      kinds.push_back(dyw::parse_kind(name, p));
  }
  std::string text = "[";
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const dyw::ConstantResult r = dyw::weight_constant(w, kinds[i]);
    if (i) text += ',';
    text += "{\"kind\":" + jstr(dyw::kind_name(kinds[i])) +
            ",\"value\":" + jnum(r.value) + ",\"argmax_interval\":[" +
            std::to_string(r.argmax.level) + ',' +
            std::to_string(r.argmax.index) + "]}";
  }
  text += "]";
  emit(text, output);
  return 0;
}

int run_sums(const std::string& input, double p, const std::string& family,
             const std::string& output) {
  const dyw::DyadicWeight w = dyw::read_weight(input);
  const dyw::FunctionFamily fam = parse_family(family);
  std::string text = "{\"constants\":{";
  {
    std::vector<dyw::BuckleyKind> kinds = {dyw::BuckleyKind::ap(p),
                                           dyw::BuckleyKind::ainf(),
                                           dyw::BuckleyKind::rhp(p)};
    if (w.depth() >= 1) kinds.push_back(dyw::BuckleyKind::weak_rhp(p));
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      const dyw::BuckleyResult r = dyw::buckley_constant(w, kinds[i]);
      if (i) text += ',';
      text += jstr(dyw::buckley_name(kinds[i])) + ":" + jnum(r.value);
    }
  }
  const dyw::RepresentationCheck rep =
      dyw::representation_check(w, fam, dyw::DyadicWeight::root());
  text += "},\"representation\":{\"family\":" + jstr(fam.name()) +
          ",\"sum\":" + jnum(rep.sum) + ",\"gap\":" + jnum(rep.gap) +
          ",\"ratio\":" + jnum(rep.ratio) +
          ",\"bound_upper\":" + jnum(rep.bound_upper) +
          ",\"bound_lower\":" + jnum(rep.bound_lower) +
          ",\"doubling_exempt\":" + jbool(rep.doubling_exempt) +
          ",\"cap\":" + jnum_or_null(rep.cap) + "}}";
  emit(text, output);
  return 0;
}

int run_verify(const std::string& input, double p, double tol,
               const std::string& output) {
  const dyw::DyadicWeight w = dyw::read_weight(input);
  dyw::VerifyOptions opt;
  opt.p = p;
  opt.tol = tol;
  const std::vector<dyw::SuiteResult> suites = dyw::verify_weight(w, opt);
  const bool pass = dyw::all_mandatory_pass(suites);
  std::string text = "{\"pass\":" + jbool(pass) + ",\"suites\":[";
  for (std::size_t i = 0; i < suites.size(); ++i) {
    const dyw::SuiteResult& s = suites[i];
    if (i) text += ',';
    text += "{\"name\":" + jstr(s.name) + ",\"pass\":" + jbool(s.pass) +
            ",\"informational\":" + jbool(s.informational) +
            ",\"max_violation\":" + jnum_or_null(s.max_violation) +
            ",\"detail\":" + jstr(s.detail) + "}";
  }
  text += "]}";
  emit(text, output);
  return pass ? 0 : 1;
}

int run_bellman_eval(const std::string& input, double x, double y, double q,
                     const std::string& mode, double tol,
                     const std::string& output) {
  const dyw::Q0Result q0 = dyw::solve_q0(q, parse_mode(mode));
  if (!input.empty()) {
    const dyw::DyadicWeight w = dyw::read_weight(input);
    const Moments m = root_moments(w);
    const double value = dyw::bellman_value({m.x, m.y}, q0.q0);
    const bool pass =
        m.entropy <= value + tol * std::max(1.0, std::abs(value));
    const std::string text =
        "{\"x\":" + jnum(m.x) + ",\"y\":" + jnum(m.y) + ",\"Q\":" + jnum(q) +
        ",\"Q0\":" + jnum(q0.q0) + ",\"mode\":" + jstr(mode) +
        ",\"value\":" + jnum(value) + ",\"entropy\":" + jnum(m.entropy) +
        ",\"pass\":" + jbool(pass) + "}";
    emit(text, output);
    return pass ? 0 : 1;
  }
  const double value = dyw::bellman_value({x, y}, q0.q0);
  const std::string text = "{\"x\":" + jnum(x) + ",\"y\":" + jnum(y) +
                           ",\"Q\":" + jnum(q) + ",\"Q0\":" + jnum(q0.q0) +
                           ",\"mode\":" + jstr(mode) +
                           ",\"value\":" + jnum(value) + "}";
  emit(text, output);
  return 0;
}

int run_bellman_q0(double q, const std::string& mode,
                   const std::string& output) {
  const dyw::Q0Result direct = dyw::solve_q0(q, dyw::Q0Mode::direct);
  const dyw::Q0Result scalar = dyw::solve_q0(q, dyw::Q0Mode::scalar);
  const dyw::Q0Result& chosen =
      parse_mode(mode) == dyw::Q0Mode::direct ? direct : scalar;
  const double discrepancy =
      std::abs(direct.q0 - scalar.q0) / std::max(1.0, chosen.q0);
  const std::string text =
      "{\"Q\":" + jnum(q) + ",\"mode\":" + jstr(mode) +
      ",\"Q0\":" + jnum(chosen.q0) + ",\"residual\":" + jnum(chosen.residual) +
      ",\"Q0_direct\":" + jnum(direct.q0) + ",\"Q0_paper\":" + jnum(scalar.q0) +
      ",\"discrepancy\":" + jnum(discrepancy) + "}";
  emit(text, output);
  return 0;
}

int run_bellman_scan(double q, std::uint64_t samples, std::uint64_t seed,
                     double tol, const std::string& output) {
  const dyw::Q0Result direct = dyw::solve_q0(q, dyw::Q0Mode::direct);
  const dyw::Q0Result scalar = dyw::solve_q0(q, dyw::Q0Mode::scalar);
  const dyw::ScanResult scan = dyw::concavity_scan(q, direct.q0, samples, seed);
  const std::string text =
      "{\"Q\":" + jnum(q) + ",\"Q0_direct\":" + jnum(direct.q0) +
      ",\"Q0_paper\":" + jnum(scalar.q0) +
      ",\"min_deficit\":" + jnum(scan.min_deficit) +
      ",\"samples\":" + std::to_string(scan.samples) +
      ",\"seed\":" + std::to_string(scan.seed) + "}";
  emit(text, output);
  return scan.min_deficit >= -tol ? 0 : 1;
}

int run_bellman_vertices(double q, std::optional<double> alpha_opt, int n,
                         const std::string& output) {
  const dyw::Q0Result q0 = dyw::solve_q0(q, dyw::Q0Mode::direct);
  const double log_q0 = std::log(q0.q0);
  const double alpha =
      alpha_opt ? *alpha_opt : std::max(0.0, log_q0 - 0.5 * std::log(q));
  const dyw::RegionScan region = dyw::delta_region_scan(q, q0.q0, alpha, n);
  const auto curve = [&](dyw::VertexKind kind, double xmax) {
    std::string out = "[";
    const int pts = 33;
    for (int i = 0; i < pts; ++i) {
      const double x = 1.0 + (xmax - 1.0) * i / (pts - 1);
      if (i) out += ',';
      out += "[" + jnum(x) + ',' +
             jnum(dyw::vertex_delta(kind, x, q, q0.q0)) + ']';
    }
    return out + "]";
  };
  const double x_sym = 1.0 + std::sqrt(std::max(0.0, 1.0 - 1.0 / (q * q)));
  const double x_mix = 1.0 + std::sqrt(std::max(0.0, 1.0 - 1.0 / q));
  const std::string text =
      "{\"Q\":" + jnum(q) + ",\"Q0\":" + jnum(q0.q0) +
      ",\"alpha\":" + jnum(alpha) +
      ",\"region\":{\"grid_min\":" + jnum(region.grid_min) +
      ",\"vertex_symmetric\":" + jnum(region.vertex_symmetric) +
      ",\"vertex_mixed\":" + jnum_or_null(region.vertex_mixed) +
      ",\"has_mixed\":" + jbool(region.has_mixed) +
      ",\"match\":" + jbool(region.match) +
      "},\"symmetric\":" + curve(dyw::VertexKind::symmetric, x_sym) +
      ",\"mixed\":" + curve(dyw::VertexKind::mixed, x_mix) + "}";
  emit(text, output);
  return region.match ? 0 : 1;
}

int run_bellman_oracle(const std::string& input, double x, double y, double q,
                       int pieces, std::uint64_t budget, std::uint64_t seed,
                       double tol, const std::string& output) {
  double px = x, py = y;
  if (!input.empty()) {
    const Moments m = root_moments(dyw::read_weight(input));
    px = m.x;
    py = m.y;
  }
  const dyw::Q0Result q0 = dyw::solve_q0(q, dyw::Q0Mode::direct);
  const double bell = dyw::bellman_value({px, py}, q0.q0);
  const dyw::OracleResult oracle =
      dyw::extremal_search(px, py, q, pieces, budget, seed);
  const double gap = bell - oracle.value;
  const bool pass = oracle.value <= bell + tol;
  std::string leaves = "[";
  for (std::size_t i = 0; i < oracle.leaves.size(); ++i) {
    if (i) leaves += ',';
    leaves += jnum(oracle.leaves[i]);
  }
  leaves += "]";
  const std::string text =
      "{\"x\":" + jnum(px) + ",\"y\":" + jnum(py) + ",\"Q\":" + jnum(q) +
      ",\"Q0\":" + jnum(q0.q0) + ",\"pieces\":" + std::to_string(pieces) +
      ",\"oracle\":" + jnum(oracle.value) + ",\"value\":" + jnum(bell) +
      ",\"gap\":" + jnum(gap) +
      ",\"gap_rel\":" + jnum(gap / std::max(1.0, std::abs(bell))) +
      ",\"evaluations\":" + std::to_string(oracle.evaluations) +
      ",\"seed\":" + std::to_string(seed) + ",\"pass\":" + jbool(pass) +
      ",\"leaves\":" + leaves + "}";
  emit(text, output);
  return pass ? 0 : 1;
}

int run_sharpness(int depth, int trials, std::uint64_t seed, double tol,
                  const std::string& output) {
  std::vector<dyw::DyadicWeight> weights;
  for (int i = 0; i < trials; ++i) {
    dyw::GeneratorSpec spec;
    spec.kind = dyw::GeneratorSpec::Kind::cascade;
    spec.depth = depth;
    spec.eps_max = 0.2 + 0.75 * static_cast<double>(i % 8) / 8.0;
    spec.seed = seed + static_cast<std::uint64_t>(i);
    weights.push_back(dyw::generate(spec));
  }
  for (double b : {2.0, 10.0, 100.0, 1000.0})
    weights.push_back(dyw::DyadicWeight({1.0, b}));
  for (double e : {-0.9, -0.5, 0.5, 2.0}) {
    dyw::GeneratorSpec spec;
    spec.kind = dyw::GeneratorSpec::Kind::power_like;
    spec.depth = depth;
    spec.exponent = e;
    weights.push_back(dyw::generate(spec));
    weights.push_back(dyw::truncate(weights.back(), 10.0));
  }
  if (depth >= 3) {
    for (double b : {4.0, 16.0}) {
      dyw::GeneratorSpec spec;
      spec.kind = dyw::GeneratorSpec::Kind::nondoubling;
      spec.depth = depth;
      spec.bound = b;
      weights.push_back(dyw::generate(spec));
    }
  }
  const double bound = std::log(16.0);
  double max_ratio = 0.0;
  bool pass = true;
  for (const dyw::DyadicWeight& w : weights) {
    const double rh1 = dyw::weight_constant(w, dyw::ConstantKind::rh1()).value;
    const double ainf =
        dyw::weight_constant(w, dyw::ConstantKind::ainf()).value;
    max_ratio = std::max(max_ratio, rh1 / ainf);
    if (rh1 > bound * ainf + tol * std::max(1.0, bound * ainf)) pass = false;
  }
  const std::string text =
      "{\"weights\":" + std::to_string(weights.size()) +
      ",\"max_ratio\":" + jnum(max_ratio) + ",\"bound\":" + jnum(bound) +
      ",\"ratio_of_bound\":" + jnum(max_ratio / bound) +
      ",\"pass\":" + jbool(pass) + "}";
  emit(text, output);
  return pass ? 0 : 1;
}

int run_gen(const std::string& kind, int depth, double a, double b,
            double exponent, double eps, double bound, std::uint64_t seed,
            double truncate_to, const std::string& output) {
  dyw::GeneratorSpec spec;
  if (kind == "constant")
    spec.kind = dyw::GeneratorSpec::Kind::constant;
  else if (kind == "two_value")
    spec.kind = dyw::GeneratorSpec::Kind::two_value;
  else if (kind == "power_like")
    spec.kind = dyw::GeneratorSpec::Kind::power_like;
  else if (kind == "cascade")
    spec.kind = dyw::GeneratorSpec::Kind::cascade;
  else if (kind == "nondoubling")
    spec.kind = dyw::GeneratorSpec::Kind::nondoubling;
  else
    throw std::invalid_argument("unknown generator \"" + kind + "\"");
  spec.depth = depth;
  spec.a = a;
  spec.b = b;
  spec.exponent = exponent;
  spec.eps_max = eps;
  spec.bound = bound;
  spec.seed = seed;
  dyw::DyadicWeight w = dyw::generate(spec);
  if (truncate_to > 0.0) w = dyw::truncate(w, truncate_to);
  if (output.empty()) {
    std::cout << dyw::weight_to_json_string(w) << "\n";
  } else {
    dyw::write_weight(w, output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Dyadic weight-class constants, square-sum counterparts, and the "
      "entropy envelope toolkit"};
  app.require_subcommand(1);

  std::string input, output, kinds_csv, family = "xlogx", mode = "direct";
  std::string gen_kind = "cascade";
  double p = 2.0, q = 2.0, x = 1.0, y = 0.0;
  double a = 1.0, b = 3.0, exponent = -0.5, eps = 0.5, bound = 8.0;
  double truncate_to = 0.0, alpha_value = 0.0;
  bool alpha_set = false;
  int depth = 10, trials = 64, pieces = 8, grid = 40;
  std::uint64_t samples = 100000, seed = 0, budget = 2000;
  double tol_verify = 1e-9, tol_deficit = 1e-9, tol_oracle = 1e-8,
         tol_sharpness = 1e-9;

  auto* constants = app.add_subcommand(
      "constants", "weight-class constants of a weight file");
  constants->add_option("--input", input, "weight file (.json or .csv)")
      ->required();
  constants->add_option("--output", output, "write report here (default stdout)");
  constants->add_option("--p", p, "integrability exponent (default 2)");
  constants->add_option("--kinds", kinds_csv,
                        "comma list, e.g. Ap,Ainf,RHp,RH1 (default: all)");

  auto* sums = app.add_subcommand(
      "sums", "square-sum constants and the gap representation");
  sums->add_option("--input", input, "weight file")->required();
  sums->add_option("--output", output, "write report here");
  sums->add_option("--p", p, "integrability exponent");
  sums->add_option("--family", family,
                   "profile for the representation: power:p, xlogx, "
                   "negpower:p, log");

  auto* verify = app.add_subcommand("verify", "run all inequality suites");
  verify->add_option("--input", input, "weight file")->required();
  verify->add_option("--output", output, "write report here");
  verify->add_option("--p", p, "integrability exponent");
  verify->add_option("--tol-verify", tol_verify, "suite tolerance");

  auto* bellman = app.add_subcommand("bellman", "envelope machinery");
  bellman->require_subcommand(1);

  auto* eval = bellman->add_subcommand(
      "eval", "envelope value at a moment point or a weight's root moments");
  eval->add_option("--input", input, "weight file (overrides --x/--y)");
  eval->add_option("--x", x, "mean coordinate");
  eval->add_option("--y", y, "log-mean coordinate");
  eval->add_option("--q", q, "flatness bound Q")->required();
  eval->add_option("--q0-mode,--mode", mode, "direct or paper");
  eval->add_option("--tol-deficit", tol_deficit, "bound slack");
  eval->add_option("--output", output, "write report here");

  auto* q0cmd = bellman->add_subcommand("q0", "solve the enlargement root");
  q0cmd->add_option("--q", q, "flatness bound Q")->required();
  q0cmd->add_option("--q0-mode,--mode", mode, "direct or paper");
  q0cmd->add_option("--output", output, "write report here");

  auto* scan = bellman->add_subcommand(
      "scan", "Monte-Carlo midpoint-concavity scan of the envelope");
  scan->add_option("--q", q, "flatness bound Q")->required();
  scan->add_option("--samples", samples, "accepted triples (default 100000)");
  scan->add_option("--seed", seed, "RNG seed")->required();
  scan->add_option("--tol-deficit", tol_deficit, "deficit tolerance");
  scan->add_option("--output", output, "write report here");

  auto* vertices = bellman->add_subcommand(
      "vertices", "vertex curves and region scan of the two-child deficit");
  vertices->add_option("--q", q, "flatness bound Q")->required();
  auto* alpha_opt = vertices->add_option(
      "--alpha", alpha_value, "midpoint parameter (default: mixed boundary)");
  vertices->add_option("--grid", grid, "grid points per axis (default 40)");
  vertices->add_option("--output", output, "write report here");

  auto* oracle = bellman->add_subcommand(
      "oracle", "moment-constrained extremal search under the envelope");
  oracle->add_option("--input", input, "weight file (overrides --x/--y)");
  oracle->add_option("--x", x, "mean coordinate");
  oracle->add_option("--y", y, "log-mean coordinate");
  oracle->add_option("--q", q, "flatness bound Q")->required();
  oracle->add_option("--pieces", pieces, "dyadic pieces (power of two)");
  oracle->add_option("--trials", budget, "candidate budget (default 2000)");
  oracle->add_option("--seed", seed, "RNG seed")->required();
  oracle->add_option("--tol-oracle", tol_oracle, "domination slack");
  oracle->add_option("--output", output, "write report here");

  auto* sharpness = app.add_subcommand(
      "sharpness", "sweep generated weights for the entropy/flatness ratio");
  sharpness->add_option("--depth", depth, "tree depth (default 10)");
  sharpness->add_option("--trials", trials, "random cascades (default 64)");
  sharpness->add_option("--seed", seed, "RNG seed")->required();
  sharpness->add_option("--tol-verify", tol_sharpness, "bound tolerance");
  sharpness->add_option("--output", output, "write report here");

  auto* gen = app.add_subcommand("gen", "generate a weight file");
  gen->add_option("--kind", gen_kind,
                  "constant, two_value, power_like, cascade, nondoubling");
  gen->add_option("--depth", depth, "tree depth");
  gen->add_option("--a", a, "first value (constant/two_value)");
  gen->add_option("--b", b, "second value (two_value)");
  gen->add_option("--exponent", exponent, "power_like exponent (> -1)");
  gen->add_option("--eps", eps, "cascade max relative step in (0,1)");
  gen->add_option("--bound", bound, "nondoubling target ratio (> 1)");
  gen->add_option("--seed", seed, "RNG seed (cascade)");
  gen->add_option("--truncate", truncate_to, "clamp leaves to [1, n]");
  gen->add_option("--output", output, "weight file path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*constants) return run_constants(input, kinds_csv, p, output);
    if (*sums) return run_sums(input, p, family, output);
    if (*verify) return run_verify(input, p, tol_verify, output);
    if (*eval)
      return run_bellman_eval(input, x, y, q, mode, tol_deficit, output);
    if (*q0cmd) return run_bellman_q0(q, mode, output);
    if (*scan) return run_bellman_scan(q, samples, seed, tol_deficit, output);
    if (*vertices) {
      alpha_set = alpha_opt->count() > 0;
      return run_bellman_vertices(
          q, alpha_set ? std::optional<double>(alpha_value) : std::nullopt,
          grid, output);
    }
    if (*oracle)
      return run_bellman_oracle(input, x, y, q, pieces, budget, seed,
                                tol_oracle, output);
    if (*sharpness)
      return run_sharpness(depth, trials, seed, tol_sharpness, output);
    if (*gen)
      return run_gen(gen_kind, depth, a, b, exponent, eps, bound, seed,
                     truncate_to, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
