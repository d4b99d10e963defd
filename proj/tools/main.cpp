#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyvol/integral_lab.hpp"
#include "polyvol/loja.hpp"
#include "polyvol/mclab.hpp"
#include "polyvol/parallel.hpp"
#include "polyvol/report.hpp"

namespace {

using nlohmann::json;
using namespace polyvol;

// Bad flag combinations and config files map to exit code 2, like CLI usage
// errors; mathematical rejection of an otherwise well-formed input maps to 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string timestamp_utc() {
  char buf[32];
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<double> log_space(double lo, double hi, int points) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i)
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  out.back() = hi;
  return out;
}

struct LabConfig {
  std::vector<double> delta_grid = log_space(1e-6, 1e-1, 12);
  std::vector<double> r_grid = {1, 2, 4, 8, 16};
  std::vector<double> lambda_grid = log_space(10, 1000, 16);
  std::vector<double> mu_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  long samples_per_cell = 1000000;
  long samples_per_level = 1000000;
  int levels = 16;
  uint64_t seed = 0;
  double target_rel_err = 1e-6;
};

void merge_config_file(LabConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config root must be a JSON object");
  static const std::set<std::string> known = {
      "delta_grid", "delta_range", "delta_points", "r_grid",        "samples_per_cell",
      "seed",       "lambda_grid", "lambda_range", "lambda_points", "mu_grid",
      "target_rel_err", "levels",  "samples_per_level"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw UsageError("unknown config key \"" + key + "\"");
  try {
    if (j.count("delta_grid")) cfg.delta_grid = j["delta_grid"].get<std::vector<double>>();
    if (j.count("delta_range")) {
      auto range = j["delta_range"].get<std::vector<double>>();
      int points = j.value("delta_points", 12);
      if (range.size() != 2 || points < 2) throw UsageError("delta_range needs [lo, hi] and delta_points >= 2");
      cfg.delta_grid = log_space(range[0], range[1], points);
    }
    if (j.count("r_grid")) cfg.r_grid = j["r_grid"].get<std::vector<double>>();
    if (j.count("lambda_grid")) cfg.lambda_grid = j["lambda_grid"].get<std::vector<double>>();
    if (j.count("lambda_range")) {
      auto range = j["lambda_range"].get<std::vector<double>>();
      int points = j.value("lambda_points", 16);
      if (range.size() != 2 || points < 2) throw UsageError("lambda_range needs [lo, hi] and lambda_points >= 2");
      cfg.lambda_grid = log_space(range[0], range[1], points);
    }
    if (j.count("mu_grid")) cfg.mu_grid = j["mu_grid"].get<std::vector<double>>();
    if (j.count("samples_per_cell")) cfg.samples_per_cell = j["samples_per_cell"].get<long>();
    if (j.count("samples_per_level")) cfg.samples_per_level = j["samples_per_level"].get<long>();
    if (j.count("levels")) cfg.levels = j["levels"].get<int>();
    if (j.count("seed")) cfg.seed = j["seed"].get<uint64_t>();
    if (j.count("target_rel_err")) cfg.target_rel_err = j["target_rel_err"].get<double>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("config field has the wrong type: ") + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << content;
}

void write_json(const std::filesystem::path& path, const json& doc) {
  write_file(path, doc.dump(2) + "\n");
}

struct CommonFlags {
  std::string poly;
  int dim = 0;
  std::string config_path;
  std::string out_dir;
  std::string json_path;
  uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  long samples = 0;  // 0 = keep defaults
  double r = 0.0;    // 0 = keep defaults
};

LabConfig resolve_config(const CommonFlags& flags) {
  LabConfig cfg;
  if (!flags.config_path.empty()) merge_config_file(cfg, flags.config_path);
  if (flags.seed_set) cfg.seed = flags.seed;
  if (flags.samples > 0) {
    cfg.samples_per_cell = flags.samples;
    cfg.samples_per_level = flags.samples;
  }
  if (flags.r > 0.0) cfg.r_grid = {flags.r};
  return cfg;
}

SparsePolynomial parse_input(const CommonFlags& flags) {
  if (flags.poly.empty()) throw UsageError("--poly is required");
  if (flags.dim < 1) throw UsageError("--dim is required");
  return parse_polynomial(flags.poly, flags.dim);
}

int run_analyze(const CommonFlags& flags) {
  SparsePolynomial p = parse_input(flags);
  AnalysisReport rep = analyze(p);
  std::cout << render_text(rep);
  if (!flags.json_path.empty()) {
    json doc = to_json(rep);
    doc["command"] = "analyze";
    doc["generated_at"] = timestamp_utc();
    write_json(flags.json_path, doc);
  }
  return 0;
}

int run_scan_volume(const CommonFlags& flags) {
  SparsePolynomial p = parse_input(flags);
  LabConfig cfg = resolve_config(flags);
  ScanConfig sc{cfg.delta_grid, cfg.r_grid, cfg.samples_per_cell, cfg.seed};
  ScanResult res = volume_scan(p, sc, flags.threads);

  BoundPrediction prediction = admissible_tube_bound(p, admissible_degree(p).argmin);
  std::optional<TightnessReport> tight;
  try {
    tight = bound_tightness(p, prediction, res);
  } catch (const std::domain_error&) {
  }

  double predicted = prediction.delta_exponent.to_double();
  std::string status = "PASS";
  if (tight && !tight->violations.empty()) {
    status = "FLAG";
  } else if (tight && tight->delta_fit && tight->delta_fit->ci_lo > predicted + 0.25) {
    status = "LOOSE";
  }

  std::cout << "cells: " << res.cells.size() << " (samples per cell " << sc.samples_per_cell
            << ", seed " << sc.seed << ")\n";
  if (res.fitted)
    std::cout << "fitted " << res.fitted->axis << " exponent " << res.fitted->exponent << " ["
              << res.fitted->ci_lo << ", " << res.fitted->ci_hi << "]\n";
  std::cout << "predicted delta exponent " << prediction.delta_exponent.str() << " ("
            << predicted << ")\n";
  if (tight) std::cout << tight->comparison << "\n";
  std::cout << "status: " << status << "\n";

  if (!flags.out_dir.empty()) {
    json doc;
    doc["command"] = "scan volume";
    doc["polynomial"] = p.format();
    doc["dimension"] = p.dimension();
    doc["result"] = to_json(res);
    doc["prediction"] = to_json(prediction);
    doc["tightness"] = tight ? to_json(*tight) : json(nullptr);
    doc["status"] = status;
    doc["version"] = kToolVersion;
    doc["generated_at"] = timestamp_utc();
    std::filesystem::path dir(flags.out_dir);
    write_json(dir / "volume_scan.json", doc);
    write_file(dir / "volume_scan.dat", scan_columns(res));
  }
  return 0;
}

int run_scan_integrability(const CommonFlags& flags) {
  SparsePolynomial p = parse_input(flags);
  LabConfig cfg = resolve_config(flags);
  IntegrabilityScan scan = integrability_scan(p, cfg.mu_grid, cfg.r_grid, cfg.seed, cfg.levels,
                                              cfg.samples_per_level, flags.threads);

  std::string status = scan.flags.empty() ? "PASS" : "FLAG";
  for (const auto& v : scan.verdicts) {
    std::cout << "mu " << v.mu << ": " << (v.divergent ? "divergent" : "finite");
    if (v.value) std::cout << ", value " << *v.value;
    if (v.r_growth) std::cout << ", r-growth " << *v.r_growth;
    std::cout << "\n";
  }
  std::cout << "theoretical bracket [" << scan.theoretical_lower << ", "
            << (scan.theoretical_upper ? std::to_string(*scan.theoretical_upper) : "inf") << "]\n";
  if (scan.largest_finite_mu)
    std::cout << "largest finite mu " << *scan.largest_finite_mu << "\n";
  if (scan.smallest_divergent_mu)
    std::cout << "smallest divergent mu " << *scan.smallest_divergent_mu << "\n";
  for (const auto& f : scan.flags) std::cout << "flag: " << f << "\n";
  std::cout << "status: " << status << "\n";

  if (!flags.out_dir.empty()) {
    json doc;
    doc["command"] = "scan integrability";
    doc["polynomial"] = p.format();
    doc["dimension"] = p.dimension();
    doc["result"] = to_json(scan);
    doc["status"] = status;
    doc["version"] = kToolVersion;
    doc["seed"] = cfg.seed;
    doc["generated_at"] = timestamp_utc();
    std::filesystem::path dir(flags.out_dir);
    write_json(dir / "integrability_scan.json", doc);
    std::ostringstream cols;
    cols << "# mu value divergent\n";
    cols.precision(12);
    for (const auto& v : scan.verdicts)
      cols << v.mu << ' ' << (v.value ? *v.value : 0.0) << ' ' << (v.divergent ? 1 : 0) << '\n';
    write_file(dir / "integrability_scan.dat", cols.str());
  }
  return 0;
}

int run_scan_decay(const CommonFlags& flags) {
  SparsePolynomial p = parse_input(flags);
  LabConfig cfg = resolve_config(flags);
  double r = flags.r > 0.0 ? flags.r : 1.0;
  DecayScanResult res = decay_scan(p, r, cfg.lambda_grid, cfg.target_rel_err);
  OscillatoryBound ob = oscillatory_decay_bound(p);
  double predicted = ob.bound.lambda_exponent->to_double();

  std::string status = "PASS";
  if (res.ci_lo > predicted) {
    status = "FLAG";
  } else if (res.ci_hi < predicted - 0.25) {
    status = "LOOSE";
  }

  std::cout << "envelope exponent " << res.envelope_exponent << " [" << res.ci_lo << ", "
            << res.ci_hi << "]\n";
  std::cout << "predicted exponent " << ob.bound.lambda_exponent->str() << " (" << predicted
            << ")\n";
  std::cout << "status: " << status << "\n";

  if (!flags.out_dir.empty()) {
    json doc;
    doc["command"] = "scan decay";
    doc["polynomial"] = p.format();
    doc["dimension"] = p.dimension();
    doc["r"] = r;
    doc["result"] = to_json(res);
    doc["prediction"] = to_json(ob.bound);
    doc["status"] = status;
    doc["version"] = kToolVersion;
    doc["generated_at"] = timestamp_utc();
    std::filesystem::path dir(flags.out_dir);
    write_json(dir / "decay_scan.json", doc);
    std::ostringstream cols;
    cols << "# lambda magnitude converged\n";
    cols.precision(12);
    for (std::size_t i = 0; i < res.lambda_grid.size(); ++i)
      cols << res.lambda_grid[i] << ' ' << res.magnitudes[i] << ' ' << (res.converged[i] ? 1 : 0)
           << '\n';
    write_file(dir / "decay_scan.dat", cols.str());
  }
  return 0;
}

int run_verify_loja(const CommonFlags& flags, long samples, int iterations) {
  SparsePolynomial p = parse_input(flags);
  LojaConfig cfg;
  if (samples > 0) cfg.samples = samples;
  if (flags.r > 0.0) cfg.box_radius = flags.r;
  if (flags.seed_set) cfg.seed = flags.seed;
  cfg.descent_iterations = iterations;
  cfg.threads = flags.threads;
  AdmissibleCertificate cert = admissible_degree(p).argmin;
  LojaReport rep = lojasiewicz_check(p, cert, cfg);

  double fraction = static_cast<double>(rep.confirmed) / rep.samples;
  std::cout << "certificate alpha " << cert.alpha.str() << ", mu(alpha) " << rep.mu_alpha << "\n";
  std::cout << "confirmed " << rep.confirmed << "/" << rep.samples << " (" << fraction
            << "), inconclusive " << rep.inconclusive << "\n";
  std::cout << "max confirmed ratio " << rep.max_confirmed_ratio << "\n";

  if (!flags.out_dir.empty()) {
    json doc;
    doc["command"] = "verify loja";
    doc["polynomial"] = p.format();
    doc["alpha"] = [&] {
      json a = json::array();
      for (int i = 0; i < cert.alpha.dim(); ++i) a.push_back(cert.alpha[i]);
      return a;
    }();
    doc["result"] = to_json(rep);
    doc["box_radius"] = cfg.box_radius;
    doc["seed"] = cfg.seed;
    doc["version"] = kToolVersion;
    doc["generated_at"] = timestamp_utc();
    write_json(std::filesystem::path(flags.out_dir) / "loja.json", doc);
  }
  return 0;
}

int run_verify_chebyshev(const CommonFlags& flags, int degree, long trials) {
  if (degree < 1) throw UsageError("--degree is required and must be positive");
  ChebyshevFloorResult res =
      chebyshev_floor_check(degree, trials, flags.seed_set ? flags.seed : 0);
  std::cout << "min product over " << trials << " trials: " << res.min_product << "\n";
  bool ok = res.min_product >= 1.0 - 1e-6;
  std::cout << (ok ? "floor holds" : "floor violated") << "\n";
  if (!flags.out_dir.empty()) {
    json doc;
    doc["command"] = "verify chebyshev";
    doc["degree"] = degree;
    doc["trials"] = trials;
    doc["result"] = to_json(res);
    doc["version"] = kToolVersion;
    doc["generated_at"] = timestamp_utc();
    write_json(std::filesystem::path(flags.out_dir) / "chebyshev.json", doc);
  }
  return ok ? 0 : 1;
}

int run_verify_remez(const CommonFlags& flags, double fraction, long samples) {
  SparsePolynomial p = parse_input(flags);
  double r = flags.r > 0.0 ? flags.r : 1.0;
  RemezReport rep = remez_check(p, r, fraction, samples > 0 ? samples : 100000,
                                flags.seed_set ? flags.seed : 0);
  std::cout << "sup on the box " << rep.lhs << ", doubling factor " << rep.factor
            << ", bound " << rep.rhs << "\n";
  std::cout << (rep.satisfied ? "satisfied" : "violated") << "\n";
  if (!flags.out_dir.empty()) {
    json doc;
    doc["command"] = "verify remez";
    doc["polynomial"] = p.format();
    doc["r"] = r;
    doc["fraction"] = fraction;
    doc["result"] = to_json(rep);
    doc["version"] = kToolVersion;
    doc["generated_at"] = timestamp_utc();
    write_json(std::filesystem::path(flags.out_dir) / "remez.json", doc);
  }
  return rep.satisfied ? 0 : 1;
}

int run_verify_degenerate(const CommonFlags& flags) {
  LabConfig cfg;
  cfg.r_grid = {3, 6, 12};
  cfg.delta_grid = log_space(1e-4, 1e-1, 8);
  if (!flags.config_path.empty()) merge_config_file(cfg, flags.config_path);
  if (flags.seed_set) cfg.seed = flags.seed;
  if (flags.samples > 0) cfg.samples_per_cell = flags.samples;
  ScanConfig sc{cfg.delta_grid, cfg.r_grid, cfg.samples_per_cell, cfg.seed};
  DegenerateScanReport rep = degenerate_scenario_scan(sc, flags.threads);

  if (rep.delta_fit)
    std::cout << "fitted delta exponent nu " << rep.delta_fit->exponent << " ["
              << rep.delta_fit->ci_lo << ", " << rep.delta_fit->ci_hi << "]\n";
  if (rep.r_slope)
    std::cout << "r slope " << *rep.r_slope << " ("
              << (rep.r_independent ? "r-independent" : "r-dependent") << ")\n";
  if (rep.r_cells_agree)
    std::cout << "r cells " << (*rep.r_cells_agree ? "agree" : "disagree")
              << " within 3 standard errors at delta " << *rep.comparison_delta << "\n";
  else
    std::cout << "no fully reliable delta row for the r comparison; raise --samples\n";

  if (!flags.out_dir.empty()) {
    json doc;
    doc["command"] = "verify degenerate";
    doc["polynomial"] = degenerate_polynomial().format();
    doc["result"] = to_json(rep);
    doc["version"] = kToolVersion;
    doc["generated_at"] = timestamp_utc();
    std::filesystem::path dir(flags.out_dir);
    write_json(dir / "degenerate.json", doc);
    write_file(dir / "degenerate.dat", scan_columns(rep.scan));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sublevel-volume toolkit: exponents, bounds, and sampling labs"};
  app.require_subcommand(1);

  CommonFlags flags;
  long samples_flag = 0;
  long trials = 10000;
  int degree = 0;
  double fraction = 0.5;
  int descent_iterations = 200;

  auto add_common = [&](CLI::App* cmd, bool with_poly) {
    if (with_poly) {
      cmd->add_option("--poly", flags.poly, "polynomial text, variables x1..x<dim>");
      cmd->add_option("--dim", flags.dim, "number of variables");
    }
    cmd->add_option("--seed", flags.seed, "random stream seed")
        ->each([&](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--threads", flags.threads, "worker threads (0 = POLYVOL_THREADS or all cores)");
    cmd->add_option("--out", flags.out_dir, "directory for JSON and column output");
  };

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "symbolic analysis, no sampling");
  add_common(analyze_cmd, true);
  analyze_cmd->add_option("--json", flags.json_path, "write the report as JSON");

  CLI::App* scan_cmd = app.add_subcommand("scan", "sampling and quadrature labs");
  scan_cmd->require_subcommand(1);
  CLI::App* scan_volume = scan_cmd->add_subcommand("volume", "sublevel-volume scan");
  CLI::App* scan_integr = scan_cmd->add_subcommand("integrability", "layer-cake transition scan");
  CLI::App* scan_decay = scan_cmd->add_subcommand("decay", "oscillatory decay scan");
  for (CLI::App* cmd : {scan_volume, scan_integr, scan_decay}) {
    add_common(cmd, true);
    cmd->add_option("--config", flags.config_path, "JSON config file");
    cmd->add_option("--samples", samples_flag, "override samples per cell/level");
    cmd->add_option("--r", flags.r, "override the box radius grid with one value");
  }

  CLI::App* verify_cmd = app.add_subcommand("verify", "inequality verifiers");
  verify_cmd->require_subcommand(1);
  CLI::App* verify_loja = verify_cmd->add_subcommand("loja", "distance inequality sampling");
  add_common(verify_loja, true);
  verify_loja->add_option("--samples", samples_flag, "sample count");
  verify_loja->add_option("--r", flags.r, "box radius");
  verify_loja->add_option("--iterations", descent_iterations, "descent budget per sample");
  CLI::App* verify_cheb = verify_cmd->add_subcommand("chebyshev", "random monic floor check");
  add_common(verify_cheb, false);
  verify_cheb->add_option("--degree", degree, "polynomial degree");
  verify_cheb->add_option("--trials", trials, "number of random polynomials");
  CLI::App* verify_remez = verify_cmd->add_subcommand("remez", "sup-norm doubling check");
  add_common(verify_remez, true);
  verify_remez->add_option("--r", flags.r, "box radius");
  verify_remez->add_option("--fraction", fraction, "sub-box volume fraction");
  verify_remez->add_option("--samples", samples_flag, "grid points per sup");
  CLI::App* verify_degen = verify_cmd->add_subcommand("degenerate", "built-in degenerate scan");
  add_common(verify_degen, false);
  verify_degen->add_option("--config", flags.config_path, "JSON config file");
  verify_degen->add_option("--samples", samples_flag, "override samples per cell");

  try {
    app.parse(argc, argv);
    flags.samples = samples_flag;
    if (analyze_cmd->parsed()) return run_analyze(flags);
    if (scan_volume->parsed()) return run_scan_volume(flags);
    if (scan_integr->parsed()) return run_scan_integrability(flags);
    if (scan_decay->parsed()) return run_scan_decay(flags);
    if (verify_loja->parsed()) return run_verify_loja(flags, samples_flag, descent_iterations);
    if (verify_cheb->parsed()) return run_verify_chebyshev(flags, degree, trials);
    if (verify_remez->parsed()) return run_verify_remez(flags, fraction, samples_flag);
    if (verify_degen->parsed()) return run_verify_degenerate(flags);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
