#include "spectra/app/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>
#include <thread>

#include "spectra/app/acceptance.hpp"
#include "spectra/eigensolver.hpp"
#include "spectra/error.hpp"

namespace spectra::cli {
namespace {

using nlohmann::json;

// Raised for anything that should exit with status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g17(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

struct RunConfig {
  std::string kind;
  double eps1 = 0.0;
  double nu1 = 0.0;
  double q1 = 1.0;
  double eps2 = 0.0;
  double nu2 = 0.0;
  double q2 = 1.0;
  double grid_l = 10.0;
  int grid_n = 2001;
  int n_max = -1;
  double tol = -1.0;
  std::string out;
  std::string format = "csv";

  // Names of spec parameters given explicitly (or supplied by a preset).
  std::vector<std::string> present;

  bool has(const std::string& name) const {
    return std::find(present.begin(), present.end(), name) != present.end();
  }
  double* field(const std::string& name) {
    if (name == "eps1") return &eps1;
    if (name == "nu1") return &nu1;
    if (name == "q1") return &q1;
    if (name == "eps2") return &eps2;
    if (name == "nu2") return &nu2;
    if (name == "q2") return &q2;
    return nullptr;
  }
};

const std::vector<std::string> kSpecParams = {"eps1", "nu1", "q1",
                                              "eps2", "nu2", "q2"};

void add_spec_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--kind", cfg.kind,
                  "first-order | second-order | scaled-first | scaled-second");
  app->add_option("--eps1", cfg.eps1, "factorization energy of the first step");
  app->add_option("--nu1", cfg.nu1, "mixing constant of the first step (default 0)");
  app->add_option("--q1", cfg.q1, "scale factor of the first step");
  app->add_option("--eps2", cfg.eps2, "factorization energy of the second step");
  app->add_option("--nu2", cfg.nu2, "mixing constant of the second step");
  app->add_option("--q2", cfg.q2, "scale factor of the second step (default 1)");
  app->add_option("--grid-l", cfg.grid_l, "grid half-width")->capture_default_str();
  app->add_option("--grid-n", cfg.grid_n, "grid points")->capture_default_str();
  app->add_option("--nmax", cfg.n_max, "inherited levels (default 5 minus created)");
  app->add_option("--tol", cfg.tol, "verification tolerance (default 2e-3, 4e-3 for scale >= 1.5)");
  app->add_option("--out", cfg.out, "output path");
  app->add_option("--format", cfg.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void record_present(const CLI::App* app, RunConfig& cfg) {
  for (const auto& name : kSpecParams) {
    if (app->count("--" + name) > 0 && !cfg.has(name)) cfg.present.push_back(name);
  }
}

TransformKind require_kind(const RunConfig& cfg) {
  if (cfg.kind.empty()) throw UsageError("--kind is required");
  const auto kind = parse_transform_kind(cfg.kind);
  if (!kind) throw UsageError("unknown --kind '" + cfg.kind + "'");
  return *kind;
}

Grid require_grid(const RunConfig& cfg) {
  if (!(cfg.grid_l > 0.0) || !std::isfinite(cfg.grid_l)) {
    throw UsageError("--grid-l must be positive");
  }
  if (cfg.grid_n < 3) throw UsageError("--grid-n must be at least 3");
  return Grid::symmetric(cfg.grid_l, cfg.grid_n);
}

// Parameters a kind needs, given those that will be filled in later (swept
// or locked ones).
void require_params(TransformKind kind, const RunConfig& cfg,
                    const std::vector<std::string>& deferred) {
  std::vector<std::string> needed = {"eps1"};
  if (kind == TransformKind::scaled_first || kind == TransformKind::scaled_second) {
    needed.push_back("q1");
  }
  if (kind == TransformKind::second_order || kind == TransformKind::scaled_second) {
    needed.push_back("eps2");
    needed.push_back("nu2");
  }
  for (const auto& name : needed) {
    const bool later = std::find(deferred.begin(), deferred.end(), name) != deferred.end();
    if (!cfg.has(name) && !later) {
      throw UsageError("--" + name + " is required for --kind " + cfg.kind);
    }
  }
}

// Builds and validates the spec. Structural rejections are usage errors.
TransformSpec make_spec(TransformKind kind, const RunConfig& cfg) {
  TransformSpec spec;
  try {
    const FactorizationConfig f1{cfg.eps1, cfg.nu1};
    const FactorizationConfig f2{cfg.eps2, cfg.nu2};
    switch (kind) {
      case TransformKind::first_order:
        spec = TransformSpec::first_order(f1);
        break;
      case TransformKind::second_order:
        spec = TransformSpec::second_order(f1, f2);
        break;
      case TransformKind::scaled_first:
        spec = TransformSpec::scaled_first(f1, ScalingParam(cfg.q1));
        break;
      case TransformKind::scaled_second:
        spec = TransformSpec::scaled_second(f1, ScalingParam(cfg.q1), f2,
                                            ScalingParam(cfg.q2));
        break;
    }
    spec.validate();
  } catch (const Error& e) {
    throw UsageError(e.reason());
  }
  return spec;
}

int default_n_max(const TransformSpec& spec) { return spec.two_step() ? 3 : 4; }

json spectrum_json(const SpectrumPrediction& prediction) {
  json levels = json::array();
  for (const auto& level : prediction.levels) {
    levels.push_back({{"value", level.value},
                      {"label", level.label()},
                      {"scale", level.scale}});
  }
  return levels;
}

json spec_json(const TransformSpec& spec) {
  json j = {{"kind", to_string(spec.kind)},
            {"eps1", spec.f1.eps},
            {"nu1", spec.f1.nu}};
  if (spec.s1) j["q1"] = spec.s1->q();
  if (spec.f2) {
    j["eps2"] = spec.f2->eps;
    j["nu2"] = spec.f2->nu;
  }
  if (spec.s2) j["q2"] = spec.s2->q();
  return j;
}

std::string render_potential_json(const GeneratedPotential& potential,
                                  const Grid& grid) {
  json xs = json::array();
  json vs = json::array();
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    xs.push_back(x);
    vs.push_back(potential(x));
  }
  return json{{"x", xs}, {"V", vs}}.dump() + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  file << content;
  if (!file) throw IoError("cannot write " + path.string());
}

// generate -------------------------------------------------------------------

int run_generate(RunConfig& cfg, std::ostream& out) {
  const TransformKind kind = require_kind(cfg);
  const Grid grid = require_grid(cfg);
  require_params(kind, cfg, {});
  const TransformSpec spec = make_spec(kind, cfg);
  const int n_max = cfg.n_max >= 0 ? cfg.n_max : default_n_max(spec);

  const GeneratedPotential potential =
      build_potential(spec, certification_for(cfg.grid_l));
  const std::string path =
      cfg.out.empty() ? (cfg.format == "json" ? "potential.json" : "potential.csv")
                      : cfg.out;
  write_file(path, cfg.format == "json" ? render_potential_json(potential, grid)
                                        : render_potential_csv(potential, grid));

  json report = spec_json(spec);
  report["levels"] = spectrum_json(predict_spectrum(spec, n_max));
  report["samples"] = path;
  out << report.dump(2) << "\n";
  return kExitOk;
}

// spectrum -------------------------------------------------------------------

int run_spectrum(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const TransformKind kind = require_kind(cfg);
  const Grid grid = require_grid(cfg);
  require_params(kind, cfg, {});
  const TransformSpec spec = make_spec(kind, cfg);
  const int n_max = cfg.n_max >= 0 ? cfg.n_max : default_n_max(spec);
  const double tol = cfg.tol >= 0.0 ? cfg.tol : default_tolerance(spec.energy_scale());

  const GeneratedPotential potential =
      build_potential(spec, certification_for(cfg.grid_l));
  const SpectrumPrediction prediction = predict_spectrum(spec, n_max);
  const VerificationReport report =
      verify_spectrum(prediction, potential.as_function(), grid, tol);

  std::string text;
  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "label,predicted,computed,error,tolerance,richardson\n";
    for (std::size_t i = 0; i < report.predicted.size(); ++i) {
      csv << prediction.levels[i].label() << ',' << g17(report.predicted[i]) << ','
          << g17(report.computed[i]) << ',' << g17(report.abs_errors[i]) << ','
          << g17(report.level_tolerances[i]) << ',' << g17(report.richardson[i])
          << '\n';
    }
    text = csv.str();
  } else {
    json j = spec_json(spec);
    j["levels"] = spectrum_json(prediction);
    j["predicted"] = report.predicted;
    j["computed"] = report.computed;
    j["errors"] = report.abs_errors;
    j["level_tolerances"] = report.level_tolerances;
    j["tolerance"] = report.tolerance;
    j["richardson"] = report.richardson;
    j["discretization_estimate"] = report.discretization_estimate;
    j["grid"] = {{"x_min", report.grid.x_min},
                 {"x_max", report.grid.x_max},
                 {"n_points", report.grid.n_points}};
    j["pass"] = report.pass;
    text = j.dump(2) + "\n";
  }
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_file(cfg.out, text);
  }
  if (!report.pass) {
    err << "verification_failed: predicted spectrum not reproduced within tolerance\n";
    return kExitDomainFailure;
  }
  return kExitOk;
}

// sweep ----------------------------------------------------------------------

struct SweepRequest {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  std::vector<std::string> locks;
  std::string preset;
};

struct Preset {
  std::string name;
  std::string kind;
  std::map<std::string, double> fixed;
  std::string param;
  double from;
  double to;
  int steps;
  std::vector<std::string> locks;
};

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {"ground-level-scan", "first-order", {{"nu1", 0.9}}, "eps1", -2.0, 0.45, 8, {}},
      {"first-excited-scan", "second-order",
       {{"nu1", 0.0}, {"eps2", -0.5}, {"nu2", 10000.0}}, "eps1", -0.4, 0.4, 9, {}},
      {"fixed-ground-scaling", "scaled-first", {{"nu1", 0.0}}, "q1",
       1.0 / std::sqrt(2.0), std::sqrt(2.0), 9, {"eps1=-q1^2/2"}},
      {"fixed-first-excited-scaling", "scaled-second",
       {{"nu1", 0.0}, {"eps2", -1.5}, {"nu2", 1.1}, {"q2", 1.0}}, "q1",
       1.0 / std::sqrt(2.0), std::sqrt(2.0), 9, {"eps1=-q1^2/2"}},
      {"fixed-two-lowest-scaling", "scaled-second",
       {{"nu1", 0.0}, {"nu2", 10000.0}, {"q2", 1.0}}, "q1", 1.0 / std::sqrt(2.0),
       std::sqrt(2.0), 9, {"eps1=q1^2/4", "eps2=-q1^2/2"}},
  };
  return table;
}

void apply_preset(const std::string& name, RunConfig& cfg, SweepRequest& req,
                  const CLI::App* app) {
  const auto& table = presets();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const Preset& p) { return p.name == name; });
  if (it == table.end()) {
    std::string names;
    for (const auto& p : table) names += (names.empty() ? "" : ", ") + p.name;
    throw UsageError("unknown --preset '" + name + "' (known: " + names + ")");
  }
  if (app->count("--kind") == 0) cfg.kind = it->kind;
  for (const auto& [param, value] : it->fixed) {
    if (!cfg.has(param)) {
      *cfg.field(param) = value;
      cfg.present.push_back(param);
    }
  }
  if (app->count("--param") == 0) req.param = it->param;
  if (app->count("--from") == 0) req.from = it->from;
  if (app->count("--to") == 0) req.to = it->to;
  if (app->count("--steps") == 0) req.steps = it->steps;
  if (app->count("--lock") == 0) req.locks = it->locks;
}

struct Frame {
  double value = 0.0;
  std::string file;
  std::string status;  // ok | skipped | error
  std::string reason;
  json levels = json::array();
  std::optional<TransformSpec> spec;
};

unsigned sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPECTRA_FORGE_THREADS")) {
    char* end = nullptr;
    const long requested = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && requested > 0) {
      n = static_cast<unsigned>(requested);
    }
  }
  return n;
}

int run_sweep(RunConfig& cfg, SweepRequest& req, const CLI::App* app,
              std::ostream& out, std::ostream& err) {
  if (!req.preset.empty()) apply_preset(req.preset, cfg, req, app);
  if (req.param.empty()) throw UsageError("--param is required (or --preset)");
  if (cfg.field(req.param) == nullptr) {
    throw UsageError("--param must be one of eps1, nu1, q1, eps2, nu2, q2");
  }
  if (req.preset.empty() &&
      (app->count("--from") == 0 || app->count("--to") == 0 || app->count("--steps") == 0)) {
    throw UsageError("--from, --to and --steps are required");
  }
  if (req.steps < 1) throw UsageError("--steps must be at least 1");
  if (!std::isfinite(req.from) || !std::isfinite(req.to)) {
    throw UsageError("--from and --to must be finite");
  }
  if (req.steps > 1 && req.from == req.to) {
    throw UsageError("--from equals --to; use --steps 1");
  }
  if (cfg.has(req.param)) {
    throw UsageError("--" + req.param + " is swept and cannot also be fixed");
  }

  std::vector<Lock> locks;
  for (const auto& text : req.locks) {
    auto lock = parse_lock(text);
    if (!lock) {
      throw UsageError("unsupported --lock '" + text +
                       "' (accepted: eps1|eps2 = c*q1^2, e.g. eps1=-q1^2/2)");
    }
    if (req.param != "q1") throw UsageError("--lock requires --param q1");
    if (cfg.has(lock->target)) {
      throw UsageError("--" + lock->target + " is locked and cannot also be set");
    }
    locks.push_back(*lock);
  }

  const TransformKind kind = require_kind(cfg);
  const Grid grid = require_grid(cfg);
  std::vector<std::string> deferred = {req.param};
  for (const auto& lock : locks) deferred.push_back(lock.target);
  require_params(kind, cfg, deferred);

  const std::filesystem::path dir = cfg.out.empty() ? "sweep" : cfg.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string());

  std::vector<Frame> frames(req.steps);
  for (int i = 0; i < req.steps; ++i) {
    frames[i].value = req.steps == 1
                          ? req.from
                          : req.from + (req.to - req.from) * i / (req.steps - 1);
  }
  const int n_max_flag = cfg.n_max;
  const CertificationOptions cert = certification_for(cfg.grid_l);

  auto compute = [&](Frame& frame) {
    RunConfig local = cfg;
    *local.field(req.param) = frame.value;
    for (const auto& lock : locks) {
      *local.field(lock.target) = lock.coefficient * local.q1 * local.q1;
    }
    try {
      const TransformSpec spec = make_spec(kind, local);
      frame.spec = spec;
      const GeneratedPotential potential = build_potential(spec, cert);
      const int n_max = n_max_flag >= 0 ? n_max_flag : default_n_max(spec);
      frame.levels = spectrum_json(predict_spectrum(spec, n_max));
      frame.file = req.param + "=" + g17(frame.value) + ".csv";
      write_file(dir / frame.file, render_potential_csv(potential, grid));
      frame.status = "ok";
    } catch (const UsageError& e) {
      frame.status = "skipped";
      frame.reason = e.what();
    } catch (const Error& e) {
      frame.status = "error";
      frame.reason = e.reason();
    } catch (const IoError& e) {
      frame.status = "error";
      frame.reason = std::string("io_error: ") + e.what();
    }
  };

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < req.steps; i = next++) compute(frames[i]);
  };
  const unsigned n_threads =
      std::min<unsigned>(sweep_threads(), static_cast<unsigned>(req.steps));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<std::string> warnings;
  bool any_error = false;
  for (const auto& frame : frames) {
    if (frame.status == "skipped") {
      warnings.push_back(req.param + "=" + g17(frame.value) +
                         " skipped: " + frame.reason);
    }
    if (frame.status == "error") any_error = true;
  }
  if (kind == TransformKind::scaled_first || kind == TransformKind::scaled_second) {
    for (const char* name : {"eps1", "eps2"}) {
      bool negative = false;
      bool positive = false;
      for (const auto& frame : frames) {
        if (!frame.spec) continue;
        const auto& f = std::string(name) == "eps1" ? std::optional(frame.spec->f1)
                                                    : frame.spec->f2;
        if (!f) continue;
        negative = negative || f->eps < 0.0;
        positive = positive || f->eps > 0.0;
      }
      if (negative && positive) {
        warnings.push_back(std::string(name) +
                           " changes sign across the sweep; the fixed-level "
                           "construction assumes a same-sign interval");
      }
    }
  }

  json fixed = {{"kind", to_string(kind)}};
  for (const auto& name : kSpecParams) {
    if (name == req.param) continue;
    if (std::any_of(locks.begin(), locks.end(),
                    [&](const Lock& l) { return l.target == name; })) {
      continue;
    }
    if (cfg.has(name)) fixed[name] = *cfg.field(name);
  }
  fixed["grid_l"] = cfg.grid_l;
  fixed["grid_n"] = cfg.grid_n;

  json manifest = {{"param", req.param}, {"fixed", fixed}};
  if (!req.preset.empty()) manifest["preset"] = req.preset;
  json lock_list = json::array();
  for (const auto& lock : locks) lock_list.push_back(lock.text);
  manifest["locks"] = lock_list;
  json values = json::array();
  json files = json::array();
  json frame_list = json::array();
  for (const auto& frame : frames) {
    values.push_back(frame.value);
    files.push_back(frame.file.empty() ? json(nullptr) : json(frame.file));
    json entry = {{"value", frame.value}, {"status", frame.status}};
    if (!frame.file.empty()) entry["file"] = frame.file;
    if (!frame.reason.empty()) entry["reason"] = frame.reason;
    if (frame.status == "ok") entry["levels"] = frame.levels;
    if (frame.spec) entry["spec"] = spec_json(*frame.spec);
    frame_list.push_back(entry);
  }
  manifest["values"] = values;
  manifest["files"] = files;
  manifest["frames"] = frame_list;
  manifest["warnings"] = warnings;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  for (const auto& w : warnings) err << "warning: " << w << "\n";
  out << (dir / "manifest.json").string() << "\n";
  if (any_error) {
    for (const auto& frame : frames) {
      if (frame.status == "error") {
        err << frame.reason << " (" << req.param << "=" << g17(frame.value) << ")\n";
        break;
      }
    }
    return kExitDomainFailure;
  }
  return kExitOk;
}

// verify ---------------------------------------------------------------------

acceptance::CriterionResult determinism_criterion(
    const std::vector<acceptance::CriterionResult>& library) {
  acceptance::CriterionResult result{9, "verify aggregates 1-8; generate is deterministic",
                                     false, ""};
  try {
    const auto spec = TransformSpec::first_order({-1.0, 0.5});
    const Grid grid = Grid::symmetric(10.0, 2001);
    const std::string first =
        render_potential_csv(build_potential(spec, certification_for(10.0)), grid);
    const std::string second =
        render_potential_csv(build_potential(spec, certification_for(10.0)), grid);
    const bool identical = first == second;
    const bool all = std::all_of(library.begin(), library.end(),
                                 [](const auto& c) { return c.pass; });
    result.pass = identical && all;
    result.detail = std::string("CSV runs ") + (identical ? "identical" : "differ") +
                    " (" + std::to_string(first.size()) + " bytes); criteria 1-8 " +
                    (all ? "pass" : "FAIL");
  } catch (const Error& e) {
    result.detail = "unexpected error: " + e.reason();
  }
  return result;
}

int run_verify(std::ostream& out, std::ostream& err) {
  auto results = acceptance::run_library_criteria();
  results.push_back(determinism_criterion(results));
  bool all = true;
  out << " id  result  criterion\n";
  for (const auto& r : results) {
    out << std::setw(3) << r.id << "  " << (r.pass ? "PASS  " : "FAIL  ") << "  "
        << r.title << "\n          " << r.detail << "\n";
    all = all && r.pass;
  }
  if (!all) {
    err << "verification_failed: one or more acceptance criteria failed\n";
    return kExitDomainFailure;
  }
  return kExitOk;
}

}  // namespace

std::optional<Lock> parse_lock(const std::string& text) {
  static const std::regex pattern(
      R"(^\s*(eps1|eps2)\s*=\s*([+-]?)\s*(?:(\d+(?:\.\d*)?|\.\d+)\s*\*\s*)?q1\s*\^\s*2\s*(?:/\s*(\d+(?:\.\d*)?|\.\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) return std::nullopt;
  double c = m[3].matched ? std::stod(m[3].str()) : 1.0;
  if (m[4].matched) {
    const double d = std::stod(m[4].str());
    if (d == 0.0) return std::nullopt;
    c /= d;
  }
  if (m[2].str() == "-") c = -c;
  return Lock{m[1].str(), c, text};
}

std::string render_potential_csv(const GeneratedPotential& potential,
                                 const Grid& grid) {
  std::string csv = "x,V\n";
  csv.reserve(48 * static_cast<std::size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    csv += g17(x);
    csv += ',';
    csv += g17(potential(x));
    csv += '\n';
  }
  return csv;
}

CertificationOptions certification_for(double grid_l) {
  CertificationOptions cert;
  if (grid_l > cert.x_hi) {
    cert.x_lo = -grid_l;
    cert.x_hi = grid_l;
    cert.points = static_cast<int>(std::ceil(100.0 * grid_l)) + 1;
  }
  return cert;
}

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Construct potentials with prescribed spectra and verify them",
               "spectra-forge"};
  app.require_subcommand(1);

  RunConfig cfg;
  SweepRequest sweep;

  auto* generate = app.add_subcommand("generate", "write V(x) samples and print the predicted spectrum");
  add_spec_options(generate, cfg);
  auto* spectrum = app.add_subcommand("spectrum", "verify the predicted spectrum with the FD eigensolver");
  add_spec_options(spectrum, cfg);
  auto* sweep_cmd = app.add_subcommand("sweep", "vary one parameter and write one CSV per value");
  add_spec_options(sweep_cmd, cfg);
  sweep_cmd->add_option("--param", sweep.param, "swept parameter");
  sweep_cmd->add_option("--from", sweep.from, "first value");
  sweep_cmd->add_option("--to", sweep.to, "last value");
  sweep_cmd->add_option("--steps", sweep.steps, "number of values");
  sweep_cmd->add_option("--lock", sweep.locks, "tie eps1 or eps2 to q1, e.g. eps1=-q1^2/2");
  std::string preset_help = "named sweep:";
  for (const auto& p : presets()) preset_help += " " + p.name;
  sweep_cmd->add_option("--preset", sweep.preset, preset_help);
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "usage_error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify(out, err);
    if (generate->parsed()) {
      record_present(generate, cfg);
      return run_generate(cfg, out);
    }
    if (spectrum->parsed()) {
      record_present(spectrum, cfg);
      return run_spectrum(cfg, out, err);
    }
    record_present(sweep_cmd, cfg);
    return run_sweep(cfg, sweep, sweep_cmd, out, err);
  } catch (const UsageError& e) {
    err << "usage_error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.reason() << "\n";
    return kExitDomainFailure;
  } catch (const IoError& e) {
    err << "io_error: " << e.what() << "\n";
    return kExitDomainFailure;
  }
}

}  // namespace spectra::cli
