#include "mehler/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mehler/config.hpp"
#include "mehler/experiments.hpp"
#include "mehler/measures.hpp"
#include "mehler/semigroup.hpp"
#include "mehler/seminorms.hpp"

namespace mehler {

namespace {

struct Flags {
  std::string configPath;
  std::string outputDir;
  std::string drift, diffusion, halfWidth, points;
  std::optional<double> s;
  std::optional<std::uint64_t> seed;

  double t = 1.0;
  double lambda = 1.0;
  double alpha = 0.5;
  std::string function = "cos";
  std::string extension = "constant";
  std::string seminorm = "holder";
  std::string experiment;
  bool quick = false;
};

RunConfig resolveConfig(const Flags& flags) {
  RunConfig cfg = flags.configPath.empty() ? RunConfig{} : loadConfig(flags.configPath);
  if (!flags.drift.empty()) cfg.drift = parseNumberList(flags.drift, "--a");
  if (!flags.diffusion.empty()) cfg.diffusion = parseNumberList(flags.diffusion, "--q");
  if (flags.s) cfg.s = *flags.s;
  if (!flags.halfWidth.empty()) cfg.halfWidth = parseNumberList(flags.halfWidth, "--R");
  if (!flags.points.empty()) {
    cfg.points.clear();
    for (double p : parseNumberList(flags.points, "--n")) {
      if (p != std::floor(p) || p < 1 || p > 1 << 30) throw ConfigError("--n", "not a positive integer");
      cfg.points.push_back(static_cast<int>(p));
    }
  }
  // A one-dimensional default diffusion follows the drift's dimension.
  if (cfg.diffusion.size() == 1 && cfg.drift.size() > 1 && flags.diffusion.empty()) {
    const int n = cfg.dim();
    cfg.diffusion.assign(cfg.drift.size(), 0.0);
    for (int i = 0; i < n; ++i) cfg.diffusion[static_cast<std::size_t>(i * n + i)] = 1.0;
  }
  if (flags.seed) cfg.seed = *flags.seed;
  if (const char* env = std::getenv(kOutputDirVariable); env && *env) cfg.outputDir = env;
  if (!flags.outputDir.empty()) cfg.outputDir = flags.outputDir;
  cfg.validate();
  return cfg;
}

MehlerOptions mehlerOptions(const std::string& extension) {
  MehlerOptions o;
  if (extension == "periodic") o.extension = Extension::Periodic;
  else if (extension != "constant")
    throw ConfigError("--extension", "expected constant or periodic, got '" + extension + "'");
  return o;
}

class Emitter {
 public:
  Emitter(const RunConfig& cfg, const std::string& invocation, std::ostream& out)
      : dir_(cfg.outputDir), hash_(hashHex(fnv1a(cfg.canonical() + invocation))), out_(out) {
    std::filesystem::create_directories(dir_);
  }

  const std::string& hash() const { return hash_; }
  std::vector<std::string> header(const std::string& command) const {
    return {"config-hash = " + hash_, "command = " + command};
  }

  void write(const std::string& name, const std::string& contents) {
    const auto path = (dir_ / name).string();
    writeFileAtomically(path, contents);
    out_ << "wrote " << path << "\n";
  }

  void writeJson(const std::string& name, nlohmann::json j) {
    j["configHash"] = hash_;
    write(name, j.dump(2) + "\n");
  }

 private:
  std::filesystem::path dir_;
  std::string hash_;
  std::ostream& out_;
};

std::string describe(const std::vector<std::pair<std::string, std::string>>& items) {
  std::string s;
  for (const auto& [k, v] : items) s += k + "=" + v + "\n";
  return s;
}

int runDensity(const Flags& f, std::ostream& out) {
  const RunConfig cfg = resolveConfig(f);
  Emitter emit(cfg, describe({{"command", "density"}, {"t", formatDouble(f.t)}}), out);
  const DensityTable d = densityOf(cfg.spec(), f.t, cfg.grid());
  auto meta = emit.header("density");
  meta.push_back("t = " + formatDouble(f.t));
  std::ostringstream csv;
  writeDensityCsv(csv, d, meta);
  emit.write("density.csv", csv.str());
  out << "g_t(0) = " << formatDouble(d.valueAtOrigin()) << "\n";
  return kExitPass;
}

int runApply(const Flags& f, std::ostream& out, bool resolventMode) {
  const RunConfig cfg = resolveConfig(f);
  const auto family = TestFunctionFamily::parse(f.function);
  const auto options = mehlerOptions(f.extension);
  const std::string command = resolventMode ? "resolvent" : "apply";
  const std::string parameter = resolventMode ? "lambda" : "t";
  const double value = resolventMode ? f.lambda : f.t;
  Emitter emit(cfg,
               describe({{"command", command},
                         {"f", family.name()},
                         {parameter, formatDouble(value)},
                         {"extension", f.extension}}),
               out);
  const GridFunction input = gridEval(family.expr(), cfg.grid());
  const GridFunction result = resolventMode ? resolvent(cfg.spec(), f.lambda, input, options)
                                            : applyMehler(cfg.spec(), f.t, input, options);
  auto meta = emit.header(command);
  meta.push_back("f = " + family.name());
  meta.push_back(parameter + " = " + formatDouble(value));
  meta.push_back("extension = " + f.extension);
  std::ostringstream csv;
  writeCsv(csv, result, meta);
  emit.write(command + ".csv", csv.str());
  return kExitPass;
}

int runSeminorm(const Flags& f, std::ostream& out) {
  const RunConfig cfg = resolveConfig(f);
  const auto family = TestFunctionFamily::parse(f.function);
  const auto options = mehlerOptions(f.extension);
  Emitter emit(cfg,
               describe({{"command", "seminorm"},
                         {"kind", f.seminorm},
                         {"f", family.name()},
                         {"alpha", formatDouble(f.alpha)},
                         {"extension", f.extension}}),
               out);
  SeminormEstimate e;
  if (f.seminorm == "flow") {
    e = flowSeminorm(cfg.spec(), family.expr(), f.alpha, defaultHolderTimes());
  } else {
    const GridFunction g = gridEval(family.expr(), cfg.grid());
    if (f.seminorm == "holder") e = holderSeminorm(g, f.alpha);
    else if (f.seminorm == "zygmund") e = zygmundSeminorm(g);
    else if (f.seminorm == "semigroup")
      e = semigroupHolder(cfg.spec(), g, f.alpha, defaultHolderTimes(), options);
    else if (f.seminorm == "resolvent")
      e = resolventHolder(cfg.spec(), g, f.alpha, defaultLambdas(), options);
    else
      throw ConfigError("--kind", "expected holder, zygmund, semigroup, resolvent or flow");
  }
  nlohmann::json j = {{"kind", f.seminorm},
                      {"f", family.name()},
                      {"alpha", f.alpha},
                      {"estimate", toJson(e)}};
  emit.writeJson("seminorm.json", j);
  out << f.seminorm << " = " << formatDouble(e.value) << (e.diverged ? " (diverged)" : "") << "\n";
  return kExitPass;
}

int verdictExit(const std::vector<ExperimentReport>& reports, std::ostream& err) {
  int code = kExitPass;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Fail) return kExitFail;
    if (r.verdict == Verdict::Inconclusive) {
      err << "error: " << r.name << ": " << r.error << "\n";
      code = kExitNumericalError;
    }
  }
  return code;
}

SuiteContext suiteContext(const RunConfig& cfg, bool quick) {
  SuiteContext ctx;
  ctx.quick = quick;
  ctx.seed = cfg.seed;
  ctx.overrides = cfg.overrides;
  return ctx;
}

int runOneExperiment(const Flags& f, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolveConfig(f);
  const SuiteEntry* entry = findExperiment(f.experiment);
  if (!entry) throw ConfigError("experiment", "unknown experiment '" + f.experiment + "'");
  Emitter emit(cfg, describe({{"command", "experiment"}, {"name", f.experiment}, {"quick", f.quick ? "1" : "0"}}),
               out);
  const ExperimentReport r = runExperiment(*entry, suiteContext(cfg, f.quick));
  emit.writeJson(r.name + ".json", toJson(r));
  out << r.name << ": " << toString(r.verdict) << "\n";
  return verdictExit({r}, err);
}

int runSuite(const Flags& f, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolveConfig(f);
  Emitter emit(cfg, describe({{"command", "suite"}, {"quick", f.quick ? "1" : "0"}}), out);
  const SuiteContext ctx = suiteContext(cfg, f.quick);
  std::vector<const SuiteEntry*> selected;
  for (const auto& e : acceptanceSuite())
    if (cfg.experiments.empty() ||
        std::find(cfg.experiments.begin(), cfg.experiments.end(), e.name) != cfg.experiments.end())
      selected.push_back(&e);

  std::vector<ExperimentReport> reports;
  for (const SuiteEntry* e : selected) {
    reports.push_back(runExperiment(*e, ctx));
    const auto& r = reports.back();
    const Check h = r.headline();
    out << std::left << std::setw(24) << r.name << " " << std::setw(12) << toString(r.verdict) << " "
        << h.label << ": " << formatDouble(h.measured) << "\n";
    emit.writeJson(r.name + ".json", toJson(r));
  }
  auto meta = emit.header("suite");
  meta.push_back(std::string("quick = ") + (f.quick ? "1" : "0"));
  meta.push_back("seed = " + std::to_string(cfg.seed));
  emit.write("summary.csv", summaryCsv(reports, meta));
  emit.write("timing.csv", timingCsv(reports, meta));
  return verdictExit(reports, err);
}

}  // namespace

int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Generalized Mehler semigroups: densities, operators, seminorms and experiments",
               "mehler"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--config", f.configPath, "INI configuration file");
  app.add_option("--out", f.outputDir, "output directory (overrides config and $MEHLER_OUTPUT_DIR)");
  app.add_option("--a", f.drift, "drift A, row-major");
  app.add_option("--q", f.diffusion, "diffusion Q, row-major");
  app.add_option("--s", f.s, "stability index s in (0, 1]");
  app.add_option("--R", f.halfWidth, "grid half-width (one value or one per axis)");
  app.add_option("--n", f.points, "grid points per axis");
  app.add_option("--seed", f.seed, "random seed");

  auto* density = app.add_subcommand("density", "density g_t of mu_t as CSV");
  density->add_option("--t", f.t, "time")->capture_default_str();

  auto* apply = app.add_subcommand("apply", "P_t f on the grid as CSV");
  apply->add_option("--t", f.t, "time")->capture_default_str();
  auto* resolventCmd = app.add_subcommand("resolvent", "R(lambda) f on the grid as CSV");
  resolventCmd->add_option("--lambda", f.lambda, "lambda > 0")->capture_default_str();
  auto* seminorm = app.add_subcommand("seminorm", "seminorm estimate as JSON");
  seminorm->add_option("--kind", f.seminorm, "holder, zygmund, semigroup, resolvent or flow")
      ->capture_default_str();
  seminorm->add_option("--alpha", f.alpha, "exponent")->capture_default_str();
  for (auto* sub : {apply, resolventCmd, seminorm}) {
    sub->add_option("--f", f.function, "test function: const<c>, cos, bump, step, rational, abssin, weierstrass:<beta>")
        ->capture_default_str();
    sub->add_option("--extension", f.extension, "constant or periodic")->capture_default_str();
  }

  auto* experiment = app.add_subcommand("experiment", "one acceptance experiment as JSON");
  experiment->add_option("name", f.experiment, "experiment name")->required();
  experiment->add_flag("--quick", f.quick, "reduced sizes");
  auto* suite = app.add_subcommand("suite", "every acceptance experiment");
  suite->add_flag("--quick", f.quick, "reduced sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  try {
    if (density->parsed()) return runDensity(f, out);
    if (apply->parsed()) return runApply(f, out, false);
    if (resolventCmd->parsed()) return runApply(f, out, true);
    if (seminorm->parsed()) return runSeminorm(f, out);
    if (experiment->parsed()) return runOneExperiment(f, out, err);
    return runSuite(f, out, err);
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  }
}

}  // namespace mehler
