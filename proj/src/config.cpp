#include "mehler/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "mehler/experiments.hpp"

namespace mehler {

namespace {

namespace pt = boost::property_tree;

const std::string kExperimentPrefix = "experiment.";

// Drops an inline "; comment" or "# comment" and surrounding whitespace.
std::string trim(std::string s) {
  for (const char* mark : {" ;", "\t;", " #", "\t#"})
    if (const auto pos = s.find(mark); pos != std::string::npos) s.erase(pos);
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> splitList(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char c : text + ",") {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  return out;
}

double parseNumber(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw ConfigError(field, "not a finite number: '" + text + "'");
  return v;
}

int parseCount(const std::string& text, const std::string& field) {
  const double v = parseNumber(text, field);
  if (v != std::floor(v) || v < 1 || v > 1 << 30)
    throw ConfigError(field, "not a positive integer: '" + text + "'");
  return static_cast<int>(v);
}

void checkKeys(const pt::ptree& section, const std::string& name,
               const std::set<std::string>& allowed) {
  for (const auto& [key, value] : section)
    if (!allowed.contains(key)) throw ConfigError(name + "." + key, "unknown key");
}

Matrix square(const std::vector<double>& values, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = values[static_cast<std::size_t>(i * n + j)];
  return m;
}

}  // namespace

std::vector<double> parseNumberList(const std::string& text, const std::string& field) {
  std::vector<double> out;
  for (const auto& item : splitList(text)) out.push_back(parseNumber(item, field));
  if (out.empty()) throw ConfigError(field, "empty list");
  return out;
}

int RunConfig::dim() const {
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(drift.size()))));
  return n * n == static_cast<int>(drift.size()) ? n : 0;
}

SemigroupSpec RunConfig::spec() const {
  validate();
  return SemigroupSpec(square(drift, dim()), square(diffusion, dim()), s);
}

Grid RunConfig::grid() const {
  validate();
  const int n = dim();
  std::vector<double> r = halfWidth;
  std::vector<int> p = points;
  if (r.size() == 1) r.assign(static_cast<std::size_t>(n), r.front());
  if (p.size() == 1) p.assign(static_cast<std::size_t>(n), p.front());
  return Grid(r, p);
}

void RunConfig::validate() const {
  const int n = dim();
  if (n < 1 || n > 3)
    throw ConfigError("spec.drift", "needs 1, 4 or 9 entries (row-major N×N, N ≤ 3), got " +
                                        std::to_string(drift.size()));
  if (diffusion.size() != drift.size())
    throw ConfigError("spec.diffusion", "needs " + std::to_string(drift.size()) + " entries to match drift");
  try {
    SemigroupSpec(square(drift, n), square(diffusion, n), s);
  } catch (const InvalidArgument& e) {
    const std::string what = e.what();
    if (what.find("stability") != std::string::npos) throw ConfigError("spec.s", what);
    if (what.find("drift") != std::string::npos && what.find("diffusion") == std::string::npos)
      throw ConfigError("spec.drift", what);
    throw ConfigError("spec.diffusion", what);
  }
  if (halfWidth.size() != 1 && halfWidth.size() != static_cast<std::size_t>(n))
    throw ConfigError("grid.halfWidth", "give one value or one per axis");
  if (points.size() != 1 && points.size() != static_cast<std::size_t>(n))
    throw ConfigError("grid.points", "give one value or one per axis");
  for (double r : halfWidth)
    if (!(r > 0.0)) throw ConfigError("grid.halfWidth", "must be positive");
  for (int p : points)
    if (p < 8 || (p & (p - 1)) != 0)
      throw ConfigError("grid.points", "must be a power of two >= 8, got " + std::to_string(p));
  if (outputDir.empty()) throw ConfigError("run.outputDir", "must not be empty");
  for (const auto& name : experiments)
    if (!findExperiment(name)) throw ConfigError("run.experiments", "unknown experiment '" + name + "'");
  for (const auto& [name, values] : overrides) {
    if (!findExperiment(name))
      throw ConfigError(kExperimentPrefix + name, "unknown experiment '" + name + "'");
    for (const auto& [key, value] : values) parseNumber(value, kExperimentPrefix + name + "." + key);
  }
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  auto list = [&](const auto& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out << ",";
      if constexpr (std::is_same_v<std::decay_t<decltype(values[i])>, double>)
        out << formatDouble(values[i]);
      else
        out << values[i];
    }
    out << "\n";
  };
  out << "spec.drift=";
  list(drift);
  out << "spec.diffusion=";
  list(diffusion);
  out << "spec.s=" << formatDouble(s) << "\n";
  out << "grid.halfWidth=";
  list(halfWidth);
  out << "grid.points=";
  list(points);
  out << "run.seed=" << seed << "\n";
  out << "run.experiments=";
  list(experiments);
  for (const auto& [name, values] : overrides)
    for (const auto& [key, value] : values)
      out << kExperimentPrefix << name << "." << key << "=" << value << "\n";
  return out.str();
}

RunConfig parseConfig(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source, e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  RunConfig cfg;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) throw ConfigError(section, "key outside any section");
    if (section == "spec") {
      checkKeys(body, section, {"drift", "diffusion", "s"});
      if (auto v = body.get_optional<std::string>("drift")) cfg.drift = parseNumberList(trim(*v), "spec.drift");
      if (auto v = body.get_optional<std::string>("diffusion"))
        cfg.diffusion = parseNumberList(trim(*v), "spec.diffusion");
      if (auto v = body.get_optional<std::string>("s")) cfg.s = parseNumber(trim(*v), "spec.s");
    } else if (section == "grid") {
      checkKeys(body, section, {"halfWidth", "points"});
      if (auto v = body.get_optional<std::string>("halfWidth"))
        cfg.halfWidth = parseNumberList(trim(*v), "grid.halfWidth");
      if (auto v = body.get_optional<std::string>("points")) {
        cfg.points.clear();
        for (const auto& item : splitList(trim(*v))) cfg.points.push_back(parseCount(item, "grid.points"));
      }
    } else if (section == "run") {
      checkKeys(body, section, {"seed", "outputDir", "experiments"});
      if (auto v = body.get_optional<std::string>("seed")) {
        const double seed = parseNumber(trim(*v), "run.seed");
        if (seed != std::floor(seed) || seed < 0 || seed > 9.007199254740992e15)
          throw ConfigError("run.seed", "must be a non-negative integer");
        cfg.seed = static_cast<std::uint64_t>(seed);
      }
      if (auto v = body.get_optional<std::string>("outputDir")) cfg.outputDir = trim(*v);
      if (auto v = body.get_optional<std::string>("experiments")) {
        cfg.experiments = splitList(trim(*v));
        if (cfg.experiments == std::vector<std::string>{"all"}) cfg.experiments.clear();
      }
    } else if (section.rfind(kExperimentPrefix, 0) == 0) {
      auto& values = cfg.overrides[section.substr(kExperimentPrefix.size())];
      for (const auto& [key, value] : body) values[key] = trim(value.data());
    } else {
      throw ConfigError(section, "unknown section");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  return parseConfig(in, path);
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hashHex(std::uint64_t hash) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, hash >>= 4) out[static_cast<std::size_t>(i)] = digits[hash & 0xf];
  return out;
}

}  // namespace mehler
