#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cli/output.hpp"
#include "qmetro/bounds.hpp"
#include "qmetro/errors.hpp"
#include "qmetro/optimizer.hpp"

namespace qmetro::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, std::string_view text) {
  const std::string s = trim(text);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("cannot read '" + s + "' as a number for " + key);
  }
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v[i]);
  }
  return out;
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("range must be start:stop:count, got '" + text + "'");
    const double lo = parse_double("range", parts[0]);
    const double hi = parse_double("range", parts[1]);
    const double count = parse_double("range", parts[2]);
    if (!(count >= 1) || std::floor(count) != count) throw ConfigError("range count must be a positive integer");
    if (!(lo > 0 && hi > 0)) throw ConfigError("log range bounds must be positive");
    return log_space(lo, hi, static_cast<int>(count));
  }
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_double("list", p));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "gamma", "alpha", "t1",  "t2",     "epsilon", "omega", "n",     "geometry",   "mu",
      "db",    "t",     "schedule", "t0", "mu0",    "format", "out",  "seed", "depth",
      "convention"};
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "gamma") {
    cfg.gamma = parse_double(key, v);
  } else if (key == "alpha") {
    const auto parts = split(v, ',');
    if (parts.size() != 3) throw ConfigError("alpha takes three comma-separated weights");
    for (int i = 0; i < 3; ++i) cfg.alpha[i] = parse_double(key, parts[i]);
  } else if (key == "t1") {
    cfg.t1 = parse_double(key, v);
  } else if (key == "t2") {
    cfg.t2 = parse_double(key, v);
  } else if (key == "epsilon") {
    cfg.epsilon = parse_double(key, v);
  } else if (key == "omega") {
    cfg.omega = parse_double(key, v);
  } else if (key == "n") {
    cfg.n = parse_number_list(v);
    for (double& x : cfg.n) {
      const double r = std::round(x);
      if (!(r >= 1) || std::abs(r - x) > 1e-9 * std::max(1.0, x)) {
        throw ConfigError("particle numbers must be integers >= 1");
      }
      x = r;
    }
  } else if (key == "geometry") {
    try {
      cfg.geometry = parse_geometry(v);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "mu") {
    cfg.mu = parse_number_list(v);
  } else if (key == "db") {
    // Decibels go negative, so a range here is linear: start:stop:count.
    const auto parts = split(v, ':');
    if (parts.size() == 3) {
      const double lo = parse_double(key, parts[0]), hi = parse_double(key, parts[1]);
      const double count = parse_double(key, parts[2]);
      if (!(count >= 1) || std::floor(count) != count) throw ConfigError("db range count must be a positive integer");
      cfg.db.clear();
      for (int i = 0; i < count; ++i) cfg.db.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    } else {
      cfg.db = parse_number_list(v);
    }
  } else if (key == "t") {
    cfg.t = parse_number_list(v);
  } else if (key == "schedule") {
    if (v != "b" && v.rfind("a:", 0) != 0) throw ConfigError("schedule must be 'b' or 'a:<s>'");
    if (v != "b") parse_double(key, v.substr(2));
    cfg.schedule = v;
  } else if (key == "t0") {
    cfg.schedule_t0 = parse_double(key, v);
  } else if (key == "mu0") {
    cfg.schedule_mu0 = parse_double(key, v);
  } else if (key == "format") {
    if (v == "csv") {
      cfg.format = Format::csv;
    } else if (v == "json") {
      cfg.format = Format::json;
    } else {
      throw ConfigError("format must be csv or json");
    }
  } else if (key == "out") {
    cfg.out = v;
  } else if (key == "seed") {
    cfg.seed = static_cast<unsigned long>(parse_double(key, v));
  } else if (key == "depth") {
    if (v != "fast" && v != "full") throw ConfigError("depth must be fast or full");
    cfg.depth = v;
  } else if (key == "convention") {
    if (v == "wineland") {
      cfg.convention = SqueezingConvention::wineland;
    } else if (v == "variance-only") {
      cfg.convention = SqueezingConvention::variance_only;
    } else {
      throw ConfigError("convention must be wineland or variance-only");
    }
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
  cfg.explicit_keys.insert(key);
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    const std::string body = trim(line.substr(0, hash));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(path + ":" + std::to_string(lineno) + ": bad section");
      section = trim(body.substr(1, body.size() - 2));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(body.substr(0, eq));
    if (const auto dot = key.rfind('.'); dot != std::string::npos) key = key.substr(dot + 1);
    try {
      apply_setting(cfg, key, body.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void RunConfig::resolve() {
  if (is_set("mu") && is_set("db")) throw ConfigError("give either mu or db, not both");
  if (is_set("mu")) db.clear();
  if (t1.has_value() != t2.has_value()) throw ConfigError("t1 and t2 must be given together");
  if (t1) {
    if (is_set("alpha") || is_set("gamma") || is_set("epsilon")) {
      throw ConfigError("t1/t2 replace gamma, alpha and epsilon; give one or the other");
    }
    try {
      const auto spec = depolarization_mapping(*t1, *t2);
      gamma = spec.gamma;
      epsilon = spec.epsilon;
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  if (epsilon) {
    if (is_set("alpha")) throw ConfigError("give either alpha or epsilon, not both");
    if (!(*epsilon >= 0 && *epsilon <= 1)) throw ConfigError("epsilon must lie in [0, 1]");
    alpha = {1.0 - *epsilon, 0.0, *epsilon};
  }
  if (!schedule.empty() && (is_set("t") || is_set("mu") || is_set("db"))) {
    throw ConfigError("a schedule fixes both t and mu; drop --t/--mu/--db");
  }
  const bool unsqueezed = geometry == Geometry::css_x || geometry == Geometry::css_y ||
                          geometry == Geometry::ghz;
  if (unsqueezed) {
    const bool nonzero = std::any_of(mu.begin(), mu.end(), [](double m) { return m != 0; }) ||
                         (is_set("db") && std::any_of(db.begin(), db.end(), [](double d) { return d != 0; }));
    if (nonzero) throw ConfigError("css and ghz probes are unsqueezed; mu must be 0");
    mu = {0.0};
    db.clear();
  }
  for (double x : n) {
    if (!(x >= 1)) throw ConfigError("particle numbers must be >= 1");
  }
  for (double x : t) {
    if (!(x > 0)) throw ConfigError("interrogation times must be > 0");
  }
  try {
    noise().validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

NoiseModel RunConfig::noise() const { return {gamma, alpha[0], alpha[1], alpha[2]}; }

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("gamma", format_number(gamma));
  e.emplace_back("alpha", join({alpha[0], alpha[1], alpha[2]}));
  if (t1) e.emplace_back("t1", format_number(*t1));
  if (t2) e.emplace_back("t2", format_number(*t2));
  if (epsilon) e.emplace_back("epsilon", format_number(*epsilon));
  e.emplace_back("omega", format_number(omega));
  e.emplace_back("n", join(n));
  e.emplace_back("geometry", to_string(geometry));
  if (!mu.empty()) e.emplace_back("mu", join(mu));
  if (!db.empty()) e.emplace_back("db", join(db));
  if (schedule.empty()) {
    e.emplace_back("t", join(t));
  } else {
    e.emplace_back("schedule", schedule);
    if (schedule != "b") {
      e.emplace_back("t0", format_number(schedule_t0.value_or(10.0 / gamma)));
      e.emplace_back("mu0", format_number(schedule_mu0));
    }
  }
  e.emplace_back("convention", to_string(convention));
  e.emplace_back("format", format == Format::csv ? "csv" : "json");
  e.emplace_back("out", out.empty() ? "-" : out);
  e.emplace_back("seed", std::to_string(seed));
  e.emplace_back("depth", depth);
  return e;
}

}  // namespace qmetro::cli
