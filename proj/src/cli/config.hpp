#pragma once

#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmetro/channel.hpp"
#include "qmetro/probes.hpp"

namespace qmetro::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct RunConfig {
  double gamma{67.0};
  std::array<double, 3> alpha{1.0, 0.0, 0.0};
  std::optional<double> t1, t2;
  std::optional<double> epsilon;
  double omega{3.6e-3};
  std::vector<double> n{1e11};
  Geometry geometry{Geometry::scenario_b};
  std::vector<double> mu;
  std::vector<double> db{-8.0};
  std::vector<double> t{1e-3};
  /// "", "b" or "a:<s>"
  std::string schedule;
  std::optional<double> schedule_t0;  // default 10 / gamma
  double schedule_mu0{1.0};
  Format format{Format::csv};
  std::string out;
  unsigned long seed{1234};
  std::string depth{"fast"};
  SqueezingConvention convention{SqueezingConvention::wineland};

  /// Keys set by a config file or flag rather than left at their defaults.
  std::set<std::string> explicit_keys;

  bool is_set(const std::string& key) const { return explicit_keys.count(key) != 0; }

  /// Cross-field checks and T1/T2 or epsilon resolution. Throws ConfigError.
  void resolve();
  NoiseModel noise() const;
  /// Fully resolved settings, in a fixed order.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// All recognised keys, for config files and flags alike.
const std::vector<std::string>& config_keys();

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// key = value lines, optional [section] headers, '#' or ';' comments.
/// Keys may be written bare or as section.key.
void load_config_file(RunConfig& cfg, const std::string& path);

/// "1e11", "10,100,1000" or "start:stop:count" (log-spaced, inclusive).
std::vector<double> parse_number_list(const std::string& text);

}  // namespace qmetro::cli
