#pragma once

// Plain-text scenario configuration:
//
//   # comment
//   [section]
//   key = value
//
// Profile-valued settings use repeatable keys under a prefix, e.g.
//   a11.constant = 2
//   a11.cos = 1 : 1            (amplitude : frequencies [: phase])
//   a11.decay = 1 : exp : 1    (amplitude : exp|gauss : scale)

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "homog/effective.hpp"
#include "homog/experiments.hpp"

namespace homog {

struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

class ConfigDocument {
 public:
  static ConfigDocument parse(std::string_view text, const std::string& source = "<config>");
  static ConfigDocument load(const std::string& path);

  /// "section.key=value"; replaces every existing entry with that key.
  void apply_override(std::string_view assignment);
  void set(const std::string& section, const std::string& key, const std::string& value);
  void add(const std::string& section, const std::string& key, const std::string& value);

  /// Last value wins.
  std::optional<std::string> get(std::string_view section, std::string_view key) const;
  std::vector<std::string> get_all(std::string_view section, std::string_view key) const;
  bool has_prefix(std::string_view section, std::string_view prefix) const;

  const std::vector<std::pair<std::string, std::vector<ConfigEntry>>>& sections() const noexcept {
    return sections_;
  }
  std::string to_string() const;

 private:
  std::vector<ConfigEntry>& section(const std::string& name);
  std::vector<std::pair<std::string, std::vector<ConfigEntry>>> sections_;
  std::string source_ = "<config>";
};

struct CellSettings {
  std::vector<double> x;             // sample point in Q (default: centre)
  std::size_t direction = 1;         // 1-based
  std::string mode = "auto";         // auto | periodic | truncated
  double R = 8.0;
  double points_per_unit = 64.0;     // truncated boxes: cells = 2 R points_per_unit
  double tolerance = 1e-10;
  AveragingWindow window = AveragingWindow::full();
  std::vector<double> radii{4, 8, 16, 32};
  std::string reference = "auto";    // auto | oracle | periodic | largest-R
  std::vector<double> oracle;        // row-major tensor entries
  AveragingWindow study_window = AveragingWindow::interior();
  std::size_t periodic_cells = 1024;
};

struct SpdeSettings {
  std::string form = "oscillatory";  // oscillatory | homogenized
  double epsilon = 0.0;              // 0: first entry of the scenario schedule
  std::size_t path = 0;
  bool snapshots = false;
};

struct ResolvedConfig {
  Scenario scenario;
  CellSettings cell;
  SpdeSettings spde;
};

/// Type-checks every key and builds the scenario (preset first, then explicit keys).
/// Throws ConfigError with the offending key.
ResolvedConfig resolve(const ConfigDocument& doc);

/// Fully explicit document reproducing `cfg` (numbers in round-trip form).
ConfigDocument to_document(const ResolvedConfig& cfg);

/// "1/8", "0.125", "1e-3".
double parse_number(std::string_view text);
std::vector<double> parse_list(std::string_view text);
std::string format_number(double v);

}  // namespace homog
