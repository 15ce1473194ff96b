#ifndef ZSLAB_CONFIG_HPP_
#define ZSLAB_CONFIG_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zslab/matrix.hpp"

namespace zslab {

/// Parsed value of one config entry: a scalar token or a (possibly nested)
/// bracketed list. Tokens keep their spelling; typed access converts on
/// demand and reports the config line on failure.
struct ConfigValue {
  bool is_list = false;
  std::string token;
  std::vector<ConfigValue> items;
  int line = -1;

  std::int64_t as_int() const;
  double as_double() const;
  Complex as_complex() const;
  const std::string& as_name() const;
  const std::vector<ConfigValue>& as_list() const;
  /// d x d complex matrix from a nested list of rows.
  CMat as_matrix() const;
};

/// One `[type name]` section with its key/value entries.
struct ConfigSection {
  std::string type;
  std::string name;
  int line = -1;
  std::map<std::string, ConfigValue> entries;

  bool has(const std::string& key) const { return entries.count(key) != 0; }
  const ConfigValue& at(const std::string& key) const;
};

/// A validated run configuration. Window parameters, tolerance and suite
/// selection live in the singleton [windows] and [run] sections; object
/// definitions are named sections referenced by name.
struct RunConfig {
  std::vector<ConfigSection> sections;
  std::string raw_text;

  int radius_p = 3;
  int radius_g = 2;
  int fock_ball = 3;
  double tolerance = 1e-9;
  int max_dim = 4096;
  std::vector<std::string> suites;

  const ConfigSection* find_by_name(const std::string& name) const;
  const ConfigSection* find_unique(const std::string& type) const;
  /// Named section that must exist; throws ConfigError naming the reference.
  const ConfigSection& resolve(const std::string& name, int from_line) const;
};

/// Parses and validates the sectioned key-value format (see the README for
/// the grammar). Unknown section types, unknown keys, unresolved references
/// and non-positive windows are rejected with line/section diagnostics
/// (ConfigError).
RunConfig parse_config(const std::string& text);

/// FNV-1a hash of the raw text, the reproducibility key in reports.
std::string config_hash(const std::string& text);

/// All suite names in canonical order.
const std::vector<std::string>& all_suites();

}  // namespace zslab

#endif  // ZSLAB_CONFIG_HPP_
