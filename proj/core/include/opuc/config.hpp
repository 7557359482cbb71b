#ifndef OPUC_CONFIG_HPP
#define OPUC_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

namespace opuc {

/// One suite invocation: which verification suite, on which weight family,
/// with which parameters and maximal degree.
struct SuiteRequest {
  std::string suite;
  std::string family = "random";             // cj | sz | mb | rs | lebesgue | random
  std::map<std::string, double> params;      // a, b, t, q as applicable
  int n = 8;
};

struct Config {
  std::vector<SuiteRequest> suites;
  int grid_m = 0;  // 0 = automatic per-family grids
};

/// Covers every suite at the canonical verification parameters.
Config default_config();

/// Reads .json or .toml (chosen by extension). Malformed input throws IoError
/// with a line/position location.
Config parse_config_file(const std::string& path);

/// Parses the TOML subset used by the config format (tables, arrays of
/// tables, strings, numbers, booleans, flat arrays).
Config parse_config_toml(const std::string& text);

Config parse_config_json(const std::string& text);

/// FNV-1a hash of the canonical serialization; runtime never contributes.
std::string config_hash(const Config& c);

}  // namespace opuc

#endif  // OPUC_CONFIG_HPP
