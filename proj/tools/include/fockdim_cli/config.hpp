#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "fockdim/criteria.hpp"
#include "fockdim/measure.hpp"

namespace fockdim::cli {

/// Monte Carlo settings of the [mc] table.
struct McConfig {
  std::uint64_t seed = 42;
  std::size_t samples = 1000000;
  int boundary_samples = 256;
};

struct RunConfig {
  QuadConfig quad;
  McConfig mc;
  CriteriaConfig criteria;
};

/// Values of the TOML subset: strings, integers, floats and booleans.
using TomlValue = std::variant<std::string, long long, double, bool>;
/// "table.key" -> value.
using TomlTable = std::map<std::string, TomlValue, std::less<>>;

/// Parses `[table]` headers, `key = value` lines and `#` comments. Arrays,
/// inline tables and multi-line strings are rejected. Throws SyntaxError.
TomlTable parse_toml(std::string_view text);

/// Applies [quadrature], [mc] and [criteria] keys to `cfg`. Unknown keys and
/// ill-typed values throw InvalidArgument.
void apply_toml(const TomlTable& table, RunConfig& cfg);

/// Reads and applies a config file. Syntax errors carry the file name and position.
void load_config_file(const std::string& path, RunConfig& cfg);

}  // namespace fockdim::cli
