#ifndef XDIPOLE_CONFIG_HPP
#define XDIPOLE_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "xdipole/geometry.hpp"
#include "xdipole/optimizer.hpp"

namespace xdipole {

/// Parsed design configuration: the design itself plus solver settings.
struct DesignConfig {
  ArrayDesign design;
  int segments_per_dipole = 20;
  double reference_impedance = 50.0;
  bool spacing_given_in_lambda = false;
  double spacing_lambda = 0.0;  ///< meaningful when spacing_given_in_lambda
};

/// Parses the design config JSON. SI keys are canonical; *_mm and *_ghz
/// variants are accepted and converted on ingest. Exactly one of
/// spacing_m / spacing_mm / spacing_lambda must be present. Throws
/// ConfigError with a line- or path-precise message.
DesignConfig parse_design_config(std::string_view json_text,
                                 const std::string& origin);

/// Loads and parses a design config file. Throws ConfigError if the file
/// cannot be read.
DesignConfig load_design_config(const std::filesystem::path& path);

/// Serializes a design config with canonical SI keys (round-trips through
/// parse_design_config).
std::string design_config_to_json(const DesignConfig& config);

/// Optimizer run settings: operator config plus the search space.
struct OptimizerConfig {
  GAConfig ga;
  SearchSpace space;
};

/// Parses the optimizer JSON {"population","generations","seed","f0_hz",
/// "search_spacing"}; unspecified fields keep their defaults.
OptimizerConfig parse_optimizer_config(std::string_view json_text,
                                       const std::string& origin);
OptimizerConfig load_optimizer_config(const std::filesystem::path& path);

/// FNV-1a 64-bit content hash, used for config fingerprints in manifests.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace xdipole

#endif  // XDIPOLE_CONFIG_HPP
