#include "xdipole/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "xdipole/errors.hpp"

namespace xdipole {

namespace {

using nlohmann::json;

std::pair<int, int> line_col(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    std::ostringstream msg;
    msg << origin << ":" << line << ":" << col << ": " << e.what();
    throw ConfigError(msg.str());
  }
}

[[noreturn]] void fail(const std::string& origin, const std::string& path,
                       const std::string& what) {
  throw ConfigError(origin + ": " + path + ": " + what);
}

double require_number(const json& j, const std::string& origin,
                      const std::string& path) {
  if (!j.is_number()) fail(origin, path, "expected a number");
  return j.get<double>();
}

/// Reads a quantity that may be given under its SI key or a scaled
/// variant (e.g. "spacing_m" / "spacing_mm"). Exactly one spelling must
/// be present when required.
struct ScaledKey {
  std::string si_suffix;
  std::string alt_suffix;
  double alt_factor;
};

std::optional<double> read_scaled(const json& obj, const std::string& base,
                                  const ScaledKey& scale,
                                  const std::string& origin,
                                  const std::string& path) {
  const std::string si_key = base + scale.si_suffix;
  const std::string alt_key = base + scale.alt_suffix;
  const bool has_si = obj.contains(si_key);
  const bool has_alt = obj.contains(alt_key);
  if (has_si && has_alt)
    fail(origin, path, "give exactly one of \"" + si_key + "\" / \"" + alt_key + "\"");
  if (has_si) return require_number(obj.at(si_key), origin, path + "/" + si_key);
  if (has_alt)
    return scale.alt_factor *
           require_number(obj.at(alt_key), origin, path + "/" + alt_key);
  return std::nullopt;
}

const ScaledKey kMeters{"_m", "_mm", 1e-3};
const ScaledKey kHertz{"_hz", "_ghz", 1e9};

double require_scaled(const json& obj, const std::string& base,
                      const ScaledKey& scale, const std::string& origin,
                      const std::string& path) {
  const auto v = read_scaled(obj, base, scale, origin, path);
  if (!v)
    fail(origin, path,
         "missing required key \"" + base + scale.si_suffix + "\" (or \"" +
             base + scale.alt_suffix + "\")");
  return *v;
}

struct ElementDims {
  double lx, ly, wx, wy;
};

ElementDims read_element(const json& root, const std::string& name,
                         const std::string& origin) {
  if (!root.contains(name)) fail(origin, "/", "missing required object \"" + name + "\"");
  const json& obj = root.at(name);
  if (!obj.is_object()) fail(origin, "/" + name, "expected an object");
  const std::string path = "/" + name;
  ElementDims d{};
  d.lx = require_scaled(obj, "lx", kMeters, origin, path);
  d.ly = require_scaled(obj, "ly", kMeters, origin, path);
  d.wx = require_scaled(obj, "wx", kMeters, origin, path);
  d.wy = require_scaled(obj, "wy", kMeters, origin, path);
  return d;
}

}  // namespace

DesignConfig parse_design_config(std::string_view json_text,
                                 const std::string& origin) {
  const json root = parse_json(json_text, origin);
  if (!root.is_object()) fail(origin, "/", "top level must be a JSON object");

  DesignConfig config;
  config.design.frequency = require_scaled(root, "frequency", kHertz, origin, "/");
  if (!(config.design.frequency > 0.0))
    fail(origin, "/frequency_hz", "frequency must be positive");

  const auto spacing_m = read_scaled(root, "spacing", kMeters, origin, "/");
  const bool has_lambda = root.contains("spacing_lambda");
  if (spacing_m.has_value() == has_lambda)
    fail(origin, "/",
         "give exactly one of \"spacing_m\"/\"spacing_mm\" or \"spacing_lambda\"");
  if (has_lambda) {
    config.spacing_given_in_lambda = true;
    config.spacing_lambda =
        require_number(root.at("spacing_lambda"), origin, "/spacing_lambda");
    config.design.spacing_d =
        config.spacing_lambda * wavelength(config.design.frequency);
  } else {
    config.design.spacing_d = *spacing_m;
  }

  const ElementDims driven = read_element(root, "driven", origin);
  const ElementDims parasitic = read_element(root, "parasitic", origin);
  config.design.lx1 = driven.lx;
  config.design.ly1 = driven.ly;
  config.design.wx1 = driven.wx;
  config.design.wy1 = driven.wy;
  config.design.lx2 = parasitic.lx;
  config.design.ly2 = parasitic.ly;
  config.design.wx2 = parasitic.wx;
  config.design.wy2 = parasitic.wy;

  if (!root.contains("load_reactance_ohm"))
    fail(origin, "/", "missing required key \"load_reactance_ohm\"");
  config.design.load_reactance =
      require_number(root.at("load_reactance_ohm"), origin, "/load_reactance_ohm");

  if (root.contains("segments_per_dipole")) {
    const json& seg = root.at("segments_per_dipole");
    if (!seg.is_number_integer())
      fail(origin, "/segments_per_dipole", "expected an integer");
    config.segments_per_dipole = seg.get<int>();
    if (config.segments_per_dipole < 8 || config.segments_per_dipole % 2 != 0)
      fail(origin, "/segments_per_dipole", "must be even and >= 8");
  }
  if (root.contains("reference_impedance_ohm")) {
    config.reference_impedance =
        require_number(root.at("reference_impedance_ohm"), origin,
                       "/reference_impedance_ohm");
    if (!(config.reference_impedance > 0.0))
      fail(origin, "/reference_impedance_ohm", "must be positive");
  }

  try {
    config.design.validate();
  } catch (const std::domain_error& e) {
    fail(origin, "/", e.what());
  }
  return config;
}

DesignConfig load_design_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_design_config(buf.str(), path.string());
}

std::string design_config_to_json(const DesignConfig& config) {
  json root;
  root["frequency_hz"] = config.design.frequency;
  if (config.spacing_given_in_lambda)
    root["spacing_lambda"] = config.spacing_lambda;
  else
    root["spacing_m"] = config.design.spacing_d;
  root["driven"] = {{"lx_m", config.design.lx1},
                    {"ly_m", config.design.ly1},
                    {"wx_m", config.design.wx1},
                    {"wy_m", config.design.wy1}};
  root["parasitic"] = {{"lx_m", config.design.lx2},
                       {"ly_m", config.design.ly2},
                       {"wx_m", config.design.wx2},
                       {"wy_m", config.design.wy2}};
  root["load_reactance_ohm"] = config.design.load_reactance;
  root["segments_per_dipole"] = config.segments_per_dipole;
  root["reference_impedance_ohm"] = config.reference_impedance;
  return root.dump(2) + "\n";
}

OptimizerConfig parse_optimizer_config(std::string_view json_text,
                                       const std::string& origin) {
  const json root = parse_json(json_text, origin);
  if (!root.is_object()) fail(origin, "/", "top level must be a JSON object");

  OptimizerConfig config;
  if (root.contains("population")) {
    if (!root.at("population").is_number_integer())
      fail(origin, "/population", "expected an integer");
    config.ga.population = root.at("population").get<int>();
  }
  if (root.contains("generations")) {
    if (!root.at("generations").is_number_integer())
      fail(origin, "/generations", "expected an integer");
    config.ga.generations = root.at("generations").get<int>();
  }
  if (root.contains("seed")) {
    if (!root.at("seed").is_number_integer())
      fail(origin, "/seed", "expected an integer");
    config.ga.rng_seed = root.at("seed").get<std::uint64_t>();
  }
  const auto f0 = read_scaled(root, "f0", kHertz, origin, "/");
  if (f0) {
    if (!(*f0 > 0.0)) fail(origin, "/f0_hz", "must be positive");
    config.space.f0 = *f0;
  }
  if (root.contains("search_spacing")) {
    if (!root.at("search_spacing").is_boolean())
      fail(origin, "/search_spacing", "expected a boolean");
    config.space.search_spacing = root.at("search_spacing").get<bool>();
  }
  try {
    config.ga.validate();
  } catch (const std::invalid_argument& e) {
    fail(origin, "/", e.what());
  }
  return config;
}

OptimizerConfig load_optimizer_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read optimizer config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_optimizer_config(buf.str(), path.string());
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string fnv1a64_hex(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace xdipole
