#include <doctest.h>

#include <string>

#include "xdipole/config.hpp"
#include "xdipole/errors.hpp"
#include "xdipole/geometry.hpp"

using namespace xdipole;

namespace {

const char* kCanonical = R"({
  "frequency_hz": 3.5e9,
  "spacing_m": 0.012848,
  "driven":    { "lx_m": 0.03521, "ly_m": 0.04017, "wx_m": 0.00295, "wy_m": 0.0033 },
  "parasitic": { "lx_m": 0.04383, "ly_m": 0.04464, "wx_m": 0.00414, "wy_m": 0.00329 },
  "load_reactance_ohm": -74.96,
  "segments_per_dipole": 20,
  "reference_impedance_ohm": 50.0
})";

const char* kScaledUnits = R"({
  "frequency_ghz": 3.5,
  "spacing_lambda": 0.15,
  "driven":    { "lx_mm": 35.21, "ly_mm": 40.17, "wx_mm": 2.95, "wy_mm": 3.30 },
  "parasitic": { "lx_mm": 43.83, "ly_mm": 44.64, "wx_mm": 4.14, "wy_mm": 3.29 },
  "load_reactance_ohm": -74.96
})";

}  // namespace

TEST_CASE("canonical SI config parses") {
  const DesignConfig c = parse_design_config(kCanonical, "test");
  CHECK(c.design.frequency == doctest::Approx(3.5e9));
  CHECK(c.design.lx1 == doctest::Approx(0.03521));
  CHECK(c.design.wy2 == doctest::Approx(0.00329));
  CHECK(c.design.spacing_d == doctest::Approx(0.012848));
  CHECK(c.segments_per_dipole == 20);
  CHECK(c.reference_impedance == doctest::Approx(50.0));
  CHECK(!c.spacing_given_in_lambda);
}

TEST_CASE("mm and GHz key variants convert on ingest") {
  const DesignConfig c = parse_design_config(kScaledUnits, "test");
  CHECK(c.design.frequency == doctest::Approx(3.5e9));
  CHECK(c.design.lx1 == doctest::Approx(35.21e-3));
  CHECK(c.design.wx2 == doctest::Approx(4.14e-3));
  CHECK(c.spacing_given_in_lambda);
  CHECK(c.design.spacing_d == doctest::Approx(0.15 * wavelength(3.5e9)));
  CHECK(c.segments_per_dipole == 20);  // default
  CHECK(c.reference_impedance == doctest::Approx(50.0));
}

TEST_CASE("missing required keys are rejected with the offending path") {
  std::string no_load(kScaledUnits);
  const auto pos = no_load.find("\"load_reactance_ohm\": -74.96");
  no_load.erase(pos, no_load.find('\n', pos) - pos);
  no_load = no_load.substr(0, no_load.rfind(',')) + "}";
  try {
    parse_design_config(no_load, "cfg.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("load_reactance_ohm") != std::string::npos);
  }
}

TEST_CASE("spacing must be given exactly once") {
  std::string both(kScaledUnits);
  both.insert(both.find("\"spacing_lambda\""), "\"spacing_m\": 0.0128,\n  ");
  CHECK_THROWS_AS(parse_design_config(both, "t"), ConfigError);

  std::string neither(kScaledUnits);
  const auto pos = neither.find("\"spacing_lambda\": 0.15,");
  neither.erase(pos, neither.find('\n', pos) + 1 - pos);
  CHECK_THROWS_AS(parse_design_config(neither, "t"), ConfigError);
}

TEST_CASE("duplicate unit spellings of one key are rejected") {
  std::string dup(kScaledUnits);
  dup.insert(dup.find("\"lx_mm\": 35.21"), "\"lx_m\": 0.03521, ");
  CHECK_THROWS_AS(parse_design_config(dup, "t"), ConfigError);
}

TEST_CASE("malformed JSON reports line and column") {
  const std::string bad = "{\n  \"frequency_hz\": 3.5e9,\n  oops\n}";
  try {
    parse_design_config(bad, "broken.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("broken.json:3") != std::string::npos);
  }
}

TEST_CASE("schema violations: odd segments, bad impedance, bad dimensions") {
  std::string odd(kCanonical);
  odd.replace(odd.find("\"segments_per_dipole\": 20"),
              std::string("\"segments_per_dipole\": 20").size(),
              "\"segments_per_dipole\": 7");
  CHECK_THROWS_AS(parse_design_config(odd, "t"), ConfigError);

  std::string badz(kCanonical);
  badz.replace(badz.find("\"reference_impedance_ohm\": 50.0"),
               std::string("\"reference_impedance_ohm\": 50.0").size(),
               "\"reference_impedance_ohm\": -1.0");
  CHECK_THROWS_AS(parse_design_config(badz, "t"), ConfigError);

  std::string wide(kCanonical);
  wide.replace(wide.find("\"wx_m\": 0.00295"),
               std::string("\"wx_m\": 0.00295").size(), "\"wx_m\": 0.2");
  CHECK_THROWS_AS(parse_design_config(wide, "t"), ConfigError);
}

TEST_CASE("design config round-trips through its JSON form") {
  const DesignConfig c = parse_design_config(kScaledUnits, "t");
  const DesignConfig rt = parse_design_config(design_config_to_json(c), "rt");
  CHECK(rt.design.lx1 == c.design.lx1);
  CHECK(rt.design.wy2 == c.design.wy2);
  CHECK(rt.design.spacing_d == c.design.spacing_d);
  CHECK(rt.design.load_reactance == c.design.load_reactance);
  CHECK(rt.design.frequency == c.design.frequency);
  CHECK(rt.segments_per_dipole == c.segments_per_dipole);
  CHECK(rt.spacing_given_in_lambda == c.spacing_given_in_lambda);
}

TEST_CASE("optimizer config parses with defaults") {
  const OptimizerConfig c = parse_optimizer_config(
      R"({"population": 16, "generations": 15, "seed": 3, "f0_hz": 3.5e9,
          "search_spacing": false})",
      "ga.json");
  CHECK(c.ga.population == 16);
  CHECK(c.ga.generations == 15);
  CHECK(c.ga.rng_seed == 3);
  CHECK(c.space.f0 == doctest::Approx(3.5e9));
  CHECK(!c.space.search_spacing);

  const OptimizerConfig d = parse_optimizer_config("{}", "ga.json");
  CHECK(d.ga.population == 40);
  CHECK(d.ga.generations == 60);

  CHECK_THROWS_AS(parse_optimizer_config(R"({"population": 3})", "t"),
                  ConfigError);
}

TEST_CASE("fnv1a64 hashes are stable and distinct") {
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64("a") != fnv1a64("b"));
  CHECK(fnv1a64_hex("abc") == fnv1a64_hex("abc"));
  CHECK(fnv1a64_hex("abc").size() == 16);
}
