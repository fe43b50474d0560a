// xdipole: thin-wire MoM analysis and GA synthesis of a two-element
// crossed-dipole end-fire array.
//
// Subcommands: analyze, sweep, optimize, limits. All outputs are CSV/JSON
// files in the --out directory plus a manifest recording how they were
// produced. Exit codes: 0 ok, 2 config error, 3 numerical error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "xdipole/config.hpp"
#include "xdipole/constants.hpp"
#include "xdipole/errors.hpp"
#include "xdipole/farfield.hpp"
#include "xdipole/geometry.hpp"
#include "xdipole/metrics.hpp"
#include "xdipole/optimizer.hpp"
#include "xdipole/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace xdipole;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << content;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

json design_config_json(const DesignConfig& config) {
  return json::parse(design_config_to_json(config));
}

struct Overrides {
  std::optional<double> frequency;
  std::optional<int> segments;
  bool swap_elements = false;
};

DesignConfig apply_overrides(DesignConfig config, const Overrides& ov) {
  if (ov.segments) {
    if (*ov.segments < 8 || *ov.segments % 2 != 0)
      throw ConfigError("--segments must be even and >= 8");
    config.segments_per_dipole = *ov.segments;
  }
  // --freq probes the fixed geometry at another frequency: spacing given
  // in lambda was already resolved to meters at the config's frequency.
  if (ov.frequency) {
    if (!(*ov.frequency > 0.0)) throw ConfigError("--freq must be positive");
    config.design.frequency = *ov.frequency;
  }
  if (ov.swap_elements) config.design = config.design.swapped_elements();
  return config;
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const fs::path& config_path, const std::string& config_text,
                    const DesignConfig& resolved, const json& parameters,
                    std::optional<std::uint64_t> seed = std::nullopt,
                    const std::optional<std::string>& extra_hash_name = std::nullopt,
                    const std::optional<std::string>& extra_hash = std::nullopt) {
  json manifest;
  manifest["tool"] = "xdipole";
  manifest["version"] = kVersion;
  manifest["command"] = command;
  manifest["config_path"] = config_path.string();
  manifest["config_hash"] = "fnv1a64:" + fnv1a64_hex(config_text);
  if (extra_hash_name) manifest[*extra_hash_name] = "fnv1a64:" + *extra_hash;
  if (seed)
    manifest["seed"] = *seed;
  else
    manifest["seed"] = nullptr;
  manifest["mesh"] = {{"segments_per_dipole", resolved.segments_per_dipole}};
  manifest["parameters"] = parameters;
  manifest["resolved_config"] = design_config_json(resolved);
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

void write_pattern_csv(const fs::path& path, const PatternGrid& grid) {
  std::ostringstream csv;
  csv << "theta_deg,phi_deg,e_theta_re,e_theta_im,e_phi_re,e_phi_im,"
         "d_dbi,g_lhcp_realized_db,g_rhcp_realized_db,ar_db\n";
  auto emit = [&](const FieldSample& s) {
    csv << fmt6(s.theta * 180.0 / kPi) << ',' << fmt6(s.phi * 180.0 / kPi)
        << ',' << fmt6(s.e_theta.real()) << ',' << fmt6(s.e_theta.imag()) << ','
        << fmt6(s.e_phi.real()) << ',' << fmt6(s.e_phi.imag()) << ','
        << fmt6(directivity_dbi(grid, s)) << ','
        << fmt6(partial_realized_gain(grid, s, Polarization::kLhcp)) << ','
        << fmt6(partial_realized_gain(grid, s, Polarization::kRhcp)) << ','
        << fmt6(axial_ratio_db(s)) << '\n';
  };
  emit(grid.pole_forward);
  for (const FieldSample& s : grid.samples) emit(s);
  emit(grid.pole_backward);
  write_file(path, csv.str());
}

json report_json(const AnalysisReport& report) {
  json j;
  j["zin_ohm"] = {{"re", report.zin.real()}, {"im", report.zin.imag()}};
  j["s11_db"] = report.s11_db;
  j["ar_boresight_db"] = report.ar_boresight_db;
  j["g_lhcp_db"] = report.g_lhcp_db;
  j["g_rhcp_db"] = report.g_rhcp_db;
  j["d_dbi"] = report.d_boresight_dbi;
  j["ka"] = report.ka;
  j["harrington_dbi"] = report.harrington_dbi;
  if (report.load_capacitance_f)
    j["load_capacitance_pf"] = *report.load_capacitance_f * 1e12;
  else
    j["load_capacitance_pf"] = nullptr;
  return j;
}

int cmd_analyze(const fs::path& config_path, const fs::path& out_dir,
                const Overrides& ov) {
  const std::string config_text = read_file(config_path);
  const DesignConfig config =
      apply_overrides(parse_design_config(config_text, config_path.string()), ov);
  fs::create_directories(out_dir);

  const Analysis analysis = analyze_design(
      config.design, config.segments_per_dipole, config.reference_impedance);

  write_file(out_dir / "report.json", report_json(analysis.report).dump(2) + "\n");
  write_pattern_csv(out_dir / "pattern.csv", analysis.grid);

  json parameters;
  parameters["frequency_hz"] = config.design.frequency;
  parameters["swap_elements"] = ov.swap_elements;
  write_manifest(out_dir, "analyze", config_path, config_text, config, parameters);

  const AnalysisReport& r = analysis.report;
  std::cout << "f = " << fmt6(r.frequency * 1e-9) << " GHz\n"
            << "Zin = " << fmt6(r.zin.real()) << (r.zin.imag() < 0 ? " - j" : " + j")
            << fmt6(std::abs(r.zin.imag())) << " ohm, |S11| = " << fmt6(r.s11_db)
            << " dB\n"
            << "boresight: G_LHCP = " << fmt6(r.g_lhcp_db)
            << " dB, G_RHCP = " << fmt6(r.g_rhcp_db)
            << " dB, D = " << fmt6(r.d_boresight_dbi)
            << " dBi, AR = " << fmt6(r.ar_boresight_db) << " dB\n"
            << "ka = " << fmt6(r.ka)
            << ", Harrington limit = " << fmt6(r.harrington_dbi) << " dBi\n";
  return 0;
}

json bands_entry(const std::string& key, std::optional<double> threshold,
                 const std::vector<Band>& bands) {
  json j;
  j["key"] = key;
  if (threshold)
    j["threshold_db"] = *threshold;
  else
    j["threshold_db"] = nullptr;
  j["bands"] = json::array();
  for (const Band& b : bands)
    j["bands"].push_back({{"f_low_hz", b.f_low},
                          {"f_high_hz", b.f_high},
                          {"fractional", b.fractional()}});
  return j;
}

int cmd_sweep(const fs::path& config_path, const fs::path& out_dir,
              double f_start, double f_stop, int points) {
  const std::string config_text = read_file(config_path);
  const DesignConfig config =
      parse_design_config(config_text, config_path.string());
  if (points < 2) throw ConfigError("sweep: --points must be >= 2");
  if (!(f_start > 0.0) || !(f_stop > f_start))
    throw ConfigError("sweep: need 0 < --f-start < --f-stop");
  fs::create_directories(out_dir);

  const std::vector<SweepRecord> records =
      sweep(config.design, f_start, f_stop, points, config.segments_per_dipole,
            config.reference_impedance);

  std::ostringstream csv;
  csv << "freq_hz,re_zin_ohm,im_zin_ohm,s11_db,ar_db,g_lhcp_db,g_rhcp_db,"
         "d_dbi,ok_flag\n";
  for (const SweepRecord& r : records) {
    csv << fmt6(r.frequency) << ',' << fmt6(r.zin.real()) << ','
        << fmt6(r.zin.imag()) << ',' << fmt6(r.s11_db) << ','
        << fmt6(r.ar_boresight_db) << ',' << fmt6(r.g_lhcp_db) << ','
        << fmt6(r.g_rhcp_db) << ',' << fmt6(r.d_boresight_dbi) << ','
        << (r.ok ? 1 : 0) << '\n';
  }
  write_file(out_dir / "sweep.csv", csv.str());

  const auto s11_bands = extract_band(records, BandKey::kS11, -10.0);
  const auto ar_bands = extract_band(records, BandKey::kAxialRatio, 3.0);
  const auto common = common_band(s11_bands, ar_bands);
  json bands = json::array();
  bands.push_back(bands_entry("s11", -10.0, s11_bands));
  bands.push_back(bands_entry("ar", 3.0, ar_bands));
  bands.push_back(bands_entry("common", std::nullopt, common));
  write_file(out_dir / "bands.json", bands.dump(2) + "\n");

  json parameters = {{"f_start_hz", f_start},
                     {"f_stop_hz", f_stop},
                     {"points", points}};
  write_manifest(out_dir, "sweep", config_path, config_text, config, parameters);

  std::cout << records.size() << " sweep points written\n";
  for (const Band& b : common)
    std::cout << "common band: " << fmt6(b.f_low * 1e-9) << " - "
              << fmt6(b.f_high * 1e-9) << " GHz (" << fmt6(b.fractional() * 100.0)
              << "%)\n";
  return 0;
}

int cmd_optimize(const fs::path& config_path, const fs::path& ga_path,
                 const fs::path& out_dir) {
  const std::string config_text = read_file(config_path);
  const DesignConfig base = parse_design_config(config_text, config_path.string());
  const std::string ga_text = read_file(ga_path);
  OptimizerConfig opt = parse_optimizer_config(ga_text, ga_path.string());
  opt.space.segments_per_dipole = base.segments_per_dipole;
  opt.space.reference_impedance = base.reference_impedance;
  fs::create_directories(out_dir);

  const GARun run = run_ga(opt.space, opt.ga);

  DesignConfig best;
  best.design = opt.space.to_design(run.final_best_genes);
  best.segments_per_dipole = opt.space.segments_per_dipole;
  best.reference_impedance = opt.space.reference_impedance;
  if (!opt.space.search_spacing) {
    best.spacing_given_in_lambda = true;
    best.spacing_lambda = opt.space.spacing_lambda;
  }
  write_file(out_dir / "best_design.json", design_config_to_json(best));

  json run_json;
  run_json["seed"] = run.seed;
  run_json["evaluations"] = run.evaluations;
  run_json["f0_hz"] = opt.space.f0;
  run_json["population"] = opt.ga.population;
  run_json["generations"] = opt.ga.generations;
  run_json["search_spacing"] = opt.space.search_spacing;
  run_json["best_per_generation"] = json::array();
  for (const GenerationBest& g : run.best_per_generation)
    run_json["best_per_generation"].push_back(
        {{"generation", g.generation},
         {"fitness_db", g.fitness_db},
         {"genes", g.genes}});
  run_json["final_best"] = {{"fitness_db", run.final_best_fitness_db},
                            {"design", design_config_json(best)}};
  write_file(out_dir / "ga_run.json", run_json.dump(2) + "\n");

  json parameters = {{"population", opt.ga.population},
                     {"generations", opt.ga.generations},
                     {"f0_hz", opt.space.f0},
                     {"search_spacing", opt.space.search_spacing}};
  write_manifest(out_dir, "optimize", config_path, config_text, best, parameters,
                 run.seed, "ga_config_hash", fnv1a64_hex(ga_text));

  std::cout << "GA finished: " << run.evaluations << " evaluations, best G_LHCP = "
            << fmt6(run.final_best_fitness_db) << " dB\n";
  return 0;
}

int cmd_limits(const fs::path& config_path, const fs::path& out_dir) {
  const std::string config_text = read_file(config_path);
  const DesignConfig config =
      parse_design_config(config_text, config_path.string());
  fs::create_directories(out_dir);

  const WireModel model =
      build_model(config.design, config.segments_per_dipole);
  const SphereMetric sphere = min_enclosing_sphere(model);
  json j;
  j["a_m"] = sphere.radius_a;
  j["ka"] = sphere.ka;
  j["d_max_dbi"] = harrington_limit_dbi(sphere.ka);
  write_file(out_dir / "limits.json", j.dump(2) + "\n");

  write_manifest(out_dir, "limits", config_path, config_text, config,
                 json::object());

  std::cout << "a = " << fmt6(sphere.radius_a * 1e3) << " mm, ka = "
            << fmt6(sphere.ka) << ", D_max = " << fmt6(harrington_limit_dbi(sphere.ka))
            << " dBi\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thin-wire MoM simulator and GA optimizer for a crossed-dipole "
               "end-fire array"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("xdipole ") + kVersion);

  std::string config_path, ga_path, out_dir;
  Overrides ov;
  double freq_override = 0.0, f_start = 0.0, f_stop = 0.0;
  int segments_override = 0, points = 0;

  CLI::App* analyze = app.add_subcommand("analyze", "single-frequency analysis");
  analyze->add_option("--config", config_path, "design config JSON")->required();
  CLI::Option* freq_opt = analyze->add_option("--freq", freq_override,
                                              "override frequency [Hz]");
  CLI::Option* seg_opt = analyze->add_option("--segments", segments_override,
                                             "override segments per dipole");
  analyze->add_flag("--swap-elements", ov.swap_elements,
                    "exchange driven and parasitic element dimensions");
  analyze->add_option("--out", out_dir, "output directory")->required();

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "frequency sweep with band extraction");
  sweep_cmd->add_option("--config", config_path, "design config JSON")->required();
  sweep_cmd->add_option("--f-start", f_start, "sweep start [Hz]")->required();
  sweep_cmd->add_option("--f-stop", f_stop, "sweep stop [Hz]")->required();
  sweep_cmd->add_option("--points", points, "number of sweep points")->required();
  sweep_cmd->add_option("--out", out_dir, "output directory")->required();

  CLI::App* optimize = app.add_subcommand("optimize", "run the GA design loop");
  optimize->add_option("--config", config_path, "design config JSON (solver settings)")
      ->required();
  optimize->add_option("--ga", ga_path, "optimizer config JSON")->required();
  optimize->add_option("--out", out_dir, "output directory")->required();

  CLI::App* limits = app.add_subcommand("limits", "electrical size and gain limit");
  limits->add_option("--config", config_path, "design config JSON")->required();
  limits->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (freq_opt->count() > 0) ov.frequency = freq_override;
    if (seg_opt->count() > 0) ov.segments = segments_override;
    if (analyze->parsed()) return cmd_analyze(config_path, out_dir, ov);
    if (sweep_cmd->parsed())
      return cmd_sweep(config_path, out_dir, f_start, f_stop, points);
    if (optimize->parsed()) return cmd_optimize(config_path, ga_path, out_dir);
    if (limits->parsed()) return cmd_limits(config_path, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const MeshError& e) {
    std::cerr << "mesh error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
