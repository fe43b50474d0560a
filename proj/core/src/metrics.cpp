#include "xdipole/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "xdipole/constants.hpp"
#include "xdipole/errors.hpp"

namespace xdipole {

S11Result s11(Complex zin, double z0) {
  if (!(z0 > 0.0)) throw std::domain_error("s11: z0 must be positive");
  const Complex denom = zin + z0;
  if (std::abs(denom) == 0.0)
    throw std::domain_error("s11: zin == -z0 is singular");
  S11Result result;
  result.gamma = (zin - z0) / denom;
  const double mag = std::abs(result.gamma);
  result.s11_db =
      (mag > 0.0) ? std::max(20.0 * std::log10(mag), kS11FloorDb) : kS11FloorDb;
  result.passive = zin.real() > 0.0;
  return result;
}

namespace {

SweepRecord evaluate_point(const WireModel& model, const PortNetwork& ports,
                           double frequency, double reference_impedance) {
  SweepRecord rec;
  rec.frequency = frequency;
  MomSystem system = apply_ports(fill_matrix(model, frequency), ports);
  const SolveResult sol = solve(system, ports);
  const PatternGrid grid =
      build_pattern(model, sol, frequency, reference_impedance);
  rec.zin = sol.input_impedance;
  rec.s11_db = s11(rec.zin, reference_impedance).s11_db;
  rec.ar_boresight_db = axial_ratio_db(grid.pole_forward);
  rec.g_lhcp_db = partial_realized_gain(grid, 0.0, 0.0, Polarization::kLhcp);
  rec.g_rhcp_db = partial_realized_gain(grid, 0.0, 0.0, Polarization::kRhcp);
  rec.d_boresight_dbi = directivity_dbi(grid, grid.pole_forward);
  return rec;
}

}  // namespace

std::vector<SweepRecord> sweep(const ArrayDesign& design, double f_start,
                               double f_stop, int n_points,
                               int segments_per_dipole,
                               double reference_impedance) {
  if (!(f_start > 0.0) || !(f_stop > f_start))
    throw std::invalid_argument("sweep: need 0 < f_start < f_stop");
  if (n_points < 2) throw std::invalid_argument("sweep: need n_points >= 2");

  // One mesh for the whole sweep; the segmentation does not depend on the
  // evaluation frequency.
  const WireModel model = build_model(design, segments_per_dipole);
  const PortNetwork ports = make_ports(model, design);

  std::vector<SweepRecord> records;
  records.reserve(static_cast<std::size_t>(n_points));
  const double step = (f_stop - f_start) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double f = (i == n_points - 1) ? f_stop : f_start + i * step;
    try {
      records.push_back(evaluate_point(model, ports, f, reference_impedance));
    } catch (const std::exception& e) {
      SweepRecord rec;
      rec.frequency = f;
      rec.ok = false;
      rec.error = e.what();
      const double nan = std::numeric_limits<double>::quiet_NaN();
      rec.zin = Complex(nan, nan);
      rec.s11_db = rec.ar_boresight_db = rec.g_lhcp_db = rec.g_rhcp_db =
          rec.d_boresight_dbi = nan;
      records.push_back(std::move(rec));
    }
  }
  return records;
}

namespace {

double record_value(const SweepRecord& rec, BandKey key) {
  return key == BandKey::kS11 ? rec.s11_db : rec.ar_boresight_db;
}

// Linear interpolation of the threshold crossing between two samples.
double crossing(const SweepRecord& a, const SweepRecord& b, BandKey key,
                double threshold) {
  const double va = record_value(a, key), vb = record_value(b, key);
  return a.frequency +
         (threshold - va) * (b.frequency - a.frequency) / (vb - va);
}

void scan_run(const std::vector<SweepRecord>& records, std::size_t begin,
              std::size_t end, BandKey key, double threshold,
              std::vector<Band>& bands) {
  bool open = false;
  double f_low = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double v = record_value(records[i], key);
    const bool inside = v <= threshold;  // NaN compares false
    if (inside && !open) {
      f_low = (i == begin) ? records[i].frequency
                           : crossing(records[i - 1], records[i], key, threshold);
      open = true;
    } else if (!inside && open) {
      const double f_high =
          crossing(records[i - 1], records[i], key, threshold);
      if (f_high > f_low) bands.push_back({f_low, f_high});
      open = false;
    }
  }
  if (open) {
    const double f_high = records[end - 1].frequency;
    if (f_high > f_low) bands.push_back({f_low, f_high});
  }
}

}  // namespace

std::vector<Band> extract_band(const std::vector<SweepRecord>& records,
                               BandKey key, double threshold_db) {
  if (records.size() < 2)
    throw std::invalid_argument("extract_band: need at least 2 records");
  if (!std::isfinite(threshold_db))
    throw std::invalid_argument("extract_band: threshold must be finite");

  std::vector<Band> bands;
  std::size_t i = 0;
  const std::size_t n = records.size();
  while (i < n) {
    if (!records[i].ok) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && records[j].ok) ++j;
    scan_run(records, i, j, key, threshold_db, bands);
    i = j;
  }
  return bands;
}

std::vector<Band> common_band(const std::vector<Band>& a,
                              const std::vector<Band>& b) {
  std::vector<Band> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].f_low, b[j].f_low);
    const double hi = std::min(a[i].f_high, b[j].f_high);
    if (hi > lo) out.push_back({lo, hi});
    if (a[i].f_high < b[j].f_high)
      ++i;
    else
      ++j;
  }
  return out;
}

double harrington_limit_dbi(double ka) {
  if (!(ka > 0.0)) throw std::domain_error("harrington_limit: ka must be positive");
  return 10.0 * std::log10(ka * ka + 2.0 * ka);
}

double load_capacitance(double x_l, double frequency) {
  if (!(x_l < 0.0))
    throw std::domain_error(
        "load_capacitance: load must be capacitive (x_l < 0)");
  if (!(frequency > 0.0))
    throw std::domain_error("load_capacitance: frequency must be positive");
  return 1.0 / (2.0 * kPi * frequency * std::abs(x_l));
}

Analysis analyze_design(const ArrayDesign& design, int segments_per_dipole,
                        double reference_impedance) {
  design.validate();
  Analysis analysis;
  analysis.model = build_model(design, segments_per_dipole);
  MomSystem system = fill_matrix(analysis.model, design.frequency);
  const PortNetwork ports = make_ports(analysis.model, design);
  system = apply_ports(std::move(system), ports);
  analysis.solution = solve(system, ports);
  analysis.grid = build_pattern(analysis.model, analysis.solution,
                                design.frequency, reference_impedance);

  AnalysisReport& report = analysis.report;
  report.frequency = design.frequency;
  report.reference_impedance = reference_impedance;
  report.zin = analysis.solution.input_impedance;
  report.s11_db = s11(report.zin, reference_impedance).s11_db;
  report.ar_boresight_db = axial_ratio_db(analysis.grid.pole_forward);
  report.g_lhcp_db =
      partial_realized_gain(analysis.grid, 0.0, 0.0, Polarization::kLhcp);
  report.g_rhcp_db =
      partial_realized_gain(analysis.grid, 0.0, 0.0, Polarization::kRhcp);
  report.d_boresight_dbi =
      directivity_dbi(analysis.grid, analysis.grid.pole_forward);

  const SphereMetric sphere = min_enclosing_sphere(analysis.model);
  report.sphere_radius_m = sphere.radius_a;
  report.ka = sphere.ka;
  report.harrington_dbi = harrington_limit_dbi(sphere.ka);
  if (design.load_reactance < 0.0)
    report.load_capacitance_f =
        load_capacitance(design.load_reactance, design.frequency);
  return analysis;
}

}  // namespace xdipole
