#ifndef XDIPOLE_METRICS_HPP
#define XDIPOLE_METRICS_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "xdipole/em.hpp"
#include "xdipole/farfield.hpp"
#include "xdipole/geometry.hpp"

namespace xdipole {

/// Reflection coefficient against a real reference impedance.
struct S11Result {
  Complex gamma{};
  double s11_db = 0.0;  ///< 20*log10|gamma|, floored at -100 dB
  bool passive = true;  ///< Re(zin) > 0; non-passive inputs are flagged, not rejected
};

S11Result s11(Complex zin, double z0);

/// Floor applied to 20*log10|gamma| for a perfect match.
inline constexpr double kS11FloorDb = -100.0;

/// Per-frequency figures of merit at boresight (+z).
struct SweepRecord {
  double frequency = 0.0;
  Complex zin{};
  double s11_db = 0.0;
  double ar_boresight_db = 0.0;
  double g_lhcp_db = 0.0;
  double g_rhcp_db = 0.0;
  double d_boresight_dbi = 0.0;
  bool ok = true;
  std::string error;  ///< failure reason when !ok
};

/// Frequency sweep of a fixed design (geometry meshed once, solver
/// frequency varied). Failed points are recorded with ok = false rather
/// than dropped. Throws std::invalid_argument for a bad range.
std::vector<SweepRecord> sweep(const ArrayDesign& design, double f_start,
                               double f_stop, int n_points,
                               int segments_per_dipole = 20,
                               double reference_impedance = 50.0);

/// Contiguous frequency interval.
struct Band {
  double f_low = 0.0;
  double f_high = 0.0;
  double fractional() const { return (f_high - f_low) / (0.5 * (f_low + f_high)); }
};

enum class BandKey { kS11, kAxialRatio };

/// Sub-bands where the keyed metric stays at or below the threshold, with
/// edges linearly interpolated (dB vs linear frequency) between the
/// bracketing samples. Failed records break bands.
std::vector<Band> extract_band(const std::vector<SweepRecord>& records,
                               BandKey key, double threshold_db);

/// Pairwise interval intersection of two sorted band lists.
std::vector<Band> common_band(const std::vector<Band>& a,
                              const std::vector<Band>& b);

/// Harrington's normal-gain bound 10*log10((ka)^2 + 2ka) [dBi].
double harrington_limit_dbi(double ka);

/// Equivalent series capacitance 1/(2 pi f |X_L|) of a capacitive load.
/// Throws std::domain_error for x_l >= 0 or f <= 0.
double load_capacitance(double x_l, double frequency);

/// Single-frequency analysis summary (the `analyze` report).
struct AnalysisReport {
  Complex zin{};
  double s11_db = 0.0;
  double ar_boresight_db = 0.0;
  double g_lhcp_db = 0.0;
  double g_rhcp_db = 0.0;
  double d_boresight_dbi = 0.0;
  double ka = 0.0;
  double harrington_dbi = 0.0;
  std::optional<double> load_capacitance_f;  ///< empty for non-capacitive loads
  double sphere_radius_m = 0.0;
  double frequency = 0.0;
  double reference_impedance = 0.0;
};

/// Full single-frequency analysis: model, solve, pattern and report.
struct Analysis {
  WireModel model;
  SolveResult solution;
  PatternGrid grid;
  AnalysisReport report;
};

Analysis analyze_design(const ArrayDesign& design, int segments_per_dipole = 20,
                        double reference_impedance = 50.0);

}  // namespace xdipole

#endif  // XDIPOLE_METRICS_HPP
