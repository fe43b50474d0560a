#ifndef XDIPOLE_FARFIELD_HPP
#define XDIPOLE_FARFIELD_HPP

#include <complex>
#include <vector>

#include "xdipole/em.hpp"
#include "xdipole/geometry.hpp"

namespace xdipole {

/// Far-zone field sample with the r*exp(+jkr) factor removed.
///
/// Time convention is exp(+jwt); the circular components are
///   e_rhcp = (e_theta - j e_phi)/sqrt(2),
///   e_lhcp = (e_theta + j e_phi)/sqrt(2),
/// so an ideal crossed pair with I_y = +j I_x radiates RHCP toward +z.
struct FieldSample {
  double theta = 0.0;
  double phi = 0.0;
  Complex e_theta{};
  Complex e_phi{};
  Complex e_rhcp{};
  Complex e_lhcp{};
};

/// Circular polarization sense.
enum class Polarization { kLhcp, kRhcp };

/// Radiates the solved currents toward (theta, phi).
FieldSample radiate(const WireModel& model, const SolveResult& result,
                    double theta, double phi);

/// Sampled far field over the full sphere: Gauss-Legendre nodes in
/// cos(theta) crossed with a uniform phi grid, plus exact samples at the
/// two poles (theta = 0 and pi) since the end-fire axis is the direction
/// of interest and falls between quadrature rings.
struct PatternGrid {
  std::vector<double> theta_nodes;    ///< ascending theta [rad]
  std::vector<double> theta_weights;  ///< Gauss-Legendre weights in cos(theta)
  std::vector<double> phi_nodes;      ///< uniform [rad], 2*pi*k/N
  std::vector<FieldSample> samples;   ///< theta-major, size Ntheta*Nphi
  FieldSample pole_forward;           ///< theta = 0 (phi = 0 frame)
  FieldSample pole_backward;          ///< theta = pi
  double p_rad = 0.0;     ///< radiated power from the quadrature [W]
  double p_in = 0.0;      ///< accepted port power [W]
  double gamma_mag = 0.0; ///< |(Z_in - Z0)/(Z_in + Z0)|
  double frequency = 0.0;

  const FieldSample& at(int i_theta, int i_phi) const {
    return samples[static_cast<std::size_t>(i_theta) * phi_nodes.size() +
                   static_cast<std::size_t>(i_phi)];
  }
};

/// Builds the default 64 x 128 pattern grid and its power/mismatch
/// bookkeeping for the given reference impedance.
PatternGrid build_pattern(const WireModel& model, const SolveResult& result,
                          double frequency, double reference_impedance,
                          int n_theta = 64, int n_phi = 128);

/// Partial realized gain in dB:
///   G_sense = (1 - |Gamma|^2) * 4 pi U_sense / p_in,
/// which with lossless wires folds the numerical efficiency p_rad/p_in
/// into the directivity. Off-node angles are bilinearly interpolated in
/// (theta, phi); theta == 0 or pi hit the exact pole samples. Queries
/// outside [0, pi] are clamped and flagged through `clamped`.
double partial_realized_gain(const PatternGrid& grid, double theta, double phi,
                             Polarization sense, bool* clamped = nullptr);

/// Directivity 4 pi U / p_rad in dBi at an arbitrary angle (same
/// interpolation rules as partial_realized_gain).
double directivity_dbi(const PatternGrid& grid, double theta, double phi,
                       bool* clamped = nullptr);

/// Directivity of a single exact sample against a grid's radiated power.
double directivity_dbi(const PatternGrid& grid, const FieldSample& sample);

/// Partial realized gain of a single exact sample against a grid's port
/// power and mismatch factor.
double partial_realized_gain(const PatternGrid& grid, const FieldSample& sample,
                             Polarization sense);

/// Axial ratio 20*log10((|e_R| + |e_L|) / ||e_R| - |e_L||) in dB,
/// saturated at 60 dB for (near-)linear polarization. A zero total field
/// is undefined: the saturation value is returned and `undefined` set.
double axial_ratio_db(const FieldSample& sample, bool* undefined = nullptr);

/// Saturation ceiling used by axial_ratio_db.
inline constexpr double kAxialRatioSaturationDb = 60.0;

}  // namespace xdipole

#endif  // XDIPOLE_FARFIELD_HPP
