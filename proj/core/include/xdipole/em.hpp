#ifndef XDIPOLE_EM_HPP
#define XDIPOLE_EM_HPP

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "xdipole/geometry.hpp"

namespace xdipole {

using Complex = std::complex<double>;

/// Galerkin MoM system: symmetric impedance matrix plus excitation.
struct MomSystem {
  Eigen::MatrixXcd z;             ///< N x N impedance matrix [ohm]
  Eigen::VectorXcd excitation;    ///< N-vector of tested source voltages [V]
  std::vector<TriangleBasis> bases;
  double frequency = 0.0;
};

/// Port wiring of the array: a parallel-connected delta-gap source across
/// the driven gaps, and the reactive load Z_L in series with each
/// parasitic gap (the two arms of the loaded element are separate
/// conductors, so each carries its own lumped load). Single-wire
/// structures use one driven index and no parasitic set.
struct PortNetwork {
  std::vector<int> driven;
  std::vector<int> parasitic;
  Complex source_voltage{1.0, 0.0};
  Complex load_impedance{0.0, 0.0};
};

/// Port network for an array model: driven pair fed with 1 V, parasitic
/// pair loaded with Z_L = j * design.load_reactance.
PortNetwork make_ports(const WireModel& model, const ArrayDesign& design);

/// Fills the impedance matrix with the mixed-potential thin-wire EFIE:
///
///   Z_mn = jw*mu0 * int int f_m f_n (t_m . t_n) G dl dl'
///        + 1/(jw*eps0) * int int f_m' f_n' G dl dl'
///
/// with G(R) = exp(-jkR)/(4 pi R) and the reduced-kernel distance
/// R = sqrt(|r - r'|^2 + a^2). The regularization radius uses
/// a^2 = (a_m^2 + a_n^2)/2, which equals the source radius for same-wire
/// terms and keeps the matrix symmetric when wires of different radii
/// interact. Segment quadrature is 4-point Gauss-Legendre, raised to
/// 16-point when the two basis supports overlap or touch.
MomSystem fill_matrix(const WireModel& model, double frequency);

/// Applies the port network: +V0 impressed at every driven gap basis and
/// Z_L added to the diagonal entry of every parasitic gap basis (one
/// series load per gap). Throws ConfigError on index collisions.
MomSystem apply_ports(MomSystem system, const PortNetwork& ports);

/// Solved currents and derived port quantities.
struct SolveResult {
  Eigen::VectorXcd currents;      ///< basis coefficients [A]
  Complex driven_port_current{};  ///< sum of driven gap currents [A]
  Complex input_impedance{};      ///< V0 / driven_port_current [ohm]
  double input_power = 0.0;       ///< 0.5*Re(V0 * conj(I_port)) [W]
  Complex load_current{};         ///< sum of parasitic gap currents [A]
  Complex load_voltage{};         ///< -Z_L * load_current [V]
  Complex source_voltage{};
  double frequency = 0.0;
};

/// Dense LU solve of the ported system. Throws NumericalError when the
/// condition estimate exceeds 1e12 or the relative residual exceeds 1e-9.
SolveResult solve(const MomSystem& system, const PortNetwork& ports);

/// Power accepted at the driven port, 0.5*Re(V0 * conj(I_port)) [W].
double input_power(const SolveResult& result);

}  // namespace xdipole

#endif  // XDIPOLE_EM_HPP
