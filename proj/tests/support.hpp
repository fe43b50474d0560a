#ifndef XDIPOLE_TESTS_SUPPORT_HPP
#define XDIPOLE_TESTS_SUPPORT_HPP

#include <random>
#include <vector>

#include "xdipole/geometry.hpp"

namespace xdipole::testing {

/// The optimized reference design used throughout the suites: lengths and
/// strip widths in millimetres, capacitive load, 3.5 GHz, 0.15 lambda
/// element spacing.
inline ArrayDesign reference_design() {
  ArrayDesign d;
  d.lx1 = 35.21e-3;
  d.lx2 = 43.83e-3;
  d.ly1 = 40.17e-3;
  d.ly2 = 44.64e-3;
  d.wx1 = 2.95e-3;
  d.wx2 = 4.14e-3;
  d.wy1 = 3.30e-3;
  d.wy2 = 3.29e-3;
  d.load_reactance = -74.96;
  d.frequency = 3.5e9;
  d.spacing_d = 0.15 * wavelength(d.frequency);
  return d;
}

/// Single center-fed dipole along the given axis, length and radius as
/// fractions of the wavelength at `frequency`.
inline WireModel single_dipole(double length_lambda, double radius_lambda,
                               double frequency, int segments,
                               const Vec3& axis = Vec3(0, 0, 1)) {
  const double lambda = wavelength(frequency);
  Wire w;
  w.start = -0.5 * length_lambda * lambda * axis;
  w.end = +0.5 * length_lambda * lambda * axis;
  w.radius = radius_lambda * lambda;
  w.has_center_port = true;
  w.port_id = 0;
  return segment_wires({w}, segments, frequency);
}

/// Independent oracle for the minimum enclosing sphere: Welzl's
/// move-to-front recursion (exact, different algorithm from the
/// candidate-subset enumeration in the library).
Sphere welzl_sphere(std::vector<Vec3> points, std::mt19937_64& rng);

}  // namespace xdipole::testing

#endif  // XDIPOLE_TESTS_SUPPORT_HPP
