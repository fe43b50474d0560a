#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "support.hpp"
#include "xdipole/constants.hpp"
#include "xdipole/em.hpp"
#include "xdipole/farfield.hpp"
#include "xdipole/geometry.hpp"
#include "xdipole/metrics.hpp"

using namespace xdipole;
using xdipole::testing::reference_design;
using xdipole::testing::single_dipole;

namespace {

SolveResult solve_model(const WireModel& model, const PortNetwork& ports,
                        double frequency) {
  return solve(apply_ports(fill_matrix(model, frequency), ports), ports);
}

SolveResult solve_dipole(const WireModel& model, double frequency) {
  PortNetwork ports;
  ports.driven = {model.port_map.at(0)};
  return solve_model(model, ports, frequency);
}

}  // namespace

TEST_CASE("z-directed dipole has a sin(theta) e_theta pattern and no e_phi") {
  const double f = 1e9;
  const WireModel model = single_dipole(0.02, 0.001, f, 8);
  const SolveResult sol = solve_dipole(model, f);
  const FieldSample eq = radiate(model, sol, kPi / 2, 0.3);
  for (double theta : {0.2, 0.7, 1.1, 2.3, 2.9}) {
    const FieldSample s = radiate(model, sol, theta, 0.3);
    CHECK(std::abs(s.e_phi) < 1e-10 * std::abs(eq.e_theta));
    CHECK(std::abs(s.e_theta) ==
          doctest::Approx(std::abs(eq.e_theta) * std::sin(theta)).epsilon(2e-4));
  }
}

TEST_CASE("crossed pair with I_y = +j I_x radiates pure RHCP toward +z") {
  // Two tiny crossed dipoles, almost coplanar (radius-thin offset), with
  // hand-set currents; this pins the polarization sign convention.
  const double f = 3.5e9;
  const double lam = wavelength(f);
  const double len = 0.012 * lam;
  Wire wx;
  wx.start = Vec3(-0.5 * len, 0.0, 0.0);
  wx.end = Vec3(+0.5 * len, 0.0, 0.0);
  wx.radius = 1e-6;
  Wire wy;
  wy.start = Vec3(0.0, -0.5 * len, 2e-6);
  wy.end = Vec3(0.0, +0.5 * len, 2e-6);
  wy.radius = 1e-6;
  const WireModel model = segment_wires({wx, wy}, 8, f);

  SolveResult sol;
  sol.frequency = f;
  sol.currents = Eigen::VectorXcd::Zero(model.basis_count);
  const int per_wire = model.segments_per_dipole - 1;
  for (int i = 0; i < per_wire; ++i) {
    const double shape = std::sin(kPi * (i + 1) / model.segments_per_dipole);
    sol.currents(i) = Complex(shape, 0.0);
    sol.currents(per_wire + i) = Complex(0.0, shape);  // I_y = +j I_x
  }
  const FieldSample s = radiate(model, sol, 0.0, 0.0);
  CHECK(std::abs(s.e_lhcp) / std::abs(s.e_rhcp) < 1e-4);

  // |e_rhcp| = sqrt(2) * |e_theta of the x-current alone|
  SolveResult only_x = sol;
  for (int i = 0; i < per_wire; ++i) only_x.currents(per_wire + i) = 0.0;
  const FieldSample sx = radiate(model, only_x, 0.0, 0.0);
  CHECK(std::abs(s.e_rhcp) ==
        doctest::Approx(std::sqrt(2.0) * std::abs(sx.e_theta)).epsilon(1e-8));
}

TEST_CASE("circular decomposition is unitary at every grid sample") {
  const ArrayDesign design = reference_design();
  const WireModel model = build_model(design, 12);
  const SolveResult sol =
      solve_model(model, make_ports(model, design), design.frequency);
  const PatternGrid grid = build_pattern(model, sol, design.frequency, 50.0, 16, 32);
  for (const FieldSample& s : grid.samples) {
    const double lin = std::norm(s.e_theta) + std::norm(s.e_phi);
    const double circ = std::norm(s.e_rhcp) + std::norm(s.e_lhcp);
    CHECK(std::abs(circ - lin) <= 1e-12 * lin);
  }
}

TEST_CASE("half-wave dipole peak directivity is the classical 2.15 dBi") {
  const double f = 1e9;
  const WireModel model = single_dipole(0.5, 0.005, f, 20);
  const SolveResult sol = solve_dipole(model, f);
  const PatternGrid grid = build_pattern(model, sol, f, 73.0);
  const double d_peak = directivity_dbi(grid, radiate(model, sol, kPi / 2, 0.0));
  CHECK(d_peak == doctest::Approx(2.15).epsilon(0.05));
  CHECK(std::abs(d_peak - 2.15) < 0.1);
}

TEST_CASE("Hertzian dipole directivity is 1.76 dBi") {
  const double f = 1e9;
  const WireModel model = single_dipole(0.02, 0.001, f, 8);
  const SolveResult sol = solve_dipole(model, f);
  const PatternGrid grid = build_pattern(model, sol, f, 50.0);
  const double d_peak = directivity_dbi(grid, radiate(model, sol, kPi / 2, 0.0));
  CHECK(std::abs(d_peak - 10.0 * std::log10(1.5)) < 0.02);
}

TEST_CASE("sphere mean of directivity closes to 1 on an independent grid") {
  const ArrayDesign design = reference_design();
  const Analysis a = analyze_design(design, 20, 50.0);
  // Independent trapezoid grid in (theta, phi), not the Gauss nodes.
  const int nt = 91, np = 180;
  double mean = 0.0, weight = 0.0;
  for (int i = 0; i < nt; ++i) {
    const double theta = kPi * (i + 0.5) / nt;
    for (int j = 0; j < np; ++j) {
      const double phi = 2.0 * kPi * j / np;
      const FieldSample s = radiate(a.model, a.solution, theta, phi);
      const double u = std::norm(s.e_theta) + std::norm(s.e_phi);
      mean += u * std::sin(theta);
      weight += std::sin(theta);
    }
  }
  // mean over solid angle of D = 4 pi U / p_rad
  const double d_mean = (mean / weight) * 4.0 * kPi / (2.0 * kEta0) / a.grid.p_rad;
  CHECK(std::abs(d_mean - 1.0) < 1e-3);
}

TEST_CASE("power balance: quadrature p_rad equals port p_in within 2%") {
  const ArrayDesign design = reference_design();
  const Analysis a = analyze_design(design, 20, 50.0);
  CHECK(std::abs(a.grid.p_rad - a.grid.p_in) / a.grid.p_in < 0.02);
}

TEST_CASE("single x-dipole pattern is symmetric under phi -> -phi") {
  const double f = 1e9;
  const WireModel model = single_dipole(0.47, 0.005, f, 16, Vec3(1, 0, 0));
  const SolveResult sol = solve_dipole(model, f);
  for (double theta : {0.4, 1.0, 1.6}) {
    for (double phi : {0.3, 0.9, 2.2}) {
      const FieldSample p = radiate(model, sol, theta, phi);
      const FieldSample m = radiate(model, sol, theta, -phi);
      const double up = std::norm(p.e_theta) + std::norm(p.e_phi);
      const double um = std::norm(m.e_theta) + std::norm(m.e_phi);
      CHECK(up == doctest::Approx(um).epsilon(1e-10));
    }
  }
}

TEST_CASE("mirror duality: x<->y swap exchanges LHCP and RHCP boresight gains") {
  auto boresight = [](const ArrayDesign& d) {
    const Analysis a = analyze_design(d, 12, 50.0);
    return std::pair{a.report.g_lhcp_db, a.report.g_rhcp_db};
  };
  const ArrayDesign d = reference_design();
  const auto [gl, gr] = boresight(d);
  const auto [gl_m, gr_m] = boresight(d.mirrored_xy());
  CHECK(std::abs(gl - gr_m) < 1e-6);
  CHECK(std::abs(gr - gl_m) < 1e-6);

  // and for a generic asymmetric design
  ArrayDesign g = d;
  g.lx1 = 33.0e-3;
  g.ly1 = 41.5e-3;
  g.lx2 = 45.2e-3;
  g.ly2 = 42.9e-3;
  g.load_reactance = -40.0;
  const auto [gl2, gr2] = boresight(g);
  const auto [gl2_m, gr2_m] = boresight(g.mirrored_xy());
  CHECK(std::abs(gl2 - gr2_m) < 1e-6);
  CHECK(std::abs(gr2 - gl2_m) < 1e-6);
}

TEST_CASE("reference design is LHCP-dominant at boresight") {
  const Analysis a = analyze_design(reference_design(), 20, 50.0);
  CHECK(a.report.g_lhcp_db > a.report.g_rhcp_db + 8.0);
}

TEST_CASE("axial ratio of pure and degenerate polarizations") {
  FieldSample s;
  s.e_lhcp = Complex(1.0, 0.0);
  s.e_rhcp = Complex(0.0, 0.0);
  CHECK(axial_ratio_db(s) == doctest::Approx(0.0));

  s.e_rhcp = Complex(0.0, 1.0);  // equal magnitudes: linear polarization
  CHECK(axial_ratio_db(s) == doctest::Approx(kAxialRatioSaturationDb));

  FieldSample zero;
  bool undefined = false;
  CHECK(axial_ratio_db(zero, &undefined) == doctest::Approx(kAxialRatioSaturationDb));
  CHECK(undefined);
}

TEST_CASE("axial ratio matches the (1+rho)/(1-rho) identity on the solved design") {
  const Analysis a = analyze_design(reference_design(), 20, 50.0);
  const FieldSample& s = a.grid.pole_forward;
  const double rho = std::abs(s.e_rhcp) / std::abs(s.e_lhcp);
  const double expected = 20.0 * std::log10((1.0 + rho) / (1.0 - rho));
  CHECK(axial_ratio_db(s) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("partial realized gain equals gain for a matched antenna") {
  const ArrayDesign design = reference_design();
  const WireModel model = build_model(design, 12);
  const SolveResult sol =
      solve_model(model, make_ports(model, design), design.frequency);
  PatternGrid grid = build_pattern(model, sol, design.frequency, 50.0, 16, 32);
  PatternGrid matched = grid;
  matched.gamma_mag = 0.0;  // force a perfect match
  const double g = partial_realized_gain(grid, 0.0, 0.0, Polarization::kLhcp);
  const double g0 = partial_realized_gain(matched, 0.0, 0.0, Polarization::kLhcp);
  const double mismatch_db = -10.0 * std::log10(1.0 - grid.gamma_mag * grid.gamma_mag);
  CHECK(g0 - g == doctest::Approx(mismatch_db).epsilon(1e-9));
}

TEST_CASE("total realized gain never exceeds directivity") {
  const Analysis a = analyze_design(reference_design(), 12, 50.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(0.0, kPi), up(0.0, 2.0 * kPi);
  for (int i = 0; i < 50; ++i) {
    const double theta = ut(rng), phi = up(rng);
    const double gl = partial_realized_gain(a.grid, theta, phi, Polarization::kLhcp);
    const double gr = partial_realized_gain(a.grid, theta, phi, Polarization::kRhcp);
    const double total = 10.0 * std::log10(std::pow(10.0, gl / 10.0) +
                                           std::pow(10.0, gr / 10.0));
    CHECK(total <= directivity_dbi(a.grid, theta, phi) + 0.01);
  }
}

TEST_CASE("gain queries outside [0, pi] are clamped and flagged") {
  const Analysis a = analyze_design(reference_design(), 12, 50.0);
  bool clamped = false;
  const double g = partial_realized_gain(a.grid, -0.1, 0.0, Polarization::kLhcp,
                                         &clamped);
  CHECK(clamped);
  CHECK(g == doctest::Approx(partial_realized_gain(a.grid, 0.0, 0.0,
                                                   Polarization::kLhcp)));
  clamped = false;
  partial_realized_gain(a.grid, 0.5, 1.0, Polarization::kLhcp, &clamped);
  CHECK(!clamped);
}
