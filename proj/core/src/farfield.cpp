#include "xdipole/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xdipole/constants.hpp"
#include "xdipole/quadrature.hpp"

namespace xdipole {

namespace {

constexpr int kRadOrder = 4;  // radiation integrals are smooth
constexpr double kGainFloorDb = -300.0;

struct ComplexVec3 {
  Complex x{}, y{}, z{};
  void add(const Vec3& dir, const Complex& amp) {
    x += dir.x() * amp;
    y += dir.y() * amp;
    z += dir.z() * amp;
  }
  Complex dot(const Vec3& v) const { return v.x() * x + v.y() * y + v.z() * z; }
};

FieldSample radiate_impl(const std::vector<TriangleBasis>& bases,
                         const Eigen::VectorXcd& currents, double frequency,
                         double theta, double phi) {
  const double omega = 2.0 * kPi * frequency;
  const double k = omega / kC0;
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const Vec3 r_hat(st * cp, st * sp, ct);
  const Vec3 theta_hat(ct * cp, ct * sp, -st);
  const Vec3 phi_hat(-sp, cp, 0.0);

  const QuadratureRule& gl = gauss_legendre(kRadOrder);
  std::array<double, kRadOrder> t{}, w{};
  for (int i = 0; i < kRadOrder; ++i) {
    t[i] = 0.5 * (gl.nodes[i] + 1.0);
    w[i] = 0.5 * gl.weights[i];
  }

  // N = sum_n I_n int f_n(l) t_n exp(+jk r.r'(l)) dl
  ComplexVec3 n_vec;
  for (std::size_t n = 0; n < bases.size(); ++n) {
    const TriangleBasis& b = bases[n];
    Complex seg{0.0, 0.0};
    for (int i = 0; i < kRadOrder; ++i) {
      const Vec3 p_rise = b.p_left + t[i] * (b.p_center - b.p_left);
      const Vec3 p_fall = b.p_center + t[i] * (b.p_right - b.p_center);
      const double ph_rise = k * r_hat.dot(p_rise);
      const double ph_fall = k * r_hat.dot(p_fall);
      seg += w[i] * t[i] * Complex(std::cos(ph_rise), std::sin(ph_rise));
      seg += w[i] * (1.0 - t[i]) * Complex(std::cos(ph_fall), std::sin(ph_fall));
    }
    n_vec.add(b.tangent, currents(static_cast<Eigen::Index>(n)) * b.seg_len * seg);
  }

  const Complex prefactor = Complex(0.0, -omega * kMu0 / (4.0 * kPi));
  FieldSample sample;
  sample.theta = theta;
  sample.phi = phi;
  sample.e_theta = prefactor * n_vec.dot(theta_hat);
  sample.e_phi = prefactor * n_vec.dot(phi_hat);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  sample.e_rhcp = (sample.e_theta - Complex(0.0, 1.0) * sample.e_phi) * inv_sqrt2;
  sample.e_lhcp = (sample.e_theta + Complex(0.0, 1.0) * sample.e_phi) * inv_sqrt2;
  return sample;
}

double power_density(const FieldSample& s) {
  return std::norm(s.e_theta) + std::norm(s.e_phi);
}

double sense_density(const FieldSample& s, Polarization sense) {
  return sense == Polarization::kLhcp ? std::norm(s.e_lhcp)
                                      : std::norm(s.e_rhcp);
}

// Bilinear interpolation of a per-sample scalar over (theta, phi), with
// the exact pole samples acting as the end rings. Pole values of |e_L|^2,
// |e_R|^2 and the total density are frame-independent, so a single pole
// sample represents the whole ring.
template <typename F>
double interpolate(const PatternGrid& grid, double theta, double phi, F&& f,
                   bool* clamped) {
  if (clamped) *clamped = false;
  if (theta < 0.0 || theta > kPi) {
    if (clamped) *clamped = true;
    theta = std::clamp(theta, 0.0, kPi);
  }
  const int nt = static_cast<int>(grid.theta_nodes.size());
  const int np = static_cast<int>(grid.phi_nodes.size());

  // Virtual theta axis: pole, rings, pole.
  auto theta_at = [&](int i) {
    if (i <= 0) return 0.0;
    if (i >= nt + 1) return kPi;
    return grid.theta_nodes[static_cast<std::size_t>(i - 1)];
  };
  int hi = 0;
  while (hi <= nt + 1 && theta_at(hi) < theta) ++hi;
  hi = std::clamp(hi, 1, nt + 1);
  const int lo = hi - 1;
  const double t0 = theta_at(lo), t1 = theta_at(hi);
  const double alpha = (t1 > t0) ? std::clamp((theta - t0) / (t1 - t0), 0.0, 1.0)
                                 : 0.0;

  const double dphi = 2.0 * kPi / np;
  double pw = std::fmod(phi, 2.0 * kPi);
  if (pw < 0.0) pw += 2.0 * kPi;
  const int ip0 = std::min(static_cast<int>(pw / dphi), np - 1);
  const int ip1 = (ip0 + 1) % np;
  const double beta = std::clamp(pw / dphi - ip0, 0.0, 1.0);

  auto value = [&](int it, int ip) {
    if (it == 0) return f(grid.pole_forward);
    if (it == nt + 1) return f(grid.pole_backward);
    return f(grid.at(it - 1, ip));
  };
  const double v00 = value(lo, ip0), v01 = value(lo, ip1);
  const double v10 = value(hi, ip0), v11 = value(hi, ip1);
  return (1.0 - alpha) * ((1.0 - beta) * v00 + beta * v01) +
         alpha * ((1.0 - beta) * v10 + beta * v11);
}

double to_db10(double power_ratio) {
  if (!(power_ratio > 0.0)) return kGainFloorDb;
  return std::max(10.0 * std::log10(power_ratio), kGainFloorDb);
}

}  // namespace

FieldSample radiate(const WireModel& model, const SolveResult& result,
                    double theta, double phi) {
  const std::vector<TriangleBasis> bases = triangle_bases(model);
  return radiate_impl(bases, result.currents, result.frequency, theta, phi);
}

PatternGrid build_pattern(const WireModel& model, const SolveResult& result,
                          double frequency, double reference_impedance,
                          int n_theta, int n_phi) {
  if (!(reference_impedance > 0.0))
    throw std::domain_error("build_pattern: reference impedance must be positive");
  if (n_theta < 2 || n_phi < 2)
    throw std::invalid_argument("build_pattern: grid too small");

  const std::vector<TriangleBasis> bases = triangle_bases(model);
  PatternGrid grid;
  grid.frequency = frequency;

  const QuadratureRule& gl = gauss_legendre(n_theta);
  grid.theta_nodes.resize(static_cast<std::size_t>(n_theta));
  grid.theta_weights.resize(static_cast<std::size_t>(n_theta));
  for (int i = 0; i < n_theta; ++i) {
    // Descending cos(theta) node order gives ascending theta.
    grid.theta_nodes[static_cast<std::size_t>(i)] =
        std::acos(gl.nodes[static_cast<std::size_t>(n_theta - 1 - i)]);
    grid.theta_weights[static_cast<std::size_t>(i)] =
        gl.weights[static_cast<std::size_t>(n_theta - 1 - i)];
  }
  grid.phi_nodes.resize(static_cast<std::size_t>(n_phi));
  for (int j = 0; j < n_phi; ++j)
    grid.phi_nodes[static_cast<std::size_t>(j)] = 2.0 * kPi * j / n_phi;

  grid.samples.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  double p_rad = 0.0;
  const double dphi = 2.0 * kPi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    double ring_power = 0.0;
    for (int j = 0; j < n_phi; ++j) {
      FieldSample s = radiate_impl(bases, result.currents, frequency,
                                   grid.theta_nodes[static_cast<std::size_t>(i)],
                                   grid.phi_nodes[static_cast<std::size_t>(j)]);
      ring_power += power_density(s);
      grid.samples.push_back(std::move(s));
    }
    p_rad += grid.theta_weights[static_cast<std::size_t>(i)] * ring_power;
  }
  grid.p_rad = p_rad * dphi / (2.0 * kEta0);

  grid.pole_forward = radiate_impl(bases, result.currents, frequency, 0.0, 0.0);
  grid.pole_backward = radiate_impl(bases, result.currents, frequency, kPi, 0.0);

  grid.p_in = result.input_power;
  const Complex z0(reference_impedance, 0.0);
  grid.gamma_mag =
      std::abs((result.input_impedance - z0) / (result.input_impedance + z0));
  return grid;
}

double partial_realized_gain(const PatternGrid& grid, double theta, double phi,
                             Polarization sense, bool* clamped) {
  const double u = interpolate(
      grid, theta, phi,
      [sense](const FieldSample& s) { return sense_density(s, sense); },
      clamped);
  // (1 - |G|^2) * 4 pi U / p_in; the sense densities above carry 2*eta0.
  const double mismatch = 1.0 - grid.gamma_mag * grid.gamma_mag;
  return to_db10(mismatch * 4.0 * kPi * u / (2.0 * kEta0) / grid.p_in);
}

double directivity_dbi(const PatternGrid& grid, double theta, double phi,
                       bool* clamped) {
  const double u = interpolate(
      grid, theta, phi, [](const FieldSample& s) { return power_density(s); },
      clamped);
  return to_db10(4.0 * kPi * u / (2.0 * kEta0) / grid.p_rad);
}

double directivity_dbi(const PatternGrid& grid, const FieldSample& sample) {
  return to_db10(4.0 * kPi * power_density(sample) / (2.0 * kEta0) / grid.p_rad);
}

double partial_realized_gain(const PatternGrid& grid, const FieldSample& sample,
                             Polarization sense) {
  const double mismatch = 1.0 - grid.gamma_mag * grid.gamma_mag;
  return to_db10(mismatch * 4.0 * kPi * sense_density(sample, sense) /
                 (2.0 * kEta0) / grid.p_in);
}

double axial_ratio_db(const FieldSample& sample, bool* undefined) {
  if (undefined) *undefined = false;
  const double ar = std::abs(sample.e_rhcp);
  const double al = std::abs(sample.e_lhcp);
  const double total = ar + al;
  if (total <= 0.0) {
    if (undefined) *undefined = true;
    return kAxialRatioSaturationDb;
  }
  const double diff = std::abs(ar - al);
  if (diff <= 0.0) return kAxialRatioSaturationDb;
  const double db = 20.0 * std::log10(total / diff);
  return std::min(db, kAxialRatioSaturationDb);
}

}  // namespace xdipole
