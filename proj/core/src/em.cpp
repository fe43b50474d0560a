#include "xdipole/em.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "xdipole/constants.hpp"
#include "xdipole/errors.hpp"
#include "xdipole/quadrature.hpp"

namespace xdipole {

namespace {

constexpr int kFarOrder = 4;    // separated basis supports
constexpr int kNearOrder = 16;  // overlapping or touching supports

// Gauss-Legendre rule mapped to [0, 1] with the triangle shape values
// f_rise(t) = t, f_fall(t) = 1 - t folded into per-point weights.
template <int Order>
struct UnitRule {
  std::array<double, Order> t{};
  std::array<double, Order> w{};        // plain weights (charge term)
  std::array<double, Order> w_rise{};   // w * t      (vector term, rising half)
  std::array<double, Order> w_fall{};   // w * (1-t)  (vector term, falling half)

  explicit UnitRule(const QuadratureRule& gl) {
    for (int i = 0; i < Order; ++i) {
      t[i] = 0.5 * (gl.nodes[i] + 1.0);
      w[i] = 0.5 * gl.weights[i];
      w_rise[i] = w[i] * t[i];
      w_fall[i] = w[i] * (1.0 - t[i]);
    }
  }
};

// Quadrature point positions of one basis, both half-supports, both orders.
struct BasisQuad {
  std::array<std::array<Vec3, kNearOrder>, 2> p16;
  std::array<std::array<Vec3, kFarOrder>, 2> p4;
  double seg_len = 0.0;
  double radius2 = 0.0;
  Vec3 tangent = Vec3::Zero();
  int wire = -1;
  int node = -1;
};

template <int Order>
void fill_points(const TriangleBasis& b, const UnitRule<Order>& rule,
                 std::array<std::array<Vec3, Order>, 2>& out) {
  for (int i = 0; i < Order; ++i) {
    out[0][i] = b.p_left + rule.t[i] * (b.p_center - b.p_left);
    out[1][i] = b.p_center + rule.t[i] * (b.p_right - b.p_center);
  }
}

// Double integrals over one segment pair: sum_a with the triangle shape
// product (vector-potential term), sum_p plain (charge term). The kernel
// is exp(-jkR)/R with R = sqrt(|r-r'|^2 + a2); the 1/(4 pi) is applied by
// the caller.
template <int Order>
void segment_pair_sums(const std::array<Vec3, Order>& pm,
                       const std::array<double, Order>& wfm,
                       const std::array<double, Order>& wm,
                       const std::array<Vec3, Order>& pn,
                       const std::array<double, Order>& wfn,
                       const std::array<double, Order>& wn, double k, double a2,
                       Complex& sum_a, Complex& sum_p) {
  for (int i = 0; i < Order; ++i) {
    double re_f = 0.0, im_f = 0.0;  // triangle-weighted inner sum
    double re_p = 0.0, im_p = 0.0;  // plain inner sum
    for (int j = 0; j < Order; ++j) {
      const double r = std::sqrt((pm[i] - pn[j]).squaredNorm() + a2);
      const double g_re = std::cos(k * r) / r;
      const double g_im = -std::sin(k * r) / r;
      re_f += wfn[j] * g_re;
      im_f += wfn[j] * g_im;
      re_p += wn[j] * g_re;
      im_p += wn[j] * g_im;
    }
    sum_a += Complex(wfm[i] * re_f, wfm[i] * im_f);
    sum_p += Complex(wm[i] * re_p, wm[i] * im_p);
  }
}

template <int Order>
Complex entry_sums(const BasisQuad& bm, const BasisQuad& bn,
                   const UnitRule<Order>& rule,
                   const std::array<std::array<Vec3, Order>, 2>& pm,
                   const std::array<std::array<Vec3, Order>, 2>& pn, double k,
                   double omega, double tdot) {
  const double a2 = 0.5 * (bm.radius2 + bn.radius2);
  Complex z{0.0, 0.0};
  for (int sm = 0; sm < 2; ++sm) {
    const auto& wfm = (sm == 0) ? rule.w_rise : rule.w_fall;
    const double sig_m = (sm == 0) ? 1.0 : -1.0;
    for (int sn = 0; sn < 2; ++sn) {
      const auto& wfn = (sn == 0) ? rule.w_rise : rule.w_fall;
      const double sig_n = (sn == 0) ? 1.0 : -1.0;
      Complex sum_a{0.0, 0.0}, sum_p{0.0, 0.0};
      segment_pair_sums<Order>(pm[sm], wfm, rule.w, pn[sn], wfn, rule.w, k, a2,
                               sum_a, sum_p);
      // jw*mu0 * (t.t) * dm*dn * sum_a  +  sig_m*sig_n/(jw*eps0) * sum_p
      z += Complex(0.0, omega * kMu0 * tdot * bm.seg_len * bn.seg_len) * sum_a +
           Complex(0.0, -sig_m * sig_n / (omega * kEps0)) * sum_p;
    }
  }
  return z / (4.0 * kPi);
}

}  // namespace

MomSystem fill_matrix(const WireModel& model, double frequency) {
  if (!(frequency > 0.0))
    throw std::domain_error("fill_matrix: frequency must be positive");
  MomSystem system;
  system.frequency = frequency;
  system.bases = triangle_bases(model);
  const int n = static_cast<int>(system.bases.size());

  const UnitRule<kFarOrder> far_rule(gauss_legendre(kFarOrder));
  const UnitRule<kNearOrder> near_rule(gauss_legendre(kNearOrder));

  std::vector<BasisQuad> quads(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const TriangleBasis& b = system.bases[static_cast<std::size_t>(i)];
    BasisQuad& q = quads[static_cast<std::size_t>(i)];
    q.seg_len = b.seg_len;
    q.radius2 = b.radius * b.radius;
    q.tangent = b.tangent;
    q.wire = b.wire_index;
    q.node = b.node_index;
    fill_points<kFarOrder>(b, far_rule, q.p4);
    fill_points<kNearOrder>(b, near_rule, q.p16);
  }

  const double omega = 2.0 * kPi * frequency;
  const double k = omega / kC0;

  system.z.resize(n, n);
  system.excitation = Eigen::VectorXcd::Zero(n);
  // Every entry is computed independently (no mirroring), so the Galerkin
  // symmetry of the result is a property of the quadrature, not of the
  // storage scheme.
  for (int m = 0; m < n; ++m) {
    const BasisQuad& bm = quads[static_cast<std::size_t>(m)];
    for (int nn = 0; nn < n; ++nn) {
      const BasisQuad& bn = quads[static_cast<std::size_t>(nn)];
      const double tdot = bm.tangent.dot(bn.tangent);
      const bool near =
          bm.wire == bn.wire && std::abs(bm.node - bn.node) <= 2;
      system.z(m, nn) =
          near ? entry_sums<kNearOrder>(bm, bn, near_rule, bm.p16, bn.p16, k,
                                        omega, tdot)
               : entry_sums<kFarOrder>(bm, bn, far_rule, bm.p4, bn.p4, k,
                                       omega, tdot);
    }
  }
  return system;
}

PortNetwork make_ports(const WireModel& model, const ArrayDesign& design) {
  PortNetwork ports;
  for (int id : model.driven_port_ids) {
    auto it = model.port_map.find(id);
    if (it == model.port_map.end())
      throw ConfigError("make_ports: driven port id not present in model");
    ports.driven.push_back(it->second);
  }
  for (int id : model.parasitic_port_ids) {
    auto it = model.port_map.find(id);
    if (it == model.port_map.end())
      throw ConfigError("make_ports: parasitic port id not present in model");
    ports.parasitic.push_back(it->second);
  }
  ports.source_voltage = Complex(1.0, 0.0);
  ports.load_impedance = Complex(0.0, design.load_reactance);
  return ports;
}

MomSystem apply_ports(MomSystem system, const PortNetwork& ports) {
  const int n = static_cast<int>(system.z.rows());
  auto check_index = [n](int idx) {
    if (idx < 0 || idx >= n)
      throw ConfigError("apply_ports: port basis index out of range");
  };
  for (int idx : ports.driven) check_index(idx);
  for (int idx : ports.parasitic) check_index(idx);
  for (int d : ports.driven)
    for (int p : ports.parasitic)
      if (d == p)
        throw ConfigError("apply_ports: driven and parasitic sets collide");

  system.excitation = Eigen::VectorXcd::Zero(n);
  for (int d : ports.driven) system.excitation(d) += ports.source_voltage;

  // One lumped Z_L in series with each parasitic gap: the two arms of the
  // loaded element are separate conductors, so each carries its own load.
  // Only the diagonal entries at the parasitic gap bases shift.
  for (int p : ports.parasitic) system.z(p, p) += ports.load_impedance;
  return system;
}

SolveResult solve(const MomSystem& system, const PortNetwork& ports) {
  const int n = static_cast<int>(system.z.rows());
  if (n == 0) throw NumericalError("solve: empty system");

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system.z);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-12))
    throw NumericalError("solve: matrix ill-conditioned (condition estimate " +
                         std::to_string(rcond > 0.0 ? 1.0 / rcond : 0.0) + ")");

  SolveResult result;
  result.currents = lu.solve(system.excitation);
  result.frequency = system.frequency;
  result.source_voltage = ports.source_voltage;

  const double b_norm = system.excitation.norm();
  if (b_norm > 0.0) {
    const double residual =
        (system.z * result.currents - system.excitation).norm() / b_norm;
    if (!(residual < 1e-9))
      throw NumericalError("solve: relative residual " +
                           std::to_string(residual) + " exceeds 1e-9");
  }

  Complex i_port{0.0, 0.0};
  for (int d : ports.driven) i_port += result.currents(d);
  result.driven_port_current = i_port;
  result.input_impedance = ports.source_voltage / i_port;
  result.input_power = input_power(result);

  Complex i_load{0.0, 0.0};
  for (int p : ports.parasitic) i_load += result.currents(p);
  result.load_current = i_load;
  result.load_voltage = -ports.load_impedance * i_load;
  return result;
}

double input_power(const SolveResult& result) {
  return 0.5 *
         (result.source_voltage * std::conj(result.driven_port_current)).real();
}

}  // namespace xdipole
