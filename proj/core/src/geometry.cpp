#include "xdipole/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "xdipole/constants.hpp"
#include "xdipole/errors.hpp"

namespace xdipole {

double wavelength(double frequency_hz) {
  if (!(frequency_hz > 0.0))
    throw std::domain_error("wavelength: frequency must be positive");
  return kC0 / frequency_hz;
}

double strip_to_radius(double width_m) {
  if (!(width_m > 0.0))
    throw std::domain_error("strip_to_radius: width must be positive");
  return 0.25 * width_m;
}

void ArrayDesign::validate() const {
  const struct {
    const char* name;
    double length, width;
  } arms[] = {{"x1", lx1, wx1}, {"x2", lx2, wx2}, {"y1", ly1, wy1}, {"y2", ly2, wy2}};
  for (const auto& arm : arms) {
    if (!(arm.length > 0.0))
      throw std::domain_error(std::string("ArrayDesign: arm ") + arm.name +
                              " length must be positive");
    if (!(arm.width > 0.0))
      throw std::domain_error(std::string("ArrayDesign: arm ") + arm.name +
                              " width must be positive");
    if (!(arm.width < arm.length))
      throw std::domain_error(std::string("ArrayDesign: arm ") + arm.name +
                              " violates the thin-strip assumption (width >= length)");
  }
  if (!(spacing_d > 0.0))
    throw std::domain_error("ArrayDesign: spacing_d must be positive");
  if (!(frequency > 0.0))
    throw std::domain_error("ArrayDesign: frequency must be positive");
  if (!std::isfinite(load_reactance))
    throw std::domain_error("ArrayDesign: load_reactance must be finite");
}

ArrayDesign ArrayDesign::swapped_elements() const {
  ArrayDesign d = *this;
  std::swap(d.lx1, d.lx2);
  std::swap(d.ly1, d.ly2);
  std::swap(d.wx1, d.wx2);
  std::swap(d.wy1, d.wy2);
  return d;
}

ArrayDesign ArrayDesign::mirrored_xy() const {
  ArrayDesign d = *this;
  std::swap(d.lx1, d.ly1);
  std::swap(d.wx1, d.wy1);
  std::swap(d.lx2, d.ly2);
  std::swap(d.wx2, d.wy2);
  return d;
}

std::vector<TriangleBasis> triangle_bases(const WireModel& model) {
  std::vector<TriangleBasis> bases;
  bases.reserve(static_cast<std::size_t>(model.basis_count));
  const int s = model.segments_per_dipole;
  for (std::size_t w = 0; w < model.wires.size(); ++w) {
    const Wire& wire = model.wires[w];
    const Vec3 step = (wire.end - wire.start) / static_cast<double>(s);
    const double seg_len = step.norm();
    const Vec3 tangent = wire.tangent();
    for (int node = 1; node < s; ++node) {
      TriangleBasis b;
      b.p_left = wire.start + (node - 1) * step;
      b.p_center = wire.start + node * step;
      b.p_right = wire.start + (node + 1) * step;
      b.tangent = tangent;
      b.seg_len = seg_len;
      b.radius = wire.radius;
      b.wire_index = static_cast<int>(w);
      b.node_index = node;
      bases.push_back(b);
    }
  }
  return bases;
}

WireModel segment_wires(std::vector<Wire> wires, int segments_per_wire,
                        double design_frequency) {
  if (segments_per_wire < 8 || segments_per_wire % 2 != 0)
    throw std::invalid_argument(
        "segment_wires: segments per wire must be even and >= 8");
  WireModel model;
  model.segments_per_dipole = segments_per_wire;
  model.design_frequency = design_frequency;
  int basis_offset = 0;
  for (const Wire& wire : wires) {
    const double len = wire.length();
    if (!(len > 0.0))
      throw std::invalid_argument("segment_wires: degenerate wire (start == end)");
    if (!(wire.radius > 0.0))
      throw std::invalid_argument("segment_wires: wire radius must be positive");
    if (!(wire.radius < 0.1 * len))
      throw std::invalid_argument(
          "segment_wires: radius/length >= 0.1 violates the thin-wire assumption");
    const double seg = len / segments_per_wire;
    if (seg < 2.0 * wire.radius)
      throw MeshError(
          "segment_wires: segment length " + std::to_string(seg) +
          " m is below twice the wire radius (" + std::to_string(wire.radius) +
          " m); thin-wire kernel invalid");
    if (wire.has_center_port) {
      // Center node of an even segmentation = interior node s/2, which is
      // basis (s/2 - 1) within this wire.
      const int basis = basis_offset + segments_per_wire / 2 - 1;
      if (!model.port_map.emplace(wire.port_id, basis).second)
        throw std::invalid_argument("segment_wires: duplicate port id");
    }
    basis_offset += segments_per_wire - 1;
    model.wires.push_back(wire);
  }
  model.basis_count = basis_offset;
  return model;
}

WireModel build_model(const ArrayDesign& design, int segments_per_dipole) {
  design.validate();

  struct Arm {
    double length, width;
    bool along_x;
    int port_id;
  };
  // Per element: the lexicographically larger (length, width) arm sits at
  // +delta/2, the other at -delta/2 (ties: y up). Keying the offset to the
  // arm dimensions instead of the orientation makes an x<->y design swap
  // build the exact x<->y mirror of the model.
  auto make_element = [](double z_center, const Arm& x_arm, const Arm& y_arm,
                         std::vector<Wire>& out) {
    const double ax = strip_to_radius(x_arm.width);
    const double ay = strip_to_radius(y_arm.width);
    const double delta = 2.0 * std::max(ax, ay);
    const bool x_up = std::make_pair(x_arm.length, x_arm.width) >
                      std::make_pair(y_arm.length, y_arm.width);
    const double zx = z_center + (x_up ? +0.5 : -0.5) * delta;
    const double zy = z_center + (x_up ? -0.5 : +0.5) * delta;

    Wire wx;
    wx.start = Vec3(-0.5 * x_arm.length, 0.0, zx);
    wx.end = Vec3(+0.5 * x_arm.length, 0.0, zx);
    wx.radius = ax;
    wx.has_center_port = true;
    wx.port_id = x_arm.port_id;
    out.push_back(wx);

    Wire wy;
    wy.start = Vec3(0.0, -0.5 * y_arm.length, zy);
    wy.end = Vec3(0.0, +0.5 * y_arm.length, zy);
    wy.radius = ay;
    wy.has_center_port = true;
    wy.port_id = y_arm.port_id;
    out.push_back(wy);
  };

  std::vector<Wire> wires;
  make_element(+0.5 * design.spacing_d, {design.lx1, design.wx1, true, 0},
               {design.ly1, design.wy1, false, 1}, wires);
  make_element(-0.5 * design.spacing_d, {design.lx2, design.wx2, true, 2},
               {design.ly2, design.wy2, false, 3}, wires);

  WireModel model = segment_wires(std::move(wires), segments_per_dipole,
                                  design.frequency);
  model.driven_port_ids = {0, 1};
  model.parasitic_port_ids = {2, 3};
  return model;
}

namespace {

constexpr double kContainTol = 1e-12;  // absolute, meters

bool contains_all(std::span<const Vec3> points, const Vec3& center,
                  double radius) {
  for (const Vec3& p : points)
    if ((p - center).norm() > radius + kContainTol) return false;
  return true;
}

// Smallest sphere through two points: diametral.
Sphere sphere_from_2(const Vec3& a, const Vec3& b) {
  Sphere s;
  s.center = 0.5 * (a + b);
  s.radius = 0.5 * (b - a).norm();
  return s;
}

// Smallest sphere through three points: circumcircle of the triangle,
// center in the triangle's plane. Degenerate (collinear) -> radius < 0.
Sphere sphere_from_3(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a;
  const Vec3 n = ab.cross(ac);
  const double n2 = n.squaredNorm();
  if (n2 < 1e-30) return {Vec3::Zero(), -1.0};
  const Vec3 center =
      a + (ab.squaredNorm() * ac.cross(n) + ac.squaredNorm() * n.cross(ab)) /
              (2.0 * n2);
  return {center, (center - a).norm()};
}

// Sphere through four points (circumsphere). Degenerate (coplanar) ->
// radius < 0.
Sphere sphere_from_4(const Vec3& a, const Vec3& b, const Vec3& c,
                     const Vec3& d) {
  Eigen::Matrix3d m;
  m.row(0) = (b - a).transpose();
  m.row(1) = (c - a).transpose();
  m.row(2) = (d - a).transpose();
  const double det = m.determinant();
  if (std::abs(det) < 1e-30) return {Vec3::Zero(), -1.0};
  Eigen::Vector3d rhs(0.5 * (b.squaredNorm() - a.squaredNorm()),
                      0.5 * (c.squaredNorm() - a.squaredNorm()),
                      0.5 * (d.squaredNorm() - a.squaredNorm()));
  const Vec3 center = m.fullPivLu().solve(rhs);
  return {center, (center - a).norm()};
}

}  // namespace

Sphere minimal_enclosing_sphere(std::span<const Vec3> points) {
  const std::size_t n = points.size();
  if (n == 0)
    throw std::invalid_argument("minimal_enclosing_sphere: empty point set");

  Sphere best{points[0], std::numeric_limits<double>::infinity()};
  auto consider = [&](const Sphere& s) {
    if (s.radius >= 0.0 && s.radius < best.radius &&
        contains_all(points, s.center, s.radius))
      best = s;
  };

  for (std::size_t i = 0; i < n; ++i) consider({points[i], 0.0});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      consider(sphere_from_2(points[i], points[j]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        consider(sphere_from_3(points[i], points[j], points[k]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
          consider(sphere_from_4(points[i], points[j], points[k], points[l]));
  return best;
}

SphereMetric min_enclosing_sphere(const WireModel& model) {
  if (model.wires.empty())
    throw std::invalid_argument("min_enclosing_sphere: model has no wires");
  std::vector<Vec3> tips;
  tips.reserve(2 * model.wires.size());
  for (const Wire& w : model.wires) {
    tips.push_back(w.start);
    tips.push_back(w.end);
  }
  const Sphere s = minimal_enclosing_sphere(tips);
  SphereMetric metric;
  metric.center = s.center;
  metric.radius_a = s.radius;
  metric.ka = 2.0 * kPi * s.radius * model.design_frequency / kC0;
  return metric;
}

}  // namespace xdipole
