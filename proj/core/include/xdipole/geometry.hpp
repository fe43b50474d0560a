#ifndef XDIPOLE_GEOMETRY_HPP
#define XDIPOLE_GEOMETRY_HPP

#include <Eigen/Core>
#include <array>
#include <map>
#include <span>
#include <vector>

namespace xdipole {

using Vec3 = Eigen::Vector3d;

/// Free-space wavelength c/f [m]. Throws std::domain_error for f <= 0.
double wavelength(double frequency_hz);

/// Equivalent round-wire radius of a flat strip of width w: a = w/4.
/// Throws std::domain_error for non-positive width.
double strip_to_radius(double width_m);

/// Design vector of the two-element crossed-dipole array.
///
/// Index 1 is the driven (upper) element, index 2 the parasitic (lower)
/// one. Lengths are full tip-to-tip dipole lengths, widths are the strip
/// widths before the w/4 wire equivalence.
struct ArrayDesign {
  double lx1 = 0.0;  ///< driven x-dipole length [m]
  double lx2 = 0.0;  ///< parasitic x-dipole length [m]
  double ly1 = 0.0;  ///< driven y-dipole length [m]
  double ly2 = 0.0;  ///< parasitic y-dipole length [m]
  double wx1 = 0.0, wx2 = 0.0, wy1 = 0.0, wy2 = 0.0;  ///< strip widths [m]
  double spacing_d = 0.0;       ///< center-to-center element spacing along z [m]
  double load_reactance = 0.0;  ///< X_L [ohm]; the parasitic load is Z_L = j*X_L
  double frequency = 0.0;       ///< design frequency f0 [Hz]

  /// Throws std::domain_error if any invariant is violated (positive
  /// lengths/widths/spacing/frequency, width < length per arm).
  void validate() const;

  /// Design with driven and parasitic element roles exchanged.
  ArrayDesign swapped_elements() const;

  /// Design with x- and y-arm dimensions exchanged (both elements).
  ArrayDesign mirrored_xy() const;
};

/// A straight cylindrical wire.
struct Wire {
  Vec3 start = Vec3::Zero();
  Vec3 end = Vec3::Zero();
  double radius = 0.0;
  bool has_center_port = false;
  int port_id = -1;

  double length() const { return (end - start).norm(); }
  Vec3 tangent() const { return (end - start).normalized(); }
};

/// Segmented thin-wire model with triangle-basis bookkeeping.
///
/// Each wire is divided into segments_per_dipole equal segments; the
/// triangle bases sit on the interior nodes, so every wire contributes
/// segments_per_dipole - 1 unknowns. Wires with a center port expose the
/// basis on the middle node (the feed gap) through port_map.
struct WireModel {
  std::vector<Wire> wires;
  int segments_per_dipole = 0;
  int basis_count = 0;
  std::map<int, int> port_map;  ///< port_id -> global basis index
  std::array<int, 2> driven_port_ids{-1, -1};
  std::array<int, 2> parasitic_port_ids{-1, -1};
  double design_frequency = 0.0;
};

/// One triangle (rooftop) basis function: unit peak on an interior node,
/// falling linearly to zero on the two neighbouring nodes.
struct TriangleBasis {
  Vec3 p_left, p_center, p_right;
  Vec3 tangent;      ///< wire tangent (same for both half-supports)
  double seg_len;    ///< segment length (uniform per wire)
  double radius;     ///< wire radius
  int wire_index;
  int node_index;    ///< interior node index on the wire, 1-based
};

/// Expands the model into its triangle basis functions, wire by wire.
std::vector<TriangleBasis> triangle_bases(const WireModel& model);

/// Segments a set of wires into a WireModel. Shared plumbing for
/// build_model and for canonical single-wire test structures.
///
/// Throws std::invalid_argument for odd or too-small segment counts and
/// for degenerate wires, MeshError when a segment would be shorter than
/// twice the wire radius.
WireModel segment_wires(std::vector<Wire> wires, int segments_per_wire,
                        double design_frequency);

/// Builds the four-wire crossed-dipole array model from a design.
///
/// Both elements are centered on the z-axis at +/- spacing_d/2. Within an
/// element the two orthogonal arms are separated along z by
/// delta = 2*max(arm radii) so the wire surfaces cannot intersect; the
/// split is +/- delta/2 around the element plane and is keyed to the arm
/// dimensions (the lexicographically larger (length, width) arm goes to
/// +delta/2) so that an x<->y swap of the design builds the exact x<->y
/// mirror of the model.
WireModel build_model(const ArrayDesign& design, int segments_per_dipole);

/// Sphere in 3-space.
struct Sphere {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
};

/// Exact minimum enclosing sphere of a point set, found by enumerating
/// all 1/2/3/4-point boundary candidates (the optimum is determined by at
/// most four points). Throws std::invalid_argument on an empty set.
Sphere minimal_enclosing_sphere(std::span<const Vec3> points);

/// Electrical-size summary of a model.
struct SphereMetric {
  Vec3 center = Vec3::Zero();
  double radius_a = 0.0;  ///< minimum enclosing sphere radius [m]
  double ka = 0.0;        ///< 2*pi*a*f/c at the design frequency
};

/// Minimum sphere over all wire endpoints (the arm tips), with ka at the
/// model's design frequency.
SphereMetric min_enclosing_sphere(const WireModel& model);

}  // namespace xdipole

#endif  // XDIPOLE_GEOMETRY_HPP
