#pragma once

// Poincare disk arithmetic: boundary points, isometries, geodesics.
//
// Everything here is a value type. Boundary points are stored as angles in
// [0, 2*pi); isometries as a normalized 2x2 complex matrix acting by Moebius
// transformation, optionally precomposed with complex conjugation.

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nt {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kTolAngle = 1e-9;
inline constexpr double kTolTrace = 1e-9;

enum class ErrorKind {
  malformed_isometry,
  degenerate_geodesic,
  invalid_point,
  non_standard_signature,
  unsupported,
  unknown_generator,
  unknown_curve,
  relator_violation,
  precondition,
  parse,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Wrap an angle into [0, 2*pi).
double normalize_angle(double theta);

/// Signed difference b - a wrapped into (-pi, pi].
double angle_difference(double a, double b);

class BoundaryPoint {
 public:
  BoundaryPoint() = default;
  explicit BoundaryPoint(double theta) : angle_(normalize_angle(theta)) {}

  static BoundaryPoint from_complex(cplx z) { return BoundaryPoint(std::arg(z)); }

  double angle() const { return angle_; }
  cplx to_complex() const { return std::polar(1.0, angle_); }

  /// Circular distance in radians, in [0, pi].
  double distance(BoundaryPoint other) const;
  bool approx_equal(BoundaryPoint other, double tol = kTolAngle) const { return distance(other) <= tol; }

 private:
  double angle_ = 0.0;
};

class DiskPoint {
 public:
  static constexpr double kMaxNorm = 1.0 - 1e-12;

  DiskPoint() = default;
  explicit DiskPoint(cplx z);
  DiskPoint(double x, double y) : DiskPoint(cplx(x, y)) {}

  cplx z() const { return z_; }
  double x() const { return z_.real(); }
  double y() const { return z_.imag(); }

 private:
  cplx z_{0.0, 0.0};
};

enum class Orientation { preserving, reversing };

inline Orientation operator*(Orientation a, Orientation b) {
  return a == b ? Orientation::preserving : Orientation::reversing;
}

/// Isometry of the disk. Preserving maps act as z -> (a z + b) / (c z + d);
/// reversing maps act as z -> M(conj z).
class IsometryMap {
 public:
  IsometryMap() = default;
  IsometryMap(cplx a, cplx b, cplx c, cplx d, Orientation o = Orientation::preserving);

  static IsometryMap identity() { return {}; }
  static IsometryMap rotation(double theta);
  /// Hyperbolic translation along the diameter at angle `direction`, moving
  /// the origin a hyperbolic distance `distance` towards that direction.
  static IsometryMap translation(double direction, double distance);
  /// Moebius map sending the origin to `p`, fixing the diameter through p.
  static IsometryMap moving_origin_to(cplx p);
  /// Complex conjugation (reflection in the real diameter).
  static IsometryMap conjugation();
  /// Conjugate of an upper-half-plane SL(2,R) matrix by the Cayley transform.
  static IsometryMap from_upper_half_plane(double a, double b, double c, double d);

  const std::array<cplx, 4>& matrix() const { return m_; }
  Orientation orientation() const { return orientation_; }

  DiskPoint apply(DiskPoint p) const;
  BoundaryPoint apply(BoundaryPoint p) const;
  /// Raw action on any point of the Riemann sphere (no disk check).
  cplx apply_raw(cplx z) const;

  IsometryMap compose(const IsometryMap& rhs) const;  // (*this) o rhs
  IsometryMap inverse() const;
  IsometryMap operator*(const IsometryMap& rhs) const { return compose(rhs); }

  /// Normalized trace (real for disk isometries up to rounding).
  double trace() const;
  bool approx_identity(double tol = 1e-10) const;
  double max_entry_distance(const IsometryMap& other) const;

 private:
  void normalize();

  std::array<cplx, 4> m_{cplx(1), cplx(0), cplx(0), cplx(1)};
  Orientation orientation_ = Orientation::preserving;
};

class Geodesic {
 public:
  Geodesic() = default;
  /// Throws Error(degenerate_geodesic) when the endpoints coincide.
  Geodesic(BoundaryPoint from, BoundaryPoint to);

  BoundaryPoint from() const { return from_; }
  BoundaryPoint to() const { return to_; }
  /// Endpoints sorted by angle; the unordered identity of the geodesic.
  std::pair<double, double> canonical() const;
  Geodesic reversed() const { return Geodesic(to_, from_); }
  Geodesic image(const IsometryMap& m) const { return Geodesic(m.apply(from_), m.apply(to_)); }

  /// Euclidean centre and radius of the supporting circle; nullopt for a
  /// diameter.
  std::optional<std::pair<cplx, double>> circle() const;
  /// Closest point of the geodesic to the origin.
  DiskPoint closest_to_origin() const;
  /// Max of the circular distances between matching endpoints, minimized over
  /// the two matchings.
  double endpoint_distance(const Geodesic& other) const;

 private:
  BoundaryPoint from_;
  BoundaryPoint to_{kPi};
};

enum class IsometryKind { identity, elliptic, parabolic, hyperbolic };

struct IsometryClassification {
  IsometryKind kind = IsometryKind::identity;
  std::vector<BoundaryPoint> fixed_points;  // hyperbolic: {repelling, attracting}
  double translation_length = 0.0;
  std::optional<Geodesic> axis;  // oriented repelling -> attracting
};

IsometryClassification classify_isometry(const IsometryMap& m);

double hyperbolic_distance(DiskPoint p, DiskPoint q);

struct InfiniteProjection {};
using ProjectionLength = std::variant<double, InfiniteProjection>;

/// Length of the orthogonal projection of `sigma` onto `gamma`.
ProjectionLength projection_length(const Geodesic& sigma, const Geodesic& gamma, double tol = kTolAngle);

enum class Linking { linked, unlinked, shared_endpoint };

Linking endpoint_linking(const Geodesic& p, const Geodesic& q, double tol = kTolAngle);

/// True when `t` lies strictly inside the counter-clockwise arc from `a` to `b`.
bool in_open_arc(double a, double b, double t);

/// Intersection point of two linked geodesics.
DiskPoint geodesic_intersection(const Geodesic& p, const Geodesic& q);

/// Signed position of the foot of the perpendicular from `x` onto `gamma`,
/// measured in hyperbolic length from an arbitrary but fixed origin on gamma
/// (increasing towards gamma.to()).
double foot_position(const Geodesic& gamma, cplx x);

/// Endpoints of the common perpendicular of two disjoint geodesics.
Geodesic common_perpendicular(const Geodesic& g1, const Geodesic& g2);

/// Interior angle at a vertex between the geodesic rays towards `p` and `q`
/// from `v` (all in the closed disk). Returns 0 when v is ideal.
double vertex_angle(cplx v, cplx p, cplx q);

}  // namespace nt
