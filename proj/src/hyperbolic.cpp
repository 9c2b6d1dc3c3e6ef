#include "nt/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

namespace nt {

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double angle_difference(double a, double b) {
  double d = std::fmod(b - a, kTwoPi);
  if (d <= -kPi) d += kTwoPi;
  if (d > kPi) d -= kTwoPi;
  return d;
}

double BoundaryPoint::distance(BoundaryPoint other) const {
  return std::abs(angle_difference(angle_, other.angle_));
}

DiskPoint::DiskPoint(cplx z) : z_(z) {
  if (!(std::abs(z) <= kMaxNorm)) throw Error(ErrorKind::invalid_point, "disk point outside the open unit disk");
}

namespace {

DiskPoint clamp_to_disk(cplx z) {
  const double r = std::abs(z);
  if (r > DiskPoint::kMaxNorm) z *= DiskPoint::kMaxNorm / r;
  return DiskPoint(z);
}

std::array<cplx, 4> mul(const std::array<cplx, 4>& x, const std::array<cplx, 4>& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

std::array<cplx, 4> conj_entries(const std::array<cplx, 4>& x) {
  return {std::conj(x[0]), std::conj(x[1]), std::conj(x[2]), std::conj(x[3])};
}

}  // namespace

IsometryMap::IsometryMap(cplx a, cplx b, cplx c, cplx d, Orientation o) : m_{a, b, c, d}, orientation_(o) {
  normalize();
}

void IsometryMap::normalize() {
  const cplx det = m_[0] * m_[3] - m_[1] * m_[2];
  double size = 0.0;
  for (const auto& e : m_) size = std::max(size, std::abs(e));
  if (!std::isfinite(size) || !std::isfinite(std::abs(det)))
    throw Error(ErrorKind::malformed_isometry, "isometry matrix is not finite");
  if (std::abs(det) > 1e-8 * size * size) {
    const cplx s = std::sqrt(det);
    for (auto& e : m_) e /= s;
  } else if (size < 1e4) {
    throw Error(ErrorKind::malformed_isometry, "isometry matrix is degenerate");
  }
  // Otherwise the determinant was lost to cancellation in a long product of
  // unimodular factors and the entries are kept as they are.
  // Fix the sign ambiguity so that the trace has nonnegative real part.
  if ((m_[0] + m_[3]).real() < 0.0)
    for (auto& e : m_) e = -e;
}

IsometryMap IsometryMap::rotation(double theta) {
  const cplx h = std::polar(1.0, theta / 2.0);
  return IsometryMap(h, 0.0, 0.0, std::conj(h));
}

IsometryMap IsometryMap::translation(double direction, double distance) {
  const double t = std::tanh(distance / 2.0);
  const IsometryMap along_real(1.0, t, t, 1.0);
  return rotation(direction) * along_real * rotation(-direction);
}

IsometryMap IsometryMap::moving_origin_to(cplx p) { return IsometryMap(1.0, p, std::conj(p), 1.0); }

IsometryMap IsometryMap::conjugation() { return IsometryMap(1.0, 0.0, 0.0, 1.0, Orientation::reversing); }

IsometryMap IsometryMap::from_upper_half_plane(double a, double b, double c, double d) {
  const cplx i(0.0, 1.0);
  const std::array<cplx, 4> cayley{1.0, -i, 1.0, i};
  const std::array<cplx, 4> cayley_inv{i, i, -1.0, 1.0};
  const std::array<cplx, 4> m{a, b, c, d};
  const auto r = mul(mul(cayley, m), cayley_inv);
  return IsometryMap(r[0], r[1], r[2], r[3]);
}

cplx IsometryMap::apply_raw(cplx z) const {
  if (orientation_ == Orientation::reversing) z = std::conj(z);
  return (m_[0] * z + m_[1]) / (m_[2] * z + m_[3]);
}

DiskPoint IsometryMap::apply(DiskPoint p) const { return clamp_to_disk(apply_raw(p.z())); }

BoundaryPoint IsometryMap::apply(BoundaryPoint p) const { return BoundaryPoint::from_complex(apply_raw(p.to_complex())); }

IsometryMap IsometryMap::compose(const IsometryMap& rhs) const {
  const auto right = orientation_ == Orientation::reversing ? conj_entries(rhs.m_) : rhs.m_;
  const auto r = mul(m_, right);
  return IsometryMap(r[0], r[1], r[2], r[3], orientation_ * rhs.orientation_);
}

IsometryMap IsometryMap::inverse() const {
  std::array<cplx, 4> inv{m_[3], -m_[1], -m_[2], m_[0]};
  if (orientation_ == Orientation::reversing) inv = conj_entries(inv);
  return IsometryMap(inv[0], inv[1], inv[2], inv[3], orientation_);
}

double IsometryMap::trace() const { return (m_[0] + m_[3]).real(); }

bool IsometryMap::approx_identity(double tol) const {
  if (orientation_ != Orientation::preserving) return false;
  return std::abs(m_[0] - 1.0) <= tol && std::abs(m_[1]) <= tol && std::abs(m_[2]) <= tol &&
         std::abs(m_[3] - 1.0) <= tol;
}

double IsometryMap::max_entry_distance(const IsometryMap& other) const {
  double d = 0.0;
  for (int k = 0; k < 4; ++k) d = std::max(d, std::abs(m_[k] - other.m_[k]));
  return d;
}

Geodesic::Geodesic(BoundaryPoint from, BoundaryPoint to) : from_(from), to_(to) {
  if (from.distance(to) <= kTolAngle) throw Error(ErrorKind::degenerate_geodesic, "geodesic endpoints coincide");
}

std::pair<double, double> Geodesic::canonical() const {
  return std::minmax(from_.angle(), to_.angle());
}

std::optional<std::pair<cplx, double>> Geodesic::circle() const {
  const cplx p = from_.to_complex();
  const cplx q = to_.to_complex();
  const double denom = 1.0 + (p * std::conj(q)).real();
  if (std::abs(denom) < 1e-14) return std::nullopt;
  const cplx c = (p + q) / denom;
  return std::make_pair(c, std::abs(c - p));
}

DiskPoint Geodesic::closest_to_origin() const {
  const auto circ = circle();
  if (!circ) return DiskPoint(0.0, 0.0);
  const cplx c = circ->first;
  return clamp_to_disk(c * (1.0 - circ->second / std::abs(c)));
}

double Geodesic::endpoint_distance(const Geodesic& other) const {
  const double same = std::max(from_.distance(other.from_), to_.distance(other.to_));
  const double swapped = std::max(from_.distance(other.to_), to_.distance(other.from_));
  return std::min(same, swapped);
}

IsometryClassification classify_isometry(const IsometryMap& m) {
  if (m.orientation() != Orientation::preserving)
    throw Error(ErrorKind::precondition, "orientation-reversing isometries are not classified");
  IsometryClassification out;
  const double t = std::abs(m.trace());
  const auto& e = m.matrix();
  if (t < 2.0 - kTolTrace) {
    out.kind = IsometryKind::elliptic;
    return out;
  }
  if (std::abs(t - 2.0) <= kTolTrace) {
    if (m.approx_identity(1e-9)) {
      out.kind = IsometryKind::identity;
      return out;
    }
    out.kind = IsometryKind::parabolic;
    // Double root of c z^2 + (d - a) z - b = 0.
    out.fixed_points.push_back(BoundaryPoint::from_complex((e[0] - e[3]) / (2.0 * e[2])));
    return out;
  }
  out.kind = IsometryKind::hyperbolic;
  out.translation_length = 2.0 * std::acosh(t / 2.0);
  const cplx disc = std::sqrt((e[3] - e[0]) * (e[3] - e[0]) + 4.0 * e[1] * e[2]);
  const cplx z1 = (e[0] - e[3] + disc) / (2.0 * e[2]);
  const cplx z2 = (e[0] - e[3] - disc) / (2.0 * e[2]);
  // |f'(z)| = 1 / |c z + d|^2; the attracting point has derivative < 1.
  const bool z1_attracting = std::abs(e[2] * z1 + e[3]) > std::abs(e[2] * z2 + e[3]);
  const BoundaryPoint attracting = BoundaryPoint::from_complex(z1_attracting ? z1 : z2);
  const BoundaryPoint repelling = BoundaryPoint::from_complex(z1_attracting ? z2 : z1);
  out.fixed_points = {repelling, attracting};
  out.axis = Geodesic(repelling, attracting);
  return out;
}

double hyperbolic_distance(DiskPoint p, DiskPoint q) {
  const double r = std::abs(p.z() - q.z()) / std::abs(1.0 - std::conj(q.z()) * p.z());
  return 2.0 * std::atanh(std::min(r, 1.0 - 1e-16));
}

bool in_open_arc(double a, double b, double t) {
  const double span = normalize_angle(b - a);
  const double off = normalize_angle(t - a);
  return off > 0.0 && off < span;
}

Linking endpoint_linking(const Geodesic& p, const Geodesic& q, double tol) {
  if (p.from().approx_equal(q.from(), tol) || p.from().approx_equal(q.to(), tol) ||
      p.to().approx_equal(q.from(), tol) || p.to().approx_equal(q.to(), tol))
    return Linking::shared_endpoint;
  const double a = p.from().angle();
  const double b = p.to().angle();
  const bool x = in_open_arc(a, b, q.from().angle());
  const bool y = in_open_arc(a, b, q.to().angle());
  return x != y ? Linking::linked : Linking::unlinked;
}

double foot_position(const Geodesic& gamma, cplx x) {
  const cplx p = gamma.from().to_complex();
  const cplx q = gamma.to().to_complex();
  return std::log(std::abs((x - p) / (x - q)));
}

ProjectionLength projection_length(const Geodesic& sigma, const Geodesic& gamma, double tol) {
  for (BoundaryPoint s : {sigma.from(), sigma.to()})
    for (BoundaryPoint g : {gamma.from(), gamma.to()})
      if (s.approx_equal(g, tol)) return InfiniteProjection{};
  return std::abs(foot_position(gamma, sigma.from().to_complex()) - foot_position(gamma, sigma.to().to_complex()));
}

DiskPoint geodesic_intersection(const Geodesic& p, const Geodesic& q) {
  const auto cp = p.circle();
  const auto cq = q.circle();
  if (!cp && !cq) return DiskPoint(0.0, 0.0);
  if (!cp || !cq) {
    // One diameter z = s u and one circle |z - c| = r.
    const Geodesic& dia = cp ? q : p;
    const auto& circ = cp ? *cp : *cq;
    const cplx u = dia.from().to_complex();
    const double bq = -2.0 * (std::conj(u) * circ.first).real();
    const double cq0 = std::norm(circ.first) - circ.second * circ.second;
    const double disc = std::sqrt(std::max(0.0, bq * bq - 4.0 * cq0));
    const double s1 = (-bq + disc) / 2.0;
    const double s2 = (-bq - disc) / 2.0;
    return clamp_to_disk(u * (std::abs(s1) < std::abs(s2) ? s1 : s2));
  }
  const cplx c1 = cp->first, c2 = cq->first;
  const double r1 = cp->second, r2 = cq->second;
  const double d = std::abs(c2 - c1);
  const double a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
  const double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
  const cplx dir = (c2 - c1) / d;
  const cplx mid = c1 + a * dir;
  const cplx perp = dir * cplx(0.0, 1.0);
  const cplx z1 = mid + h * perp;
  const cplx z2 = mid - h * perp;
  return clamp_to_disk(std::abs(z1) < std::abs(z2) ? z1 : z2);
}

Geodesic common_perpendicular(const Geodesic& g1, const Geodesic& g2) {
  const cplx p = g1.from().to_complex(), q = g1.to().to_complex();
  const cplx r = g2.from().to_complex(), s = g2.to().to_complex();
  // The Moebius involution swapping p<->q and r<->s fixes the endpoints of
  // the common perpendicular.
  const cplx alpha = p * q - r * s;
  const cplx gamma = p + q - r - s;
  const cplx beta = gamma * p * q - alpha * (p + q);
  if (std::abs(gamma) < 1e-14) throw Error(ErrorKind::degenerate_geodesic, "no common perpendicular");
  const cplx root = std::sqrt(alpha * alpha + beta * gamma);
  return Geodesic(BoundaryPoint::from_complex((alpha + root) / gamma), BoundaryPoint::from_complex((alpha - root) / gamma));
}

double vertex_angle(cplx v, cplx p, cplx q) {
  if (std::abs(v) >= 1.0 - 1e-12) return 0.0;
  const auto to_origin = [v](cplx z) { return (z - v) / (1.0 - std::conj(v) * z); };
  return std::abs(angle_difference(std::arg(to_origin(p)), std::arg(to_origin(q))));
}

}  // namespace nt
