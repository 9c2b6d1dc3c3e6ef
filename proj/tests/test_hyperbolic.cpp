#include <doctest.h>

#include <cmath>
#include <random>

#include "nt/hyperbolic.hpp"

using namespace nt;

namespace {

IsometryMap random_isometry(std::mt19937& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi), dist(0.0, 3.0);
  return IsometryMap::rotation(angle(rng)) * IsometryMap::translation(angle(rng), dist(rng));
}

DiskPoint random_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi), radius(0.0, 0.95);
  return DiskPoint(std::polar(radius(rng), angle(rng)));
}

}  // namespace

TEST_CASE("translation moves the origin by the requested distance") {
  for (double d : {0.1, 1.0, 4.0}) {
    const IsometryMap t = IsometryMap::translation(0.7, d);
    CHECK(hyperbolic_distance(DiskPoint(0.0, 0.0), t.apply(DiskPoint(0.0, 0.0))) == doctest::Approx(d).epsilon(1e-12));
  }
}

TEST_CASE("isometries preserve distance and compose associatively") {
  std::mt19937 rng(7);
  for (int k = 0; k < 200; ++k) {
    const IsometryMap f = random_isometry(rng), g = random_isometry(rng), h = random_isometry(rng);
    const DiskPoint p = random_point(rng), q = random_point(rng);
    CHECK(hyperbolic_distance(f.apply(p), f.apply(q)) == doctest::Approx(hyperbolic_distance(p, q)).epsilon(1e-9));
    CHECK(((f * g) * h).max_entry_distance(f * (g * h)) < 1e-9);
    CHECK((f * f.inverse()).approx_identity(1e-9));
  }
}

TEST_CASE("boundary points stay on the circle") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int k = 0; k < 100; ++k) {
    const IsometryMap f = random_isometry(rng);
    const BoundaryPoint b(angle(rng));
    CHECK(std::abs(std::abs(f.apply_raw(b.to_complex())) - 1.0) < 1e-9);
    CHECK(f.apply(b).approx_equal(BoundaryPoint::from_complex(f.apply_raw(b.to_complex())), 1e-9));
  }
}

TEST_CASE("translation length of a hyperbolic element is its displacement along the axis") {
  const IsometryMap t = IsometryMap::translation(0.3, 2.5);
  const auto c = classify_isometry(t);
  REQUIRE(c.kind == IsometryKind::hyperbolic);
  CHECK(c.translation_length == doctest::Approx(2.5).epsilon(1e-12));
  REQUIRE(c.axis);
  CHECK(c.axis->to().approx_equal(BoundaryPoint(0.3), 1e-9));
  CHECK(c.axis->from().approx_equal(BoundaryPoint(0.3 + kPi), 1e-9));
}

TEST_CASE("elliptic, parabolic and identity classes") {
  CHECK(classify_isometry(IsometryMap::identity()).kind == IsometryKind::identity);
  CHECK(classify_isometry(IsometryMap::rotation(1.0)).kind == IsometryKind::elliptic);
  // z -> z + 1 in the upper half-plane.
  CHECK(classify_isometry(IsometryMap::from_upper_half_plane(1, 1, 0, 1)).kind == IsometryKind::parabolic);
}

TEST_CASE("degenerate matrices are rejected") {
  CHECK_THROWS_AS(IsometryMap(cplx(1), cplx(1), cplx(1), cplx(1)), Error);
  CHECK_THROWS_AS(IsometryMap(cplx(NAN), cplx(0), cplx(0), cplx(1)), Error);
}

TEST_CASE("long products of unimodular maps stay usable") {
  const IsometryMap t = IsometryMap::translation(0.0, 1.5) * IsometryMap::rotation(2.0);
  IsometryMap p;
  for (int k = 0; k < 25; ++k) CHECK_NOTHROW(p = p * t);
  CHECK(std::isfinite(p.trace()));
}

TEST_CASE("geodesic endpoints must differ") {
  CHECK_THROWS_AS(Geodesic(BoundaryPoint(0.5), BoundaryPoint(0.5)), Error);
  const Geodesic g(BoundaryPoint(0.0), BoundaryPoint(kPi));
  CHECK_FALSE(g.circle());
  CHECK(std::abs(g.closest_to_origin().z()) < 1e-12);
}

TEST_CASE("linking of geodesics") {
  const Geodesic g(BoundaryPoint(0.0), BoundaryPoint(kPi));
  CHECK(endpoint_linking(g, Geodesic(BoundaryPoint(kPi / 2), BoundaryPoint(-kPi / 2))) == Linking::linked);
  CHECK(endpoint_linking(g, Geodesic(BoundaryPoint(0.2), BoundaryPoint(0.4))) == Linking::unlinked);
  CHECK(endpoint_linking(g, Geodesic(BoundaryPoint(0.0), BoundaryPoint(1.0))) == Linking::shared_endpoint);
}

TEST_CASE("intersection point lies on both geodesics") {
  const Geodesic p(BoundaryPoint(0.1), BoundaryPoint(2.5)), q(BoundaryPoint(1.2), BoundaryPoint(-2.0));
  REQUIRE(endpoint_linking(p, q) == Linking::linked);
  const DiskPoint x = geodesic_intersection(p, q);
  for (const Geodesic& g : {p, q}) {
    const auto c = g.circle();
    REQUIRE(c);
    CHECK(std::abs(std::abs(x.z() - c->first) - c->second) < 1e-9);
  }
}

TEST_CASE("projection of a geodesic sharing an endpoint is infinite") {
  const Geodesic gamma(BoundaryPoint(0.0), BoundaryPoint(kPi));
  CHECK(std::holds_alternative<InfiniteProjection>(
      projection_length(Geodesic(BoundaryPoint(0.0), BoundaryPoint(1.0)), gamma)));
  const auto finite = projection_length(Geodesic(BoundaryPoint(0.5), BoundaryPoint(1.0)), gamma);
  REQUIRE(std::holds_alternative<double>(finite));
  CHECK(std::get<double>(finite) > 0.0);
}

TEST_CASE("ideal triangle has zero angles, area pi") {
  const cplx a = std::polar(1.0, 0.0), b = std::polar(1.0, 2.0), c = std::polar(1.0, 4.0);
  CHECK(vertex_angle(a, b, c) == 0.0);
  // Regular triangle with vertices at radius r has angles below pi/3.
  const double r = 0.4;
  const cplx u = std::polar(r, 0.0), v = std::polar(r, kTwoPi / 3), w = std::polar(r, 2 * kTwoPi / 3);
  const double ang = vertex_angle(u, v, w);
  CHECK(ang > 0.0);
  CHECK(ang < kPi / 3);
}
