#include <doctest.h>

#include <array>
#include <random>

#include "nt/curves.hpp"
#include "nt/mapping_class.hpp"

using namespace nt;

namespace {

using M2 = std::array<long, 4>;

M2 mul(const M2& x, const M2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

M2 as_matrix(const std::vector<std::vector<int>>& h) { return {h[0][0], h[0][1], h[1][0], h[1][1]}; }

struct RandomTwist {
  std::string text;
  M2 matrix{1, 0, 0, 1};
};

RandomTwist random_twist(std::mt19937& rng, int length) {
  static const char* names[4] = {"Ta", "Ta^-1", "Tb", "Tb^-1"};
  static const M2 mats[4] = {M2{1, 1, 0, 1}, M2{1, -1, 0, 1}, M2{1, 0, -1, 1}, M2{1, 0, 1, 1}};
  std::uniform_int_distribution<int> pick(0, 3);
  RandomTwist t;
  for (int k = 0; k < length; ++k) {
    const int i = pick(rng);
    t.text += (k ? "*" : "") + std::string(names[i]);
    t.matrix = mul(t.matrix, mats[i]);
  }
  return t;
}

}  // namespace

TEST_CASE("torus twists act on homology by the standard matrices") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  CHECK(as_matrix(homology_action(t, build_mapping_class(t, "Ta"))) == M2{1, 1, 0, 1});
  CHECK(as_matrix(homology_action(t, build_mapping_class(t, "Tb"))) == M2{1, 0, -1, 1});
  CHECK(as_matrix(homology_action(t, build_mapping_class(t, "Ta*Tb^-1"))) == M2{2, 1, 1, 1});
}

TEST_CASE("homology action is a homomorphism on random twist words") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  std::mt19937 rng(5);
  for (int k = 0; k < 50; ++k) {
    const RandomTwist w = random_twist(rng, 1 + k % 7);
    CHECK(as_matrix(homology_action(t, build_mapping_class(t, w.text))) == w.matrix);
  }
}

TEST_CASE("built maps are automorphisms and compose functorially") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  const auto curves = enumerate_simple_closed_geodesics(t, 4);
  std::mt19937 rng(9);
  for (int k = 0; k < 20; ++k) {
    const MappingClass f = build_mapping_class(t, random_twist(rng, 3).text);
    const MappingClass g = build_mapping_class(t, random_twist(rng, 3).text);
    CHECK_NOTHROW(verify_automorphism(t, f));
    const MappingClass fg = compose(t, f, g);
    const MappingClass finv = inverse(f);
    for (const CurveClass& c : curves) {
      CHECK(tighten(t, fg, c.word) == tighten(t, f, tighten(t, g, c.word)));
      CHECK(tighten(t, finv, tighten(t, f, c.word)) == c.word);
    }
  }
}

TEST_CASE("tightening preserves intersection numbers") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  const auto curves = enumerate_simple_closed_geodesics(t, 3);
  const MappingClass f = build_mapping_class(t, "Ta*Tb^-1*Ta");
  for (const CurveClass& x : curves)
    for (const CurveClass& y : curves)
      CHECK(geometric_intersection(t, tighten(t, f, x.word), tighten(t, f, y.word)) ==
            geometric_intersection(t, x, y));
}

TEST_CASE("twist formula: i(T_c^n x, x) = n i(c, x)^2") {
  for (const auto& [name, c, x] : {std::tuple{"torus1", "a", "b"}, std::tuple{"sphere4", "c01", "c12"}}) {
    const FiniteTypeSurface s = catalog_surface(name);
    const Word cw = resolve_curve(s, c), xw = resolve_curve(s, x);
    const int i = geometric_intersection(s, cw, xw);
    const MappingClass tw = build_mapping_class(s, std::string("T") + c);
    Word img = xw;
    for (int n = 1; n <= 4; ++n) {
      img = tighten(s, tw, img);
      CHECK(geometric_intersection(s, img, xw) == n * i * i);
    }
  }
}

TEST_CASE("geometric twist agrees with the hand-written twist on curves") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  const MappingClass hand = dehn_twist(t, Word{1});
  const MappingClass geo = geometric_twist(t, Word{1});
  for (const CurveClass& c : enumerate_simple_closed_geodesics(t, 5))
    CHECK(tighten(t, hand, c.word) == tighten(t, geo, c.word));
}

TEST_CASE("genus-two separating twist fixes curves on both sides") {
  const FiniteTypeSurface g = catalog_surface("genus2");
  const MappingClass td = build_mapping_class(g, "Td");
  CHECK_NOTHROW(verify_automorphism(g, td));
  for (const char* w : {"a1", "b1", "a2", "b2", "a1b1A1B1"})
    CHECK(tighten(g, td, g.group.parse(w)) == g.group.unoriented_normal_form(g.group.parse(w)));
}

TEST_CASE("reflection reverses orientation and the boundary order") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  const MappingClass r = build_mapping_class(t, "R");
  CHECK(r.orientation == Orientation::reversing);
  CHECK(compose(t, r, r).is_identity());
  std::vector<Word> elements;
  for (const CurveClass& c : enumerate_simple_closed_geodesics(t, 4)) elements.push_back(c.word);
  CHECK(boundary_action(t, r, Word{}, elements).monotone);
  CHECK(boundary_action(t, build_mapping_class(t, "Ta*Tb^-1"), Word{}, elements).monotone);
}

TEST_CASE("malformed mapping class words") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  CHECK_THROWS_AS(build_mapping_class(t, "Tq"), Error);
  CHECK_THROWS_AS(build_mapping_class(t, "Ta**Tb"), Error);
  CHECK_THROWS_AS(build_mapping_class(t, "Ta^x"), Error);
  CHECK_THROWS_AS(build_mapping_class(catalog_surface("genus2"), "R"), Error);
  CHECK(build_mapping_class(t, "").is_identity());
  MappingClass bad = identity_class(t);
  bad.images[1] = Word{1};
  CHECK_THROWS_AS(verify_automorphism(t, bad), Error);
}
