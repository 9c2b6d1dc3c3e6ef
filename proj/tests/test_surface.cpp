#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "nt/curves.hpp"

using namespace nt;

namespace {

int primitive_slopes(int max_length) {
  std::set<std::pair<int, int>> seen;
  for (int p = -max_length; p <= max_length; ++p)
    for (int q = -max_length; q <= max_length; ++q) {
      if (std::abs(p) + std::abs(q) > max_length || std::gcd(p, q) != 1) continue;
      const bool flip = p < 0 || (p == 0 && q < 0);
      seen.insert(flip ? std::pair{-p, -q} : std::pair{p, q});
    }
  return static_cast<int>(seen.size());
}

}  // namespace

TEST_CASE("word parsing and formatting") {
  const GroupPresentation g({"a", "b"}, std::nullopt);
  CHECK(g.parse("abAB") == Word{1, 2, -1, -2});
  CHECK(g.parse("a b^-1") == Word{1, -2});
  CHECK(g.parse("a^3 B") == Word{1, 1, 1, -2});
  CHECK(g.format(Word{1, -2, 2}) == "aBb");
  CHECK_THROWS_AS(g.parse("c"), Error);
}

TEST_CASE("free and cyclic reduction") {
  CHECK(free_reduce(Word{1, 2, -2, -1, 1}) == Word{1});
  const auto c = cyclic_reduce(Word{2, 1, 1, -2});
  CHECK(c.core == Word{1, 1});
  CHECK(least_rotation(Word{2, 1, 1, -1}) == least_rotation(Word{1, -1, 2, 1}));
  CHECK(primitive_root(Word{1, 2, 1, 2, 1, 2}) == std::pair<Word, int>{Word{1, 2}, 3});
}

TEST_CASE("conjugacy normal forms are class invariants") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> letter(0, 3);
  const auto random_word = [&](int n) {
    Word w;
    while (static_cast<int>(w.size()) < n) {
      const int k = letter(rng);
      const Letter l = (k / 2 + 1) * (k % 2 ? -1 : 1);
      if (!w.empty() && w.back() == -l) continue;
      w.push_back(l);
    }
    return w;
  };
  for (int k = 0; k < 100; ++k) {
    const Word w = random_word(6), h = random_word(4);
    const Word conj = concat(concat(h, w), inverse(h));
    CHECK(t.group.conjugacy_normal_form(conj) == t.group.conjugacy_normal_form(w));
    CHECK(t.group.unoriented_normal_form(inverse(w)) == t.group.unoriented_normal_form(w));
  }
  const FiniteTypeSurface g2 = catalog_surface("genus2");
  // a1 b1 A1 B1 equals (a2 b2 A2 B2)^-1 in the closed surface group.
  CHECK(g2.group.conjugacy_normal_form(g2.group.parse("a1b1A1B1")) ==
        g2.group.conjugacy_normal_form(g2.group.parse("b2a2B2A2")));
}

TEST_CASE("fundamental domain areas satisfy Gauss-Bonnet") {
  for (const char* name : {"torus1", "sphere3", "sphere4", "genus2"}) {
    const FiniteTypeSurface s = catalog_surface(name);
    CHECK(std::abs(area(s) - s.signature.expected_area()) < 1e-6);
  }
}

TEST_CASE("surface spec parsing") {
  const SurfaceSpec spec = parse_surface_spec("# comment\ngenus = 1\nboundary = 0\ncusps = 1\ncurve.c = ab\n");
  CHECK(spec.signature == Signature{1, 0, 1, 0});
  CHECK(spec.curves.at("c") == "ab");
  const FiniteTypeSurface s = surface_from_spec(spec);
  CHECK(resolve_curve(s, "c") == s.group.unoriented_normal_form(Word{1, 2}));
  CHECK_THROWS_AS(parse_surface_spec("genus = 1\ncusps = 1\n"), Error);
  CHECK_THROWS_AS(parse_surface_spec("genus = 1\nboundary = 0\ncusps = 1\ncolour = red\n"), Error);
  CHECK_THROWS_AS(parse_surface_spec("genus = x\nboundary = 0\ncusps = 1\n"), Error);
  CHECK_THROWS_AS(parse_surface_spec("genus = 1\ngenus = 1\nboundary = 0\ncusps = 1\n"), Error);
  CHECK_THROWS_AS(surface_from_spec(parse_surface_spec("genus = 0\nboundary = 0\ncusps = 2\n")), Error);
}

TEST_CASE("torus simple curves are the primitive slopes") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  for (int L = 1; L <= 6; ++L) {
    const auto curves = enumerate_simple_closed_geodesics(t, L);
    CHECK(static_cast<int>(curves.size()) == primitive_slopes(L));
    for (const CurveClass& c : curves) {
      const auto h = t.homology(c.word);
      CHECK(static_cast<int>(c.word.size()) == std::abs(h[0]) + std::abs(h[1]));
    }
  }
}

TEST_CASE("torus intersection numbers equal homology determinants") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  const auto curves = enumerate_simple_closed_geodesics(t, 5);
  for (const CurveClass& x : curves)
    for (const CurveClass& y : curves) {
      const auto hx = t.homology(x.word), hy = t.homology(y.word);
      CHECK(geometric_intersection(t, x, y) == std::abs(hx[0] * hy[1] - hx[1] * hy[0]));
    }
}

TEST_CASE("ribbon graph and translate counts agree") {
  for (const char* name : {"torus1", "sphere4"}) {
    const FiniteTypeSurface s = catalog_surface(name);
    const auto curves = enumerate_simple_closed_geodesics(s, 3);
    for (std::size_t i = 0; i < curves.size(); ++i)
      for (std::size_t j = i; j < curves.size(); ++j)
        CHECK(geometric_intersection(s, curves[i], curves[j]) ==
              intersection_by_translates(s, curves[i].word, curves[j].word));
  }
}

TEST_CASE("intersection numbers on catalog surfaces") {
  const FiniteTypeSurface g2 = catalog_surface("genus2");
  const auto w = [&](const char* text) { return g2.group.parse(text); };
  CHECK(geometric_intersection(g2, w("a1"), w("b1")) == 1);
  CHECK(geometric_intersection(g2, w("a1"), w("a2")) == 0);
  CHECK(geometric_intersection(g2, w("a1b1A1B1"), w("a1")) == 0);
  CHECK(is_simple(g2, w("a1b1A1B1")));
  CHECK(is_simple(g2, w("a1a1b1")));
  CHECK_FALSE(is_simple(g2, w("a1a1b1A1B1")));
  const FiniteTypeSurface s4 = catalog_surface("sphere4");
  CHECK(geometric_intersection(s4, resolve_curve(s4, "c01"), resolve_curve(s4, "c12")) == 2);
}

TEST_CASE("peripheral words are recognized and skipped") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  CHECK(t.is_peripheral(Word{1, 2, -1, -2}));
  CHECK(t.is_peripheral(Word{2, 1, -2, -1}));
  CHECK_FALSE(t.is_peripheral(Word{1, 2}));
  for (const CurveClass& c : enumerate_simple_closed_geodesics(t, 4)) CHECK_FALSE(t.is_peripheral(c.word));
}

TEST_CASE("simple curve axes project to simple geodesics") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  for (const CurveClass& c : enumerate_simple_closed_geodesics(t, 4)) {
    REQUIRE(c.axis);
    CHECK(c.translation_length > 0.0);
    CHECK(self_intersection(t, c.word) == 0);
  }
  CHECK(self_intersection(t, t.group.parse("aabAB")) == 1);
  CHECK_FALSE(is_simple(t, t.group.parse("aabAB")));
}
