#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "nt/classifier.hpp"

using namespace nt;

namespace {

using M2 = std::array<long, 4>;

M2 mul(const M2& x, const M2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

struct Expected {
  VerdictKind kind;
  std::optional<int> order;
};

// Nielsen-Thurston type of a torus mapping class from its SL(2,Z) matrix.
Expected trace_oracle(const M2& m) {
  const long tr = m[0] + m[3];
  if (m == M2{1, 0, 0, 1}) return {VerdictKind::periodic, 1};
  if (m == M2{-1, 0, 0, -1}) return {VerdictKind::periodic, 2};
  if (tr == 0) return {VerdictKind::periodic, 4};
  if (tr == 1) return {VerdictKind::periodic, 6};
  if (tr == -1) return {VerdictKind::periodic, 3};
  if (std::labs(tr) == 2) return {VerdictKind::reducible, std::nullopt};
  return {VerdictKind::pseudo_anosov, std::nullopt};
}

const FiniteTypeSurface& torus() {
  static const FiniteTypeSurface t = catalog_surface("torus1");
  return t;
}

}  // namespace

TEST_CASE("verdict kind names round trip") {
  for (VerdictKind k : {VerdictKind::periodic, VerdictKind::pseudo_anosov, VerdictKind::reducible,
                        VerdictKind::indeterminate})
    CHECK(verdict_kind_from_string(to_string(k)) == k);
  CHECK_FALSE(verdict_kind_from_string("Anosov"));
}

TEST_CASE("basic torus verdicts") {
  const auto& t = torus();
  const Verdict pa = classify(t, build_mapping_class(t, "Ta*Tb^-1"));
  CHECK(pa.kind == VerdictKind::pseudo_anosov);
  REQUIRE(pa.dilatation);
  CHECK(std::abs(*pa.dilatation - (3 + std::sqrt(5.0)) / 2) < 1e-3);
  CHECK(pa.laminations.size() == 2);

  const Verdict id = classify(t, build_mapping_class(t, ""));
  CHECK(id.kind == VerdictKind::periodic);
  CHECK(id.order == 1);

  const Verdict six = classify(t, build_mapping_class(t, "Ta*Tb"));
  CHECK(six.kind == VerdictKind::periodic);
  CHECK(six.order == 6);

  const Verdict r = classify(t, build_mapping_class(t, "R"));
  CHECK(r.kind == VerdictKind::periodic);
  CHECK(r.order == 2);
}

TEST_CASE("reducible pipeline for Ta") {
  const auto& t = torus();
  const Verdict v = classify(t, build_mapping_class(t, "Ta"));
  CHECK(v.kind == VerdictKind::reducible);
  REQUIRE(v.gamma.size() == 1);
  CHECK(v.gamma[0] == Word{1});
  REQUIRE(v.components.size() == 1);
  const ComponentReport& c = v.components[0];
  CHECK(c.signature == Signature{0, 2, 1, 0});
  CHECK(std::abs(c.area - kTwoPi) < 1e-9);
  REQUIRE(c.sub_verdict);
  CHECK(c.sub_verdict->kind == VerdictKind::periodic);
  CHECK(c.sub_verdict->order == 1);
}

TEST_CASE("trace oracle agreement on short twist words") {
  const auto& t = torus();
  const char* names[4] = {"Ta", "Ta^-1", "Tb", "Tb^-1"};
  const M2 mats[4] = {M2{1, 1, 0, 1}, M2{1, -1, 0, 1}, M2{1, 0, -1, 1}, M2{1, 0, 1, 1}};
  std::vector<std::vector<int>> words{{}}, frontier{{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier)
      for (int k = 0; k < 4; ++k) {
        if (!w.empty() && (w.back() ^ 1) == k) continue;
        auto x = w;
        x.push_back(k);
        next.push_back(x);
      }
    words.insert(words.end(), next.begin(), next.end());
    frontier = next;
  }
  for (const auto& w : words) {
    std::string text;
    M2 m{1, 0, 0, 1};
    for (std::size_t i = 0; i < w.size(); ++i) {
      text += (i ? "*" : "") + std::string(names[w[i]]);
      m = mul(m, mats[w[i]]);
    }
    const Expected e = trace_oracle(m);
    const Verdict v = classify(t, build_mapping_class(t, text));
    INFO(text);
    CHECK(v.kind == e.kind);
    if (e.order) CHECK(v.order == e.order);
  }
}

TEST_CASE("verdicts are invariant under inversion and conjugation") {
  const auto& t = torus();
  std::mt19937 rng(13);
  const char* names[4] = {"Ta", "Ta^-1", "Tb", "Tb^-1"};
  std::uniform_int_distribution<int> pick(0, 3);
  for (const char* word : {"Ta*Tb^-1", "Ta*Tb", "Ta", "Ta*Ta*Tb"}) {
    const MappingClass f = build_mapping_class(t, word);
    const Verdict v = classify(t, f);
    const Verdict vi = classify(t, inverse(f));
    CHECK(vi.kind == v.kind);
    CHECK(vi.order == v.order);
    for (int k = 0; k < 3; ++k) {
      const std::string h = std::string(names[pick(rng)]) + "*" + names[pick(rng)];
      const MappingClass g = build_mapping_class(t, h);
      const Verdict vc = classify(t, compose(t, compose(t, g, f), inverse(g)));
      CHECK(vc.kind == v.kind);
      CHECK(vc.order == v.order);
      if (v.dilatation && vc.dilatation) CHECK(std::abs(*vc.dilatation - *v.dilatation) < 1e-3 * *v.dilatation);
    }
  }
}

TEST_CASE("filling systems and periodic order") {
  const auto& t = torus();
  const FillingSystem fs = choose_filling_system(t);
  CHECK(fs.fills);
  CHECK(fs.crossings > 0);
  CHECK(periodic_order(t, build_mapping_class(t, "Ta*Tb"), fs, 24) == 6);
  CHECK(periodic_order(t, build_mapping_class(t, "Tb^-1*Ta^-1*Ta^-1"), fs, 24) == 4);
  CHECK_FALSE(periodic_order(t, build_mapping_class(t, "Ta"), fs, 24));
}

TEST_CASE("component split signatures and areas") {
  const auto& t = torus();
  CurveSystem a;
  a.insert(make_curve(t, Word{1}));
  const auto ta = component_split(t, a);
  REQUIRE(ta.size() == 1);
  CHECK(ta[0].signature == Signature{0, 2, 1, 0});

  const FiniteTypeSurface g = catalog_surface("genus2");
  CurveSystem d;
  d.insert(make_curve(g, g.group.parse("a1b1A1B1")));
  const auto halves = component_split(g, d);
  REQUIRE(halves.size() == 2);
  double total = 0.0;
  for (const auto& c : halves) {
    CHECK(c.signature == Signature{1, 1, 0, 0});
    total += c.area;
  }
  CHECK(std::abs(total - 2 * kTwoPi) < 1e-9);

  CurveSystem a1;
  a1.insert(make_curve(g, g.group.parse("a1")));
  const auto cut = component_split(g, a1);
  REQUIRE(cut.size() == 1);
  CHECK(cut[0].signature == Signature{1, 2, 0, 0});

  CurveSystem crossing;
  crossing.insert(make_curve(t, Word{1}));
  crossing.insert(make_curve(t, Word{2}));
  CHECK_THROWS_AS(component_split(t, crossing), Error);
}

TEST_CASE("genus two separating twist splits into two periodic handles") {
  const FiniteTypeSurface g = catalog_surface("genus2");
  const Verdict v = classify(g, build_mapping_class(g, "Td"));
  CHECK(v.kind == VerdictKind::reducible);
  REQUIRE(v.components.size() == 2);
  for (const auto& c : v.components) {
    REQUIRE(c.sub_verdict);
    CHECK(c.sub_verdict->kind == VerdictKind::periodic);
  }
}

TEST_CASE("pseudo-Anosov on the four-punctured sphere") {
  const FiniteTypeSurface s = catalog_surface("sphere4");
  const Verdict v = classify(s, build_mapping_class(s, "Tc01*Tc12^-1"));
  CHECK(v.kind == VerdictKind::pseudo_anosov);
  REQUIRE(v.dilatation);
  CHECK(std::abs(*v.dilatation - (3 + 2 * std::sqrt(2.0))) < 1e-2);
}

TEST_CASE("invalid budgets are rejected") {
  const auto& t = torus();
  Budgets b;
  b.max_period = 0;
  CHECK_THROWS_AS(classify(t, build_mapping_class(t, "Ta"), b), Error);
}
