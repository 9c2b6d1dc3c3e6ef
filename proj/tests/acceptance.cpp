// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 when any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "nt/classifier.hpp"
#include "nt/cli.hpp"
#include "nt/kernels.hpp"
#include "nt/report.hpp"

using namespace nt;
namespace fs = std::filesystem;

namespace {

using M2 = std::array<long, 4>;

M2 mul(const M2& x, const M2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

const char* kTwistNames[4] = {"Ta", "Ta^-1", "Tb", "Tb^-1"};
const M2 kTwistMats[4] = {M2{1, 1, 0, 1}, M2{1, -1, 0, 1}, M2{1, 0, -1, 1}, M2{1, 0, 1, 1}};

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    o.pass = false;
    o.detail += " (over time limit)";
  }
  if (!o.pass) ++failures;
  char t[32];
  std::snprintf(t, sizeof t, "%.2fs", secs);
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << "  " << name << "  [" << t << "]  " << o.detail
            << std::endl;
}

std::string fmt(double x) {
  char b[64];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

std::string twist_word(const std::vector<int>& w, M2* matrix = nullptr) {
  std::string text;
  M2 m{1, 0, 0, 1};
  for (std::size_t i = 0; i < w.size(); ++i) {
    text += (i ? "*" : "") + std::string(kTwistNames[w[i]]);
    m = mul(m, kTwistMats[w[i]]);
  }
  if (matrix) *matrix = m;
  return text;
}

std::string random_twist(std::mt19937& rng, int min_len, int max_len) {
  std::uniform_int_distribution<int> len(min_len, max_len), pick(0, 3);
  std::vector<int> w(len(rng));
  for (int& k : w) k = pick(rng);
  return twist_word(w);
}

LaminationOptions converging() {
  LaminationOptions op;
  op.depth = 16;
  op.stop_on_convergence = true;
  return op;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream s;
  s << is.rdbuf();
  return s.str();
}

bool same_verdict(const Verdict& x, const Verdict& y) {
  if (x.kind != y.kind || x.order != y.order) return false;
  if (x.dilatation && y.dilatation) return std::abs(*x.dilatation - *y.dilatation) < 1e-3 * *x.dilatation;
  return x.dilatation.has_value() == y.dilatation.has_value();
}

Outcome gauss_bonnet() {
  double worst = 0.0, slowest = 0.0;
  std::string where;
  for (const char* name : {"torus1", "sphere3", "sphere4", "genus2"}) {
    const auto start = std::chrono::steady_clock::now();
    const FiniteTypeSurface s = catalog_surface(name);
    const double a = area(s);
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    const Signature& g = s.signature;
    const double expected = 2 * kPi * (g.cusps + g.crosscaps + g.boundary + 2 * g.genus - 2);
    const double err = std::abs(a - expected);
    if (err >= worst) {
      worst = err;
      where = name;
    }
  }
  return {worst < 1e-6 && slowest < 1.0,
          "max |area - 2pi(c+m+b+2g-2)| = " + fmt(worst) + " (" + where + "), slowest " + fmt(slowest) + "s"};
}

Outcome trace_oracle() {
  const FiniteTypeSurface t = catalog_surface("torus1");
  std::vector<std::vector<int>> words{{}}, frontier{{}};
  for (int len = 1; len <= 6; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier)
      for (int k = 0; k < 4; ++k) {
        if (!w.empty() && (w.back() ^ 1) == k) continue;
        auto x = w;
        x.push_back(k);
        next.push_back(std::move(x));
      }
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  int mismatches = 0, indeterminate = 0;
  std::string first;
  for (const auto& w : words) {
    M2 m;
    const std::string text = twist_word(w, &m);
    const long tr = m[0] + m[3];
    VerdictKind kind = VerdictKind::pseudo_anosov;
    std::optional<int> order;
    if (m == M2{1, 0, 0, 1}) {
      kind = VerdictKind::periodic, order = 1;
    } else if (m == M2{-1, 0, 0, -1}) {
      kind = VerdictKind::periodic, order = 2;
    } else if (std::labs(tr) < 2) {
      kind = VerdictKind::periodic, order = tr == 0 ? 4 : (tr == 1 ? 6 : 3);
    } else if (std::labs(tr) == 2) {
      kind = VerdictKind::reducible;
    }
    const Verdict v = classify(t, build_mapping_class(t, text));
    if (v.kind == VerdictKind::indeterminate) ++indeterminate;
    if (v.kind != kind || (order && v.order != order)) {
      if (!mismatches) first = " first: '" + text + "' got " + to_string(v.kind);
      ++mismatches;
    }
  }
  return {mismatches == 0 && indeterminate == 0, std::to_string(words.size()) + " words, " +
                                                     std::to_string(mismatches) + " mismatches, " +
                                                     std::to_string(indeterminate) + " indeterminate" + first};
}

Outcome dilatation() {
  const FiniteTypeSurface t = catalog_surface("torus1");
  const OrbitRecord orb = orbit(t, build_mapping_class(t, "Ta*Tb^-1"), Word{1}, 12, std::size_t{1} << 22);
  const DilatationEstimate d = dilatation_estimate(t, orb, Word{1});
  const double oracle = (3 + std::sqrt(5.0)) / 2;
  const double err = std::abs(d.value - oracle);
  return {!orb.truncated && err < 1e-3, "estimate " + std::to_string(d.value) + ", |error| " + fmt(err)};
}

Outcome lamination_limit() {
  const FiniteTypeSurface t = catalog_surface("torus1");
  const LaminationApprox plus =
      lamination_approx(t, build_mapping_class(t, "Ta*Tb^-1"), Word{1}, Direction::plus, converging());
  // The expanding eigenvector of [[2,1],[1,1]] has slope (sqrt5 - 1) / 2.
  const double oracle = (std::sqrt(5.0) - 1) / 2;
  const double err = plus.slope ? std::abs(*plus.slope - oracle) : INFINITY;
  return {plus.converged && plus.hausdorff_residual < 1e-4 && plus.depth <= 16 && err < 1e-3,
          "depth " + std::to_string(plus.depth) + ", residual " + fmt(plus.hausdorff_residual) + ", slope error " +
              fmt(err)};
}

Outcome seed_independence() {
  const FiniteTypeSurface t = catalog_surface("torus1");
  const MappingClass f = build_mapping_class(t, "Ta*Tb^-1");
  const LaminationApprox a = lamination_approx(t, f, Word{1}, Direction::plus, converging());
  const LaminationApprox b = lamination_approx(t, f, Word{2}, Direction::plus, converging());
  std::vector<Geodesic> la, lb;
  for (const Leaf& l : a.leaves) la.push_back(l.geodesic);
  for (const Leaf& l : b.leaves) lb.push_back(l.geodesic);
  const double h = kernels::hausdorff_serial(la, lb);
  const double bound = 10 * std::max(a.hausdorff_residual, b.hausdorff_residual);
  return {h <= bound + 1e-12, "Hausdorff(seed a, seed b) = " + fmt(h) + ", bound " + fmt(bound)};
}

Outcome transversality() {
  std::string detail;
  bool ok = true;
  for (const auto& [name, word] : {std::pair{"torus1", "Ta*Tb^-1"}, std::pair{"torus1", "Ta*Ta*Tb^-1"},
                                   std::pair{"sphere4", "Tc01*Tc12^-1"}}) {
    const FiniteTypeSurface s = catalog_surface(name);
    const MappingClass f = build_mapping_class(s, word);
    const Word seed = enumerate_simple_closed_geodesics(s, 2).front().word;
    const CurveSystem gamma = reduction_system(s, f, 6, 12).gamma;
    const auto census_from = [&](const Word& sd) {
      const LaminationApprox plus = lamination_approx(s, f, sd, Direction::plus, converging());
      const LaminationApprox minus = lamination_approx(s, f, sd, Direction::minus, converging());
      return transversality_and_census(s, plus, minus, gamma);
    };
    const TransversalityReport rep = census_from(seed);
    const TransversalityReport moved = census_from(tighten(s, f, seed));
    bool rims = true;
    for (const CrownRegion& r : rep.census.regions)
      if (r.rim && !gamma.contains(*r.rim) && !s.is_peripheral(*r.rim)) rims = false;
    const bool finite = !rep.census.regions.empty() && rep.census.regions.size() < 64;
    const bool invariant = moved.census.type_multiset() == rep.census.type_multiset();
    ok = ok && gamma.empty() && rep.transverse && finite && rims && invariant;
    detail += std::string(name) + " " + word + ": transverse " + (rep.transverse ? "yes" : "no") + ", " +
              std::to_string(rep.census.regions.size()) + " regions, rims " + (rims ? "ok" : "bad") + ", f-invariant " +
              (invariant ? "yes" : "no") + "; ";
  }
  return {ok, detail};
}

Outcome fixed_points() {
  const FiniteTypeSurface t = catalog_surface("torus1");
  const MappingClass f = build_mapping_class(t, "Ta*Tb^-1");
  const LaminationApprox plus = lamination_approx(t, f, Word{1}, Direction::plus, converging());
  const auto leaf = find_two_sided_leaf(t, f, plus);
  const bool two_sided = leaf && leaf->report.conclusive && leaf->report.fixed_points.size() == 4 &&
                         leaf->report.alternating;
  const CuspCrown crown = cusp_crown(t, plus.leaves, 0);
  bool crown_ok = false;
  std::size_t crown_points = 0;
  if (crown.closed)
    if (const auto anchor = cusp_anchor(t, f, 1, crown)) {
      const BoundaryFixedPointReport rep = cusp_fixed_points(t, f, 1, *anchor, crown, 5);
      crown_ok = rep.conclusive && rep.one_expanding_per_interval;
      crown_points = rep.fixed_points.size();
    }
  return {two_sided && crown_ok,
          "two-sided leaf: " + (leaf ? std::to_string(leaf->report.fixed_points.size()) + " fixed points" +
                                           (leaf->report.alternating ? ", alternating" : ", not alternating")
                                     : std::string("not found")) +
              "; crown: " + std::to_string(crown_points) + " fixed points, one expanding per interval " +
              (crown_ok ? "yes" : "no")};
}

Outcome functoriality() {
  const FiniteTypeSurface t = catalog_surface("torus1");
  const auto curves = enumerate_simple_closed_geodesics(t, 4);
  const auto short_curves = enumerate_simple_closed_geodesics(t, 3);
  std::mt19937 rng(2024);
  int compose_fail = 0, intersection_fail = 0;
  for (int k = 0; k < 100; ++k) {
    const MappingClass f = build_mapping_class(t, random_twist(rng, 1, 4));
    const MappingClass g = build_mapping_class(t, random_twist(rng, 1, 4));
    const MappingClass fg = compose(t, f, g);
    for (const CurveClass& c : curves)
      if (tighten(t, fg, c.word) != tighten(t, f, tighten(t, g, c.word))) ++compose_fail;
    for (const CurveClass& x : short_curves)
      for (const CurveClass& y : short_curves)
        if (geometric_intersection(t, tighten(t, f, x.word), tighten(t, f, y.word)) != geometric_intersection(t, x, y))
          ++intersection_fail;
  }

  int gamma_fail = 0;
  for (const auto& [name, word] :
       {std::pair{"torus1", "Ta"}, std::pair{"torus1", "Tb*Tb"}, std::pair{"torus1", "Ta^-1*Ta^-1*Ta^-1"},
        std::pair{"genus2", "Td"}}) {
    const FiniteTypeSurface s = catalog_surface(name);
    const MappingClass f = build_mapping_class(s, word);
    const ReductionResult red = reduction_system(s, f, s.is_free() ? 6 : 4, s.is_free() ? 12 : 6);
    CurveSystem image;
    for (const CurveClass& c : red.gamma.curves) image.insert(make_curve(s, tighten(s, f, c.word)));
    if (red.gamma.empty() || !red.invariant || !(image == red.gamma)) ++gamma_fail;
  }

  int verdict_fail = 0;
  const std::vector<std::string> maps{"Ta*Tb^-1", "Ta*Tb", "Ta", "Ta*Ta*Tb", "Tb^-1*Ta^-1*Ta^-1"};
  std::vector<Verdict> base;
  for (const std::string& w : maps) {
    const MappingClass f = build_mapping_class(t, w);
    base.push_back(classify(t, f));
    if (!same_verdict(base.back(), classify(t, inverse(f)))) ++verdict_fail;
  }
  for (int k = 0; k < 50; ++k) {
    const std::size_t i = k % maps.size();
    const MappingClass f = build_mapping_class(t, maps[i]);
    const MappingClass h = build_mapping_class(t, random_twist(rng, 1, 3));
    if (!same_verdict(base[i], classify(t, compose(t, compose(t, h, f), inverse(h))))) ++verdict_fail;
  }
  return {compose_fail + intersection_fail + gamma_fail + verdict_fail == 0,
          "composition failures " + std::to_string(compose_fail) + ", intersection failures " +
              std::to_string(intersection_fail) + ", f(Gamma) != Gamma " + std::to_string(gamma_fail) +
              ", verdict changes " + std::to_string(verdict_fail) + " (100 pairs, " + std::to_string(curves.size()) +
              " curves, 50 conjugators)"};
}

Outcome reducible_pipeline() {
  const FiniteTypeSurface t = catalog_surface("torus1");
  const Verdict v = classify(t, build_mapping_class(t, "Ta"));
  bool torus_ok = v.kind == VerdictKind::reducible && v.gamma == std::vector<Word>{Word{1}} &&
                  v.components.size() == 1;
  std::string detail = "Ta: " + to_string(v.kind) + ", |Gamma| " + std::to_string(v.gamma.size());
  if (torus_ok) {
    const ComponentReport& c = v.components[0];
    torus_ok = c.signature == Signature{0, 2, 1, 0} && std::abs(c.area - 2 * kPi) < 1e-6 && c.sub_verdict &&
               c.sub_verdict->kind == VerdictKind::periodic && c.sub_verdict->order == 1;
    detail += ", component (g,b,c) = (" + std::to_string(c.signature.genus) + "," +
              std::to_string(c.signature.boundary) + "," + std::to_string(c.signature.cusps) + ") area " +
              fmt(c.area) + ", sub-verdict " + (c.sub_verdict ? to_string(c.sub_verdict->kind) : "none");
  }
  const FiniteTypeSurface g = catalog_surface("genus2");
  CurveSystem d;
  d.insert(make_curve(g, g.group.parse("a1b1A1B1")));
  const auto halves = component_split(g, d);
  double total = 0.0;
  bool genus_ok = halves.size() == 2;
  for (const ComponentReport& c : halves) {
    total += c.area;
    genus_ok = genus_ok && c.signature.genus == 1 && c.signature.boundary == 1;
  }
  genus_ok = genus_ok && std::abs(total - 4 * kPi) < 1e-6;
  detail += "; genus 2 split: " + std::to_string(halves.size()) + " components, total area " + fmt(total);
  return {torus_ok && genus_ok, detail};
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "nt_acceptance";
  fs::create_directories(dir);
  int differ = 0;
  const std::vector<std::vector<std::string>> json_runs{
      {"classify", "torus1", "Ta*Tb^-1"}, {"classify", "torus1", "Ta"}, {"classify", "sphere4", "Tc01*Tc12^-1"},
      {"laminations", "torus1", "Ta*Tb^-1"}};
  for (const auto& args : json_runs) {
    std::ostringstream o1, o2, e;
    run(args, o1, e);
    run(args, o2, e);
    if (o1.str() != o2.str() || o1.str().empty()) ++differ;
  }
  const fs::path svg = dir / "disk.svg";
  std::ostringstream o1, o2, e;
  const int c1 = run({"render", "torus1", "Ta*Tb^-1", "--out", svg.string()}, o1, e);
  const std::string first = slurp(svg);
  const int c2 = run({"render", "torus1", "Ta*Tb^-1", "--out", svg.string()}, o2, e);
  const bool svg_same = c1 == 0 && c2 == 0 && !first.empty() && slurp(svg) == first && o1.str() == o2.str();
  fs::remove_all(dir);
  return {differ == 0 && svg_same, std::to_string(json_runs.size() - differ) + "/" +
                                       std::to_string(json_runs.size()) + " JSON outputs identical, SVG " +
                                       (svg_same ? "identical" : "differs")};
}

}  // namespace

int main() {
  criterion(1, "Gauss-Bonnet area", 4.0, gauss_bonnet);
  criterion(2, "trace oracle on all twist words of length <= 6", 600.0, trace_oracle);
  criterion(3, "dilatation of Ta*Tb^-1 at depth 12", 10.0, dilatation);
  criterion(4, "lamination limit and eigenvector slope", 0.0, lamination_limit);
  criterion(5, "seed independence", 0.0, seed_independence);
  criterion(6, "transversality and crown census", 0.0, transversality);
  criterion(7, "boundary fixed-point structure", 0.0, fixed_points);
  criterion(8, "functoriality and invariance", 0.0, functoriality);
  criterion(9, "reducible pipeline", 0.0, reducible_pipeline);
  criterion(10, "determinism of JSON and SVG", 0.0, determinism);
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
