#include "nt/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "nt/kernels.hpp"

namespace nt {

bool curve_less(const Word& x, const Word& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return word_less(x, y);
}

CurveClass make_curve(const FiniteTypeSurface& surface, const Word& w) {
  CurveClass c;
  c.word = surface.group.unoriented_normal_form(w);
  if (c.word.empty()) throw Error(ErrorKind::unknown_curve, "trivial curve class");
  // Matrices of long words overflow; their geometry is not cached.
  if (surface.is_geometric() && c.word.size() <= 200) {
    const auto cls = classify_isometry(surface.element(c.word));
    c.translation_length = cls.translation_length;
    if (cls.kind == IsometryKind::hyperbolic) c.axis = element_axis(surface, c.word);
  }
  c.simple = is_simple(surface, c.word);
  return c;
}

void CurveSystem::insert(CurveClass c) {
  const auto it = std::lower_bound(curves.begin(), curves.end(), c,
                                   [](const CurveClass& x, const CurveClass& y) { return curve_less(x, y); });
  if (it != curves.end() && it->word == c.word) return;
  curves.insert(it, std::move(c));
}

bool CurveSystem::contains(const Word& nf) const {
  return std::any_of(curves.begin(), curves.end(), [&](const CurveClass& c) { return c.word == nf; });
}

namespace {

bool uses_ribbon_graph(const FiniteTypeSurface& s) { return s.is_free() && !s.cyclic_order.empty(); }

Word class_core(const FiniteTypeSurface& s, const Word& w) {
  return primitive_root(s.group.conjugacy_normal_form(w)).first;
}

struct PointKey {
  long x, y;
  bool operator<(const PointKey& o) const { return x != o.x ? x < o.x : y < o.y; }
};

PointKey key_of(cplx z) {
  return {std::lround(z.real() * 1e8), std::lround(z.imag() * 1e8)};
}

}  // namespace

void visit_ball(const FiniteTypeSurface& s, double reach, bool with_words,
                const std::function<bool(const BallElement&)>& visit) {
  const double margin = s.signature.cusps > 0 ? 2.0 : s.domain_radius();
  const DiskPoint origin(0.0, 0.0);
  const auto table = kernels::letter_table(s);
  const int rank = s.group.rank();
  std::map<PointKey, bool> seen;
  std::vector<BallElement> frontier{{IsometryMap::identity(), Word{}}};
  if (!visit(frontier.front())) return;
  seen[key_of(0.0)] = true;
  while (!frontier.empty()) {
    std::vector<BallElement> next;
    for (const auto& h : frontier) {
      for (int l = -rank; l <= rank; ++l) {
        if (l == 0) continue;
        IsometryMap m = h.map * table[static_cast<std::size_t>(l + rank)];
        const cplx z = m.apply_raw(0.0);
        if (std::abs(z) >= 1.0) continue;
        const double d = hyperbolic_distance(origin, DiskPoint(z));
        if (d > reach + margin) continue;
        if (!seen.emplace(key_of(z), true).second) continue;
        BallElement e{std::move(m), {}};
        if (with_words) {
          e.word = h.word;
          e.word.push_back(l);
          e.word = s.group.reduce(e.word);
        }
        if (d <= reach && !visit(e)) return;
        next.push_back(std::move(e));
      }
    }
    frontier = std::move(next);
  }
}

std::vector<BallElement> element_ball(const FiniteTypeSurface& s, double reach) {
  std::vector<BallElement> out;
  visit_ball(s, reach, true, [&](const BallElement& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

// Largest distance from the origin to a point of one period of the axis,
// the period centred at the foot of the perpendicular from the origin.
double period_reach(const Geodesic& axis, double length) {
  const double h = hyperbolic_distance(DiskPoint(0.0, 0.0), axis.closest_to_origin());
  return std::acosh(std::cosh(h) * std::cosh(length / 2.0));
}

// Rotation of the cyclic word whose axis passes closest to the origin.
Word nearest_rotation(const FiniteTypeSurface& s, const Word& w) {
  Word best = w;
  double best_h = std::numeric_limits<double>::infinity();
  Word cur = w;
  for (std::size_t r = 0; r < w.size(); ++r) {
    const double h = hyperbolic_distance(DiskPoint(0.0, 0.0), element_axis(s, cur).closest_to_origin());
    if (h < best_h) {
      best_h = h;
      best = cur;
    }
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
  }
  return best;
}

namespace {

// With first_only set, returns 1 as soon as one linked translate is found.
int count_translates(const FiniteTypeSurface& s, const Word& a, const Word& b, bool first_only) {
  if (!s.is_geometric()) throw Error(ErrorKind::unsupported, "translate count needs a geometric surface");
  Word u = class_core(s, a);
  Word v = class_core(s, b);
  if (u.empty() || v.empty()) return 0;
  if (!s.group.reduce(u).empty() && !s.group.reduce(v).empty()) {
    u = nearest_rotation(s, u);
    v = nearest_rotation(s, v);
  }
  const auto cu = classify_isometry(s.element(u));
  const auto cv = classify_isometry(s.element(v));
  if (cu.kind != IsometryKind::hyperbolic || cv.kind != IsometryKind::hyperbolic) return 0;
  const Geodesic axis_u = element_axis(s, u);
  const Geodesic axis_v = element_axis(s, v);
  const double len = cu.translation_length;
  const double reach = period_reach(axis_u, len) + period_reach(axis_v, cv.translation_length);

  std::vector<std::pair<double, double>> crossings;
  visit_ball(s, reach, false, [&](const BallElement& h) {
    const Geodesic t = axis_v.image(h.map);
    if (endpoint_linking(axis_u, t) != Linking::linked) return true;
    if (first_only) {
      crossings.emplace_back(0.0, 0.0);
      return false;
    }
    const double from = axis_u.from().angle(), to = axis_u.to().angle();
    const bool first_left = in_open_arc(from, to, t.from().angle());
    const BoundaryPoint left = first_left ? t.from() : t.to();
    const BoundaryPoint right = first_left ? t.to() : t.from();
    const double fl = foot_position(axis_u, left.to_complex());
    const double fr = foot_position(axis_u, right.to_complex());
    double pos = std::fmod(0.5 * (fl + fr), len);
    if (pos < 0.0) pos += len;
    crossings.emplace_back(pos, fl - fr);
    return true;
  });
  if (first_only) return static_cast<int>(crossings.size());
  std::sort(crossings.begin(), crossings.end());
  constexpr double tol = 1e-6;
  std::vector<std::pair<double, double>> distinct;
  for (const auto& c : crossings) {
    const bool dup = std::any_of(distinct.begin(), distinct.end(), [&](const auto& d) {
      double dp = std::abs(d.first - c.first);
      dp = std::min(dp, len - dp);
      return dp < tol && std::abs(d.second - c.second) < tol;
    });
    if (!dup) distinct.push_back(c);
  }
  const int count = static_cast<int>(distinct.size());
  const bool same = s.group.unoriented_normal_form(u) == s.group.unoriented_normal_form(v);
  return same ? count / 2 : count;
}

bool primitive_or_zero_homology(const FiniteTypeSurface& s, const Word& w) {
  int g = 0;
  for (int x : s.homology(w)) g = std::gcd(g, std::abs(x));
  return g <= 1;
}

}  // namespace

int intersection_by_translates(const FiniteTypeSurface& s, const Word& a, const Word& b) {
  return count_translates(s, a, b, false);
}

bool is_simple(const FiniteTypeSurface& s, const Word& w) {
  if (!primitive_or_zero_homology(s, w)) return false;
  if (uses_ribbon_graph(s)) return self_intersection(s, w) == 0;
  return count_translates(s, w, w, true) == 0;
}

int geometric_intersection(const FiniteTypeSurface& s, const Word& a, const Word& b) {
  if (uses_ribbon_graph(s)) {
    const Word u = class_core(s, a);
    const Word v = class_core(s, b);
    const kernels::FatGraph g(s.cyclic_order);
    const bool same = s.group.unoriented_normal_form(u) == s.group.unoriented_normal_form(v);
    if (same) return static_cast<int>(kernels::linked_pairs_parallel(g, u, u, true) / 2);
    const std::size_t work = u.size() * v.size();
    const long n = work > 4096 ? kernels::linked_pairs_parallel(g, u, v, false) : kernels::linked_pairs_serial(g, u, v, false);
    return static_cast<int>(n);
  }
  return intersection_by_translates(s, a, b);
}

int geometric_intersection(const FiniteTypeSurface& s, const CurveClass& a, const CurveClass& b) {
  return geometric_intersection(s, a.word, b.word);
}

int self_intersection(const FiniteTypeSurface& s, const Word& w) {
  if (uses_ribbon_graph(s)) {
    const Word u = class_core(s, w);
    if (u.empty()) return 0;
    const kernels::FatGraph g(s.cyclic_order);
    return static_cast<int>(kernels::linked_pairs_serial(g, u, u, true) / 2);
  }
  return intersection_by_translates(s, w, w);
}

namespace {

void cyclic_words(int rank, int length, Word& cur, std::vector<Word>& out) {
  if (static_cast<int>(cur.size()) == length) {
    if (cur.front() != -cur.back() && least_rotation(cur) == cur) out.push_back(cur);
    return;
  }
  for (int g = 1; g <= rank; ++g) {
    for (Letter l : {g, -g}) {
      if (!cur.empty() && cur.back() == -l) continue;
      if (!cur.empty() && letter_key(l) < letter_key(cur.front())) continue;
      cur.push_back(l);
      cyclic_words(rank, length, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace

std::vector<CurveClass> enumerate_simple_closed_geodesics(const FiniteTypeSurface& s, int max_word_length) {
  if (max_word_length < 1) throw Error(ErrorKind::precondition, "max_word_length must be at least 1");
  std::vector<Word> candidates;
  for (int len = 1; len <= max_word_length; ++len) {
    Word cur;
    cyclic_words(s.group.rank(), len, cur, candidates);
  }
  std::set<Word> forms;
  for (const Word& w : candidates) {
    const Word nf = s.group.unoriented_normal_form(w);
    if (nf.empty() || primitive_root(nf).second != 1) continue;
    if (s.is_peripheral(nf)) continue;
    forms.insert(nf);
  }
  const std::vector<Word> pool(forms.begin(), forms.end());
  std::vector<char> simple(pool.size(), 0);
  const auto n = static_cast<long>(pool.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) simple[static_cast<std::size_t>(i)] = is_simple(s, pool[static_cast<std::size_t>(i)]);
  std::vector<CurveClass> out;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!simple[i]) continue;
    CurveClass c;
    c.word = pool[i];
    c.simple = true;
    if (s.is_geometric()) {
      c.translation_length = classify_isometry(s.element(c.word)).translation_length;
      c.axis = element_axis(s, c.word);
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const CurveClass& x, const CurveClass& y) { return curve_less(x, y); });
  return out;
}

Word resolve_curve(const FiniteTypeSurface& s, const std::string& name) {
  const auto it = s.curve_aliases.find(name);
  Word w;
  if (it != s.curve_aliases.end()) {
    w = it->second;
  } else {
    try {
      w = s.group.parse(name);
    } catch (const Error&) {
      throw Error(ErrorKind::unknown_curve, "unknown curve '" + name + "'");
    }
  }
  const Word nf = s.group.unoriented_normal_form(w);
  if (nf.empty()) throw Error(ErrorKind::unknown_curve, "curve '" + name + "' is trivial");
  return nf;
}

}  // namespace nt
