#pragma once

// Free homotopy classes of closed curves, simple-curve enumeration and
// geometric intersection numbers.

#include <optional>
#include <vector>

#include "nt/surface.hpp"

namespace nt {

struct CurveClass {
  Word word;  // unoriented conjugacy normal form
  std::optional<Geodesic> axis;
  double translation_length = 0.0;
  bool simple = false;

  friend bool operator==(const CurveClass& x, const CurveClass& y) { return x.word == y.word; }
};

/// Canonical order: shorter words first, then word_less.
bool curve_less(const Word& x, const Word& y);
inline bool curve_less(const CurveClass& x, const CurveClass& y) { return curve_less(x.word, y.word); }

/// Normal form plus cached geometry. Throws Error(unknown_curve) for the
/// trivial class.
CurveClass make_curve(const FiniteTypeSurface& surface, const Word& w);

struct CurveSystem {
  std::vector<CurveClass> curves;  // sorted by curve_less
  bool disjoint = false;

  void insert(CurveClass c);
  bool contains(const Word& normal_form) const;
  std::size_t size() const { return curves.size(); }
  bool empty() const { return curves.empty(); }
  friend bool operator==(const CurveSystem& x, const CurveSystem& y) { return x.curves == y.curves; }
};

/// Transverse intersections of the geodesic representatives. Uses the
/// ribbon graph for free groups and the translate count otherwise.
int geometric_intersection(const FiniteTypeSurface& surface, const Word& a, const Word& b);
int geometric_intersection(const FiniteTypeSurface& surface, const CurveClass& a, const CurveClass& b);
int self_intersection(const FiniteTypeSurface& surface, const Word& w);
bool is_simple(const FiniteTypeSurface& surface, const Word& w);

/// Translate count: axis of a against the translates h(axis of b) over a
/// ball of group elements large enough to meet one period of each axis.
/// Needs a geometric surface.
int intersection_by_translates(const FiniteTypeSurface& surface, const Word& a, const Word& b);

struct BallElement {
  IsometryMap map;
  Word word;
};

/// Group elements h with d(0, h(0)) <= reach, found by walking through
/// neighbouring tiles of the fundamental domain.
std::vector<BallElement> element_ball(const FiniteTypeSurface& surface, double reach);

/// Largest distance from the origin to one period of an axis of the given
/// translation length, the period centred at the point nearest the origin.
double period_reach(const Geodesic& axis, double length);

/// Rotation of a cyclic word whose axis passes closest to the origin.
Word nearest_rotation(const FiniteTypeSurface& surface, const Word& w);

/// Simple, essential, non-peripheral, primitive classes with a
/// representative of length at most max_word_length, in canonical order.
std::vector<CurveClass> enumerate_simple_closed_geodesics(const FiniteTypeSurface& surface, int max_word_length);

/// Resolve a curve name (surface alias or literal word) to its class word.
Word resolve_curve(const FiniteTypeSurface& surface, const std::string& name);

}  // namespace nt
