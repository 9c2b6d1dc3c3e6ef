#include <algorithm>
#include <cmath>
#include <limits>

#include "nt/lamination.hpp"

namespace nt {

OrbitRecord orbit(const FiniteTypeSurface& surface, const MappingClass& f, const Word& seed, int steps,
                  std::size_t max_letters, bool with_table) {
  if (steps < 0) throw Error(ErrorKind::precondition, "orbit length must be non-negative");
  OrbitRecord rec;
  rec.seed = surface.group.unoriented_normal_form(seed);
  if (rec.seed.empty()) throw Error(ErrorKind::unknown_curve, "trivial seed curve");
  rec.images.push_back(rec.seed);
  for (int n = 1; n <= steps; ++n) {
    Word next = tighten(surface, f, rec.images.back());
    if (next.size() > max_letters) {
      rec.truncated = true;
      break;
    }
    if (!rec.period && next == rec.seed) rec.period = n;
    rec.images.push_back(std::move(next));
  }
  if (with_table) {
    rec.intersection_table.reserve(rec.images.size());
    for (const Word& w : rec.images) rec.intersection_table.push_back(geometric_intersection(surface, rec.seed, w));
  }
  return rec;
}

namespace {

double collar_half_width(double length) { return std::asinh(1.0 / std::sinh(0.5 * length)); }

// Distance between two unlinked geodesics from the cross ratio of their endpoints.
double geodesic_gap(const Geodesic& g, const Geodesic& h) {
  const cplx a = g.from().to_complex(), b = g.to().to_complex();
  const cplx c = h.from().to_complex(), d = h.to().to_complex();
  const double num = std::min(std::abs(a - c) * std::abs(b - d), std::abs(a - d) * std::abs(b - c));
  const double den = std::abs(a - b) * std::abs(c - d);
  return std::acosh(1.0 + 2.0 * num / den);
}

std::vector<Geodesic> lifts_near_origin(const FiniteTypeSurface& s, const Word& gamma, double extra) {
  const Word g = nearest_rotation(s, gamma);
  const Geodesic axis = element_axis(s, g);
  const double len = classify_isometry(s.element(g)).translation_length;
  const double reach = period_reach(axis, len) + extra;
  std::vector<Geodesic> out;
  for (const auto& h : element_ball(s, reach)) out.push_back(axis.image(h.map));
  return out;
}

}  // namespace

SpiralReport spiral_classify(const FiniteTypeSurface& surface, const Word& tau, const Word& gamma) {
  if (!surface.is_geometric()) throw Error(ErrorKind::unsupported, "surface has no Fuchsian group");
  SpiralReport rep;
  const Word g = surface.group.unoriented_normal_form(gamma);
  rep.collar_width = collar_half_width(classify_isometry(surface.element(g)).translation_length);
  if (surface.group.unoriented_normal_form(tau) == g) {
    rep.relation = SpiralRelation::equal;
    return rep;
  }
  if (geometric_intersection(surface, tau, gamma) > 0) {
    rep.relation = SpiralRelation::transverse;
    return rep;
  }
  // Closed geodesics never spiral onto each other; measure the gap.
  const Word t = nearest_rotation(surface, tau);
  const Geodesic ta = element_axis(surface, t);
  const double tlen = classify_isometry(surface.element(t)).translation_length;
  double best = std::numeric_limits<double>::infinity();
  for (const Geodesic& l : lifts_near_origin(surface, gamma, period_reach(ta, tlen) + 1.0)) {
    if (endpoint_linking(ta, l) != Linking::unlinked) continue;
    best = std::min(best, geodesic_gap(ta, l));
  }
  rep.relation = SpiralRelation::far_disjoint;
  rep.distance = best;
  return rep;
}

SpiralReport spiral_classify(const FiniteTypeSurface& surface, const Geodesic& leaf, const Word& gamma) {
  if (!surface.is_geometric()) throw Error(ErrorKind::unsupported, "surface has no Fuchsian group");
  SpiralReport rep;
  const Word g = surface.group.unoriented_normal_form(gamma);
  rep.collar_width = collar_half_width(classify_isometry(surface.element(g)).translation_length);
  double best = std::numeric_limits<double>::infinity();
  bool shared = false;
  for (const Geodesic& l : lifts_near_origin(surface, g, 3.0)) {
    if (l.endpoint_distance(leaf) < 1e-7) {
      rep.relation = SpiralRelation::equal;
      return rep;
    }
    const Linking k = endpoint_linking(leaf, l, 1e-7);
    if (k == Linking::linked) {
      rep.relation = SpiralRelation::transverse;
      return rep;
    }
    if (k == Linking::shared_endpoint) {
      shared = true;
      continue;
    }
    best = std::min(best, geodesic_gap(leaf, l));
  }
  if (shared) {
    rep.relation = SpiralRelation::spirals;
    return rep;
  }
  rep.relation = SpiralRelation::far_disjoint;
  rep.distance = best;
  return rep;
}

ReductionResult reduction_system(const FiniteTypeSurface& surface, const MappingClass& f, int max_word_length,
                                 int max_period) {
  if (max_word_length < 1 || max_period < 1) throw Error(ErrorKind::precondition, "reduction budgets must be positive");
  ReductionResult res;
  res.max_word_length = max_word_length;
  res.max_period = max_period;
  // Periodic orbits of short curves stay short; longer images end the search.
  const std::size_t cap = static_cast<std::size_t>(std::max(4096, 256 * max_word_length));
  for (const CurveClass& c : enumerate_simple_closed_geodesics(surface, max_word_length)) {
    if (res.gamma_prime.contains(c.word)) continue;
    const OrbitRecord rec = orbit(surface, f, c.word, max_period, cap, false);
    if (!rec.period) continue;
    for (int k = 0; k < *rec.period; ++k) {
      const Word& w = rec.images[static_cast<std::size_t>(k)];
      if (!res.gamma_prime.contains(w)) res.gamma_prime.insert(make_curve(surface, w));
    }
  }
  const auto& gp = res.gamma_prime.curves;
  std::vector<char> isolated(gp.size(), 1);
  for (std::size_t i = 0; i < gp.size(); ++i)
    for (std::size_t j = i + 1; j < gp.size(); ++j)
      if (geometric_intersection(surface, gp[i].word, gp[j].word) > 0) isolated[i] = isolated[j] = 0;
  for (std::size_t i = 0; i < gp.size(); ++i)
    if (isolated[i]) res.gamma.insert(gp[i]);
  res.gamma.disjoint = true;
  res.gamma_prime.disjoint = std::all_of(isolated.begin(), isolated.end(), [](char x) { return x != 0; });
  res.invariant = true;
  for (const CurveClass& c : res.gamma.curves)
    if (!res.gamma.contains(tighten(surface, f, c.word))) res.invariant = false;
  res.notes.push_back("simple classes enumerated up to word length " + std::to_string(max_word_length) +
                      ", periods up to " + std::to_string(max_period));
  if (!res.invariant) res.notes.push_back("isolated periodic classes are not permuted by the map");
  return res;
}

DilatationEstimate dilatation_estimate(const FiniteTypeSurface& surface, const OrbitRecord& orb, const Word& probe) {
  if (orb.period) throw Error(ErrorKind::precondition, "orbit is periodic");
  DilatationEstimate est;
  const Word p = surface.group.unoriented_normal_form(probe);
  for (std::size_t n = 0; n < orb.images.size(); ++n) {
    if (p == orb.seed && n < orb.intersection_table.size())
      est.table.push_back(orb.intersection_table[n]);
    else
      est.table.push_back(geometric_intersection(surface, orb.images[n], p));
  }
  const int last = static_cast<int>(est.table.size()) - 1;
  std::vector<double> ratios;
  for (int n = std::max(1, last / 2); n < last; ++n) {
    const long a = est.table[static_cast<std::size_t>(n)], b = est.table[static_cast<std::size_t>(n + 1)];
    if (a > 0 && b > 0) ratios.push_back(static_cast<double>(b) / static_cast<double>(a));
  }
  if (ratios.empty()) throw Error(ErrorKind::precondition, "intersection table has too few nonzero entries");
  double logsum = 0.0;
  for (double r : ratios) logsum += std::log(r);
  est.value = std::exp(logsum / static_cast<double>(ratios.size()));
  for (double r : ratios) est.error = std::max(est.error, std::abs(r - est.value));
  // Polynomial growth of degree <= 3 would give at most a factor 8 over the second half.
  const long mid = est.table[static_cast<std::size_t>(last / 2)];
  const long end = est.table[static_cast<std::size_t>(last)];
  const double growth = mid > 0 ? static_cast<double>(end) / static_cast<double>(mid) : 0.0;
  const double poly = std::pow(static_cast<double>(last) / std::max(1, last / 2), 3.0);
  est.hyperbolic = est.value > 1.0 + 1e-3 && growth > poly;
  return est;
}

}  // namespace nt
