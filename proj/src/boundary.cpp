#include <algorithm>
#include <cmath>
#include <limits>

#include "nt/lamination.hpp"

namespace nt {

namespace {

// Reduced words up to the given length, enough to give a few thousand samples.
std::vector<Word> sample_words(const FiniteTypeSurface& s, int max_length) {
  const int rank = s.group.rank();
  std::vector<Word> out, frontier{Word{}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (int g = 1; g <= rank; ++g)
        for (Letter l : {g, -g}) {
          if (!w.empty() && w.back() == -l) continue;
          Word x = w;
          x.push_back(l);
          next.push_back(std::move(x));
        }
    for (const Word& w : next)
      if (!cyclic_reduce(s.group.reduce(w)).core.empty()) out.push_back(w);
    frontier = std::move(next);
    if (out.size() > 6000) break;
  }
  return out;
}

struct Lift {
  MappingClass map;   // f^p
  Word anchor;
  MappingClass inv;   // f^-p
  Word inv_anchor;    // anchor of the inverse lift
};

Lift make_lift(const FiniteTypeSurface& s, const MappingClass& f, int p, const Word& anchor) {
  if (p < 1) throw Error(ErrorKind::precondition, "power must be positive");
  Lift l;
  l.map = power(s, f, p);
  l.anchor = s.group.reduce(anchor);
  l.inv = inverse(l.map);
  l.inv_anchor = apply(s, l.inv, inverse(l.anchor));
  return l;
}

// Image of a ray (long prefix of an infinite reduced word) under x -> a f(x);
// only the prefix unaffected by cancellation at the far end is kept.
Word push_ray(const FiniteTypeSurface& s, const MappingClass& f, const Word& a, const Word& ray, std::size_t keep) {
  std::size_t longest = 0;
  for (const Word& w : f.images) longest = std::max(longest, w.size());
  Word img = s.group.reduce(concat(a, apply(s, f, ray)));
  const std::size_t margin = 2 * longest + 2;
  img.resize(img.size() > margin ? std::min(keep, img.size() - margin) : 0);
  return img;
}

double ray_angle(const FiniteTypeSurface& s, const Word& ray) {
  const int depth = static_cast<int>(std::min<std::size_t>(ray.size(), 64));
  return ray_endpoint(s, ray, 0, true, depth).angle();
}

// Follow the forward (contracting) or inverse (expanding) dynamics from a
// periodic ray until the endpoint settles.
std::optional<double> settle(const FiniteTypeSurface& s, const Lift& lift, const Word& start, bool forward) {
  const std::size_t keep = 160;
  Word ray;
  while (ray.size() < keep) ray.insert(ray.end(), start.begin(), start.end());
  ray = s.group.reduce(ray);
  double last = ray_angle(s, ray);
  for (int it = 0; it < 80; ++it) {
    ray = forward ? push_ray(s, lift.map, lift.anchor, ray, keep) : push_ray(s, lift.inv, lift.inv_anchor, ray, keep);
    if (ray.size() < 48) return std::nullopt;
    const double now = ray_angle(s, ray);
    if (BoundaryPoint(now).distance(BoundaryPoint(last)) < 1e-13 && it > 4) return now;
    last = now;
  }
  return last;
}

struct Sample {
  double x, dx;
  Word word;
  bool attracting;
};

void fill_structure(BoundaryFixedPointReport& rep) {
  const auto& fp = rep.fixed_points;
  const std::size_t n = fp.size();
  rep.alternating = n >= 2 && n % 2 == 0;
  for (std::size_t i = 0; i < n && rep.alternating; ++i)
    if (fp[i].type == fp[(i + 1) % n].type) rep.alternating = false;
  std::vector<std::size_t> contracting;
  for (std::size_t i = 0; i < n; ++i)
    if (fp[i].type == FixedPointType::contracting) contracting.push_back(i);
  rep.one_expanding_per_interval = !contracting.empty();
  for (std::size_t k = 0; k < contracting.size(); ++k) {
    const std::size_t a = contracting[k], b = contracting[(k + 1) % contracting.size()];
    int expanding = 0;
    for (std::size_t i = (a + 1) % n; i != b; i = (i + 1) % n)
      if (fp[i].type == FixedPointType::expanding) ++expanding;
    if (contracting.size() == 1) expanding = static_cast<int>(n) - 1;
    rep.interval_structure.emplace_back(static_cast<int>(a), static_cast<int>(b));
    if (expanding != 1) rep.one_expanding_per_interval = false;
  }
}

// Sign changes of the displacement along sorted samples (cyclic when `wrap`
// gives the offset added to the first sample to continue past the last).
void locate(const FiniteTypeSurface& s, const Lift& lift, std::vector<Sample>& samples, double wrap, bool circle,
            BoundaryFixedPointReport& rep) {
  std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.x < b.x; });
  const std::size_t n = samples.size();
  if (n < 4) {
    rep.note = "too few samples";
    return;
  }
  const double big = circle ? 0.5 * kPi : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& a = samples[i];
    const Sample& b = samples[(i + 1) % n];
    if (std::abs(a.dx) > big || std::abs(b.dx) > big) continue;
    if ((a.dx > 0) == (b.dx > 0)) continue;
    const bool contracting = a.dx > 0;
    const double hi = i + 1 < n ? b.x : b.x + wrap;
    BoundaryFixedPoint p;
    p.type = contracting ? FixedPointType::contracting : FixedPointType::expanding;
    p.position = 0.5 * (a.x + hi);
    if (circle) {
      // Refine by following the dynamics from a sample in the bracket.
      const Sample& seed = std::abs(a.dx) < std::abs(b.dx) ? a : b;
      Word start = seed.attracting ? cyclic_reduce(s.group.reduce(seed.word)).core
                                   : inverse(cyclic_reduce(s.group.reduce(seed.word)).core);
      const CyclicReduction cr = cyclic_reduce(s.group.reduce(seed.word));
      Word prefix = cr.conjugator;
      Word body;
      while (body.size() < 200) body.insert(body.end(), start.begin(), start.end());
      if (const auto t = settle(s, lift, concat(prefix, body), contracting)) {
        const double lo_a = a.x, hi_a = hi;
        double u = *t;
        if (u < lo_a - 1e-9) u += kTwoPi;
        if (u >= lo_a - 1e-9 && u <= hi_a + 1e-9) p.position = normalize_angle(*t);
      }
      p.position = normalize_angle(p.position);
    }
    rep.fixed_points.push_back(p);
  }
  if (circle)
    std::sort(rep.fixed_points.begin(), rep.fixed_points.end(),
              [](const BoundaryFixedPoint& x, const BoundaryFixedPoint& y) { return x.position < y.position; });
}

}  // namespace

BoundaryFixedPointReport boundary_fixed_points(const FiniteTypeSurface& s, const MappingClass& f, int p,
                                               const Word& anchor, int sample_length) {
  if (!s.is_geometric()) throw Error(ErrorKind::unsupported, "surface has no Fuchsian group");
  const Lift lift = make_lift(s, f, p, anchor);
  BoundaryFixedPointReport rep;
  rep.power = p;
  rep.anchor = lift.anchor;
  const Word anchor_inv = inverse(lift.anchor);
  std::vector<Sample> samples;
  for (const Word& w : sample_words(s, sample_length)) {
    const Word r = s.group.reduce(w);
    const Word img = s.group.reduce(concat(concat(lift.anchor, apply(s, lift.map, r)), anchor_inv));
    if (s.is_peripheral(r)) continue;  // parabolic: no axis
    Geodesic src, dst;
    try {
      src = element_axis(s, r);
      dst = element_axis(s, img);
    } catch (const Error&) {
      continue;  // endpoints closer than the angle tolerance
    }
    samples.push_back({src.to().angle(), angle_difference(src.to().angle(), dst.to().angle()), r, true});
    samples.push_back({src.from().angle(), angle_difference(src.from().angle(), dst.from().angle()), r, false});
  }
  locate(s, lift, samples, kTwoPi, true, rep);
  fill_structure(rep);
  rep.conclusive = !rep.fixed_points.empty() && rep.note.empty();
  return rep;
}

std::optional<Word> cusp_anchor(const FiniteTypeSurface& s, const MappingClass& f, int p, const CuspCrown& crown) {
  const MappingClass g = power(s, f, p);
  const Word& par = crown.parabolic;
  const CyclicReduction cr = cyclic_reduce(s.group.reduce(apply(s, g, par)));
  Word rot = par;
  Word lead;
  for (std::size_t k = 0; k < par.size(); ++k) {
    if (rot == cr.core) return s.group.reduce(concat(lead, inverse(cr.conjugator)));
    lead.push_back(rot.front());
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
  }
  return std::nullopt;
}

BoundaryFixedPointReport cusp_fixed_points(const FiniteTypeSurface& s, const MappingClass& f, int p,
                                           const Word& anchor, const CuspCrown& crown, int sample_length) {
  if (!s.is_geometric()) throw Error(ErrorKind::unsupported, "surface has no Fuchsian group");
  const Lift lift = make_lift(s, f, p, anchor);
  BoundaryFixedPointReport rep;
  rep.power = p;
  rep.anchor = lift.anchor;
  const Word anchor_inv = inverse(lift.anchor);
  const Word fixed = s.group.reduce(concat(concat(lift.anchor, apply(s, lift.map, crown.parabolic)), anchor_inv));
  if (fixed != s.group.reduce(crown.parabolic) || crown.vertices.empty()) {
    rep.note = "lift does not commute with the cusp parabolic";
    return rep;
  }
  const auto& collar = *std::find_if(s.cusp_collars.begin(), s.cusp_collars.end(),
                                     [&](const CuspCollar& c) { return c.cusp == crown.cusp; });
  auto coord = [&](BoundaryPoint b) {
    const cplx z = collar.normalizer.apply(b).to_complex();
    return (cplx(0.0, 1.0) * (1.0 + z) / (1.0 - z)).real();
  };
  const double T = crown.period, v0 = crown.vertices.front();
  std::vector<Sample> samples;
  for (const Word& w : sample_words(s, sample_length)) {
    const Word r = s.group.reduce(w);
    const Word img = s.group.reduce(concat(concat(lift.anchor, apply(s, lift.map, r)), anchor_inv));
    if (s.is_peripheral(r)) continue;  // parabolic: no axis
    Geodesic src, dst;
    try {
      src = element_axis(s, r);
      dst = element_axis(s, img);
    } catch (const Error&) {
      continue;  // endpoints closer than the angle tolerance
    }
    for (int e = 0; e < 2; ++e) {
      const BoundaryPoint a = e ? src.to() : src.from(), b = e ? dst.to() : dst.from();
      if (a.distance(collar.point) < 1e-9 || b.distance(collar.point) < 1e-9) continue;
      const double x = coord(a);
      const double k = std::floor((x - v0) / T);
      samples.push_back({x - k * T, coord(b) - x, r, e == 1});
    }
  }
  // Samples strictly inside the period; vertices are found across the wrap.
  locate(s, lift, samples, T, false, rep);
  std::sort(rep.fixed_points.begin(), rep.fixed_points.end(),
            [](const BoundaryFixedPoint& x, const BoundaryFixedPoint& y) { return x.position < y.position; });
  for (auto& fp : rep.fixed_points)
    if (fp.position >= v0 + T) fp.position -= T;
  std::sort(rep.fixed_points.begin(), rep.fixed_points.end(),
            [](const BoundaryFixedPoint& x, const BoundaryFixedPoint& y) { return x.position < y.position; });
  fill_structure(rep);
  rep.conclusive = !rep.fixed_points.empty() && rep.note.empty();
  return rep;
}

std::optional<InvariantLeaf> find_two_sided_leaf(const FiniteTypeSurface& s, const MappingClass& f,
                                                 const LaminationApprox& lam, int max_power, int anchor_length,
                                                 int sample_length) {
  std::vector<Word> anchors{Word{}};
  for (const Word& w : sample_words(s, anchor_length)) anchors.push_back(s.group.reduce(w));
  std::sort(anchors.begin(), anchors.end(), [](const Word& x, const Word& y) { return curve_less(x, y); });
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  for (int p = 1; p <= max_power; ++p) {
    for (const Word& a : anchors) {
      BoundaryFixedPointReport rep = boundary_fixed_points(s, f, p, a, sample_length);
      if (rep.fixed_points.size() != 4 || !rep.alternating) continue;
      std::vector<double> c;
      for (const auto& x : rep.fixed_points)
        if (x.type == FixedPointType::contracting) c.push_back(x.position);
      const Geodesic cand{BoundaryPoint(c[0]), BoundaryPoint(c[1])};
      const double reach = hyperbolic_distance(DiskPoint(0.0, 0.0), cand.closest_to_origin()) + 3.0;
      for (const auto& h : element_ball(s, reach)) {
        for (const Leaf& l : lam.leaves) {
          const Geodesic img = l.geodesic.image(h.map);
          if (img.endpoint_distance(cand) < 1e-6) {
            InvariantLeaf out;
            out.power = p;
            out.anchor = a;
            out.leaf = {img, l.window};
            out.report = std::move(rep);
            return out;
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace nt
