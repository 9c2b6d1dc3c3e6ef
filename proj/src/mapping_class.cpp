#include "nt/mapping_class.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace nt {

bool MappingClass::is_identity() const {
  if (orientation != Orientation::preserving) return false;
  for (std::size_t k = 0; k < images.size(); ++k)
    if (images[k] != Word{static_cast<Letter>(k + 1)}) return false;
  return true;
}

MappingClass identity_class(const FiniteTypeSurface& surface) {
  MappingClass f;
  for (int k = 1; k <= surface.group.rank(); ++k) {
    f.images.push_back(Word{k});
    f.inverse_images.push_back(Word{k});
  }
  return f;
}

namespace {

Word substitute(const std::vector<Word>& images, const Word& w) {
  Word out;
  for (Letter l : w) {
    const Word& img = images.at(static_cast<std::size_t>(generator_index(l)));
    if (l > 0) {
      for (Letter x : img) {
        if (!out.empty() && out.back() == -x)
          out.pop_back();
        else
          out.push_back(x);
      }
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) {
        const Letter x = -*it;
        if (!out.empty() && out.back() == -x)
          out.pop_back();
        else
          out.push_back(x);
      }
    }
  }
  return out;
}

}  // namespace

Word apply(const FiniteTypeSurface& surface, const MappingClass& f, const Word& w) {
  return surface.group.reduce(substitute(f.images, w));
}

Word apply_inverse(const FiniteTypeSurface& surface, const MappingClass& f, const Word& w) {
  return surface.group.reduce(substitute(f.inverse_images, w));
}

MappingClass compose(const FiniteTypeSurface& surface, const MappingClass& f, const MappingClass& g) {
  MappingClass h;
  for (const Word& img : g.images) h.images.push_back(apply(surface, f, img));
  for (const Word& img : f.inverse_images) h.inverse_images.push_back(apply_inverse(surface, g, img));
  h.orientation = f.orientation * g.orientation;
  if (f.word_record.empty())
    h.word_record = g.word_record;
  else if (g.word_record.empty())
    h.word_record = f.word_record;
  else
    h.word_record = f.word_record + "*" + g.word_record;
  return h;
}

MappingClass inverse(const MappingClass& f) {
  MappingClass h;
  h.images = f.inverse_images;
  h.inverse_images = f.images;
  h.orientation = f.orientation;
  h.word_record = f.word_record.empty() ? "" : "(" + f.word_record + ")^-1";
  return h;
}

MappingClass power(const FiniteTypeSurface& surface, const MappingClass& f, int k) {
  MappingClass base = k < 0 ? inverse(f) : f;
  MappingClass out = identity_class(surface);
  MappingClass sq = base;
  for (int e = std::abs(k); e > 0; e >>= 1) {
    if (e & 1) out = compose(surface, out, sq);
    if (e > 1) sq = compose(surface, sq, sq);
  }
  out.word_record = k == 0 || f.word_record.empty() ? "" : "(" + f.word_record + ")^" + std::to_string(k);
  return out;
}

namespace {

MappingClass from_images(std::vector<Word> images, std::vector<Word> inverse_images) {
  MappingClass f;
  f.images = std::move(images);
  f.inverse_images = std::move(inverse_images);
  return f;
}

// Twists written out by hand on the catalog presentations.
std::optional<MappingClass> catalog_twist(const FiniteTypeSurface& s, const Word& nf) {
  if (s.name == "torus1") {
    if (nf == Word{1}) return from_images({{1}, {2, 1}}, {{1}, {2, -1}});
    if (nf == Word{2}) return from_images({{1, -2}, {2}}, {{1, 2}, {2}});
  }
  if (s.name == "genus2") {
    std::vector<Word> id{{1}, {2}, {3}, {4}};
    for (int pair = 0; pair < 2; ++pair) {
      const Letter a = 2 * pair + 1, b = 2 * pair + 2;
      if (nf == Word{a}) {
        auto f = id, g = id;
        f[static_cast<std::size_t>(b - 1)] = {b, a};
        g[static_cast<std::size_t>(b - 1)] = {b, -a};
        return from_images(f, g);
      }
      if (nf == Word{b}) {
        auto f = id, g = id;
        f[static_cast<std::size_t>(a - 1)] = {a, -b};
        g[static_cast<std::size_t>(a - 1)] = {a, b};
        return from_images(f, g);
      }
    }
    const Word d{1, 2, -1, -2};
    if (nf == s.group.unoriented_normal_form(d)) {
      auto f = id, g = id;
      for (Letter x : {1, 2}) {
        f[static_cast<std::size_t>(x - 1)] = concat(concat(inverse(d), Word{x}), d);
        g[static_cast<std::size_t>(x - 1)] = concat(concat(d, Word{x}), inverse(d));
      }
      return from_images(f, g);
    }
  }
  return std::nullopt;
}

// True when p lies to the left of the oriented geodesic g.
bool left_of(const Geodesic& g, cplx p) {
  const IsometryMap m = IsometryMap::moving_origin_to(p).inverse();
  const Geodesic h = g.image(m);
  return normalize_angle(h.from().angle() - h.to().angle()) > kPi;
}

Geodesic through(cplx p, cplx q) {
  const IsometryMap m = IsometryMap::moving_origin_to(p);
  const cplx q0 = m.inverse().apply_raw(q);
  const double dir = std::arg(q0);
  return Geodesic(m.apply(BoundaryPoint(dir + kPi)), m.apply(BoundaryPoint(dir)));
}

struct Crossing {
  double distance;
  Word conjugator;
  int sign;
};

}  // namespace

// Twist on the universal cover fixing the region of a generic basepoint p0:
// generator x maps to the product of the lift translations met along the
// segment from p0 to x(p0), followed by x.
MappingClass geometric_twist(const FiniteTypeSurface& s, const Word& curve) {
  if (!s.is_geometric()) throw Error(ErrorKind::unsupported, "twists need a geometric surface");
  const Word c = nearest_rotation(s, primitive_root(s.group.conjugacy_normal_form(curve)).first);
  const auto cls = classify_isometry(s.element(c));
  if (cls.kind != IsometryKind::hyperbolic) throw Error(ErrorKind::unknown_curve, "twist curve is not a closed geodesic");
  const Geodesic axis = element_axis(s, c);
  const double period = period_reach(axis, cls.translation_length);
  const cplx p0(0.0131, 0.0073);
  const DiskPoint origin(0.0, 0.0);

  std::vector<Word> fwd, back;
  for (int x = 1; x <= s.group.rank(); ++x) {
    const cplx q = s.letter_map(x).apply_raw(p0);
    const double span = std::max(hyperbolic_distance(origin, DiskPoint(p0)), hyperbolic_distance(origin, DiskPoint(q)));
    const Geodesic seg = through(p0, q);
    const double seg_len = hyperbolic_distance(DiskPoint(p0), DiskPoint(q));
    std::vector<Crossing> crossings;
    std::vector<Geodesic> lifts;
    for (const auto& h : element_ball(s, span + period)) {
      const Geodesic lift = axis.image(h.map);
      if (std::any_of(lifts.begin(), lifts.end(), [&](const Geodesic& g) { return g.endpoint_distance(lift) < 1e-7; }))
        continue;
      const bool lp = left_of(lift, p0);
      if (lp == left_of(lift, q)) continue;
      if (endpoint_linking(seg, lift) != Linking::linked) continue;
      const double t = hyperbolic_distance(DiskPoint(p0), geodesic_intersection(seg, lift));
      if (t > seg_len) continue;
      lifts.push_back(lift);
      crossings.push_back({t, h.word, lp ? 1 : -1});
    }
    std::sort(crossings.begin(), crossings.end(), [](const Crossing& u, const Crossing& v) { return u.distance < v.distance; });
    Word f, g;
    for (const auto& cr : crossings) {
      const Word conj = concat(concat(cr.conjugator, power(c, cr.sign)), inverse(cr.conjugator));
      f = concat(f, conj);
      g = concat(g, inverse(conj));
    }
    f.push_back(x);
    g.push_back(x);
    fwd.push_back(s.group.reduce(f));
    back.push_back(s.group.reduce(g));
  }
  return from_images(fwd, back);
}

namespace {

MappingClass reflection(const FiniteTypeSurface& s) {
  if (s.signature != Signature{1, 0, 1, 0} || !s.is_geometric())
    throw Error(ErrorKind::unknown_curve, "no reflection is declared for this surface");
  MappingClass f = from_images({{1}, {-2}}, {{1}, {-2}});
  f.orientation = Orientation::reversing;
  return f;
}

std::string trim(const std::string& t) {
  const auto b = t.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return t.substr(b, t.find_last_not_of(" \t") - b + 1);
}

}  // namespace

MappingClass dehn_twist(const FiniteTypeSurface& surface, const Word& curve) {
  const Word nf = surface.group.unoriented_normal_form(curve);
  if (nf.empty()) throw Error(ErrorKind::unknown_curve, "cannot twist along a trivial curve");
  if (auto f = catalog_twist(surface, nf)) return *f;
  return geometric_twist(surface, nf);
}

MappingClass build_mapping_class(const FiniteTypeSurface& surface, const std::string& spec) {
  MappingClass out = identity_class(surface);
  const std::string text = trim(spec);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t star = text.find('*', start);
    const std::string token = trim(text.substr(start, star == std::string::npos ? std::string::npos : star - start));
    if (token.empty()) throw Error(ErrorKind::parse, "empty factor in twist word '" + spec + "'");
    std::string name = token;
    int exponent = 1;
    const auto caret = token.find('^');
    if (caret != std::string::npos) {
      name = trim(token.substr(0, caret));
      const std::string e = trim(token.substr(caret + 1));
      std::size_t pos = 0;
      try {
        exponent = std::stoi(e, &pos);
      } catch (const std::exception&) {
        throw Error(ErrorKind::parse, "bad exponent in '" + token + "'");
      }
      if (pos != e.size()) throw Error(ErrorKind::parse, "bad exponent in '" + token + "'");
    }
    MappingClass factor;
    if (name == "R") {
      factor = reflection(surface);
    } else if (name.size() > 1 && name[0] == 'T') {
      const auto it = surface.curve_aliases.find(name.substr(1));
      if (it == surface.curve_aliases.end()) throw Error(ErrorKind::unknown_curve, "unknown curve '" + name.substr(1) + "'");
      factor = dehn_twist(surface, it->second);
    } else {
      throw Error(ErrorKind::unknown_curve, "unknown twist '" + name + "'");
    }
    factor = power(surface, factor, exponent);
    out = compose(surface, out, factor);
    if (star == std::string::npos) break;
    start = star + 1;
  }
  out.word_record = text;
  verify_automorphism(surface, out);
  return out;
}

void verify_automorphism(const FiniteTypeSurface& surface, const MappingClass& f) {
  if (static_cast<int>(f.images.size()) != surface.group.rank() ||
      static_cast<int>(f.inverse_images.size()) != surface.group.rank())
    throw Error(ErrorKind::relator_violation, "automorphism has the wrong number of images");
  if (const auto& r = surface.group.relator()) {
    if (!surface.group.reduce(apply(surface, f, *r)).empty())
      throw Error(ErrorKind::relator_violation, "automorphism does not preserve the relator");
  }
  for (int k = 1; k <= surface.group.rank(); ++k) {
    const Word x{k};
    if (surface.group.reduce(apply(surface, f, apply_inverse(surface, f, x))) != x ||
        surface.group.reduce(apply_inverse(surface, f, apply(surface, f, x))) != x)
      throw Error(ErrorKind::relator_violation, "stored inverse is not an inverse");
  }
}

Word tighten(const FiniteTypeSurface& surface, const MappingClass& f, const Word& w) {
  return surface.group.unoriented_normal_form(apply(surface, f, w));
}

CurveClass tighten(const FiniteTypeSurface& surface, const MappingClass& f, const CurveClass& c) {
  return make_curve(surface, apply(surface, f, c.word));
}

Word tighten_oriented(const FiniteTypeSurface& surface, const MappingClass& f, const Word& w) {
  return surface.group.conjugacy_normal_form(apply(surface, f, w));
}

std::vector<std::vector<int>> homology_action(const FiniteTypeSurface& surface, const MappingClass& f) {
  const std::size_t rank = f.images.size();
  std::vector<std::vector<int>> cols;
  for (std::size_t k = 0; k < rank; ++k) cols.push_back(surface.homology(f.images[k]));
  const std::size_t dim = cols.empty() ? 0 : cols.front().size();
  std::vector<std::vector<int>> m(dim, std::vector<int>(rank, 0));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < rank; ++k) m[i][k] = cols[k][i];
  return m;
}

bool cyclically_monotone(const std::vector<std::pair<double, double>>& samples, bool reversing) {
  if (samples.size() < 3) return true;
  double total = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double a = samples[i].second;
    const double b = samples[(i + 1) % samples.size()].second;
    total += reversing ? normalize_angle(a - b) : normalize_angle(b - a);
  }
  return std::abs(total - kTwoPi) < 1e-6;
}

BoundaryMapSample boundary_action(const FiniteTypeSurface& surface, const MappingClass& f, const Word& anchor,
                                  const std::vector<Word>& elements, int depth) {
  BoundaryMapSample out;
  out.lift_anchor = anchor;
  const Word anchor_inv = inverse(anchor);
  std::map<double, double> samples;
  for (const Word& w : elements) {
    const Word r = surface.group.reduce(w);
    if (cyclic_reduce(r).core.empty()) throw Error(ErrorKind::invalid_point, "sample element has no axis");
    const Word image = surface.group.reduce(concat(concat(anchor, apply(surface, f, r)), anchor_inv));
    const Geodesic src = element_axis(surface, r, depth);
    const Geodesic dst = element_axis(surface, image, depth);
    samples.emplace(src.from().angle(), dst.from().angle());
    samples.emplace(src.to().angle(), dst.to().angle());
  }
  double last = -1.0;
  for (const auto& [theta, value] : samples) {
    if (last >= 0.0 && theta - last < kTolAngle) continue;
    out.samples.emplace_back(theta, value);
    last = theta;
  }
  out.monotone = cyclically_monotone(out.samples, f.orientation == Orientation::reversing);
  return out;
}

}  // namespace nt
