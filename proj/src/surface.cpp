#include "nt/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace nt {

namespace {

// Horocycle length bounding each cusp collar.
constexpr double kCollarHorocycleLength = 2.0;

cplx to_upper(cplx z) { return cplx(0.0, 1.0) * (1.0 + z) / (1.0 - z); }

std::string inverse_name(const std::string& n) {
  std::string out = n;
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

/// Side pairing of a regular polygon: maps side `s` onto side `t` so that the
/// polygon lands on the far side of `t`. `mid` holds the side-midpoint
/// directions, `d` the centre-to-side distance.
IsometryMap regular_pairing(const std::vector<double>& mid, double d, int s, int t) {
  const auto S = static_cast<std::size_t>(s), T = static_cast<std::size_t>(t);
  return IsometryMap::translation(mid[T], 2.0 * d) * IsometryMap::rotation(mid[T] + kPi - mid[S]);
}

struct RegularPolygon {
  std::vector<cplx> vertices;
  std::vector<double> mid;
  double side_distance = 0.0;
};

// Regular n-gon centred at the origin, with side k centred at direction
// 2*pi*k/n. `vertex_radius` is Euclidean (1 for ideal polygons).
RegularPolygon regular_polygon(int n, double vertex_radius, double side_distance) {
  RegularPolygon p;
  p.side_distance = side_distance;
  for (int k = 0; k < n; ++k) {
    p.mid.push_back(kTwoPi * k / n);
    p.vertices.push_back(std::polar(vertex_radius, kTwoPi * k / n - kPi / n));
  }
  // Vertex k sits between sides k-1 and k; rotate so side k runs from vertex k to k+1.
  return p;
}

double ideal_side_distance(int n) {
  const double delta = kPi / n;
  return 2.0 * std::atanh((1.0 - std::sin(delta)) / std::cos(delta));
}

std::vector<Letter> compute_cyclic_order(const std::vector<IsometryMap>& gens) {
  std::vector<std::pair<double, Letter>> dirs;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const Letter l = static_cast<Letter>(g) + 1;
    dirs.emplace_back(normalize_angle(std::arg(gens[g].apply_raw(0.0))), l);
    dirs.emplace_back(normalize_angle(std::arg(gens[g].inverse().apply_raw(0.0))), -l);
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<Letter> out;
  for (const auto& d : dirs) out.push_back(d.second);
  return out;
}

Letter successor(const std::vector<Letter>& order, Letter l) {
  const auto it = std::find(order.begin(), order.end(), l);
  const auto idx = static_cast<std::size_t>(it - order.begin());
  return order[(idx + 1) % order.size()];
}

/// Boundary word of the one-vertex fat graph read from the corner whose
/// outgoing direction is `first`.
Word face_word(const std::vector<Letter>& order, Letter first) {
  Word w{first};
  Letter cur = successor(order, -first);
  while (cur != first) {
    w.push_back(cur);
    cur = successor(order, -cur);
  }
  return w;
}

BoundaryPoint parabolic_fixed_point(const IsometryMap& m) {
  const auto& e = m.matrix();
  return BoundaryPoint::from_complex((e[0] - e[3]) / (2.0 * e[2]));
}

/// Fill in the fat-graph data, ideal fundamental polygon, peripheral words
/// and cusp collars of a free Fuchsian group whose basepoint is the origin.
void finish_free_surface(FiniteTypeSurface& s) {
  s.cyclic_order = compute_cyclic_order(s.generators);
  Polygon poly;
  std::set<Word> faces;
  for (std::size_t k = 0; k < s.cyclic_order.size(); ++k) {
    const Letter out = s.cyclic_order[(k + 1) % s.cyclic_order.size()];
    Word w = face_word(s.cyclic_order, out);
    const IsometryMap m = s.element(w);
    const BoundaryPoint c = parabolic_fixed_point(m);
    poly.vertices.push_back(c.to_complex());
    const Letter side = s.cyclic_order[k];
    poly.side_labels.push_back(side > 0 ? s.group.names()[static_cast<std::size_t>(side - 1)]
                                        : inverse_name(s.group.names()[static_cast<std::size_t>(-side - 1)]));
    faces.insert(least_rotation(w));

    CuspCollar collar;
    collar.point = c;
    collar.normalizer = IsometryMap::rotation(-c.angle());
    const IsometryMap p = collar.normalizer * m * collar.normalizer.inverse();
    const cplx z0(0.0, 0.0);
    const double shift = std::abs((to_upper(p.apply_raw(z0)) - to_upper(z0)).real());
    collar.height = shift / kCollarHorocycleLength;
    s.cusp_collars.push_back(collar);
  }
  // Vertex k of the polygon sits between directions k and k+1; the sides
  // are crossed by those directions, so rotate labels to match vertex order.
  std::rotate(poly.side_labels.begin(), poly.side_labels.begin() + 1, poly.side_labels.end());
  s.fundamental_domain = {poly};
  s.peripheral.assign(faces.begin(), faces.end());
  for (std::size_t k = 0; k < s.cusp_collars.size(); ++k) {
    const Letter out = s.cyclic_order[(k + 1) % s.cyclic_order.size()];
    const Word w = least_rotation(face_word(s.cyclic_order, out));
    const auto it = std::find(s.peripheral.begin(), s.peripheral.end(), w);
    s.cusp_collars[k].cusp = static_cast<int>(it - s.peripheral.begin());
  }
}

FiniteTypeSurface make_punctured_torus(const FenchelNielsen& fn) {
  const double l = fn.lengths.empty() ? 2.0 : fn.lengths[0];
  const double t = fn.twists.empty() ? 0.0 : fn.twists[0];
  if (!(l > 0.0)) throw Error(ErrorKind::parse, "Fenchel-Nielsen lengths must be positive");
  const double C = std::cosh(l / 2.0), S = std::sinh(l / 2.0);
  const double y = 2.0 * (C / S) * std::cosh(t / 2.0);
  const double z = 2.0 * (C / S) * std::cosh((t + l) / 2.0);
  const double e = std::exp(l / 2.0);
  const double p = (z - y / e) / (e - 1.0 / e);
  const double sdiag = y - p;
  const double qr = p * sdiag - 1.0;  // q * r with q = r when positive
  if (qr <= 0.0) throw Error(ErrorKind::unsupported, "Fenchel-Nielsen parameters give non-crossing generator axes");
  const double q = std::sqrt(qr);
  IsometryMap A = IsometryMap::from_upper_half_plane(e, 0.0, 0.0, 1.0 / e);
  IsometryMap B = IsometryMap::from_upper_half_plane(p, q, q, sdiag);
  // Basepoint: the crossing point of the two axes.
  const Geodesic axis_a = *classify_isometry(A).axis;
  const Geodesic axis_b = *classify_isometry(B).axis;
  const DiskPoint o = geodesic_intersection(axis_a, axis_b);
  const IsometryMap recentre = IsometryMap::moving_origin_to(o.z()).inverse();
  A = recentre * A * recentre.inverse();
  B = recentre * B * recentre.inverse();

  FiniteTypeSurface s;
  s.name = "torus1";
  s.signature = {1, 0, 1, 0};
  s.group = GroupPresentation({"a", "b"}, std::nullopt);
  s.generators = {A, B};
  s.fenchel_nielsen = {{l}, {t}};
  s.generator_homology = {{1, 0}, {0, 1}};
  s.curve_aliases = {{"a", Word{1}}, {"b", Word{2}}};
  finish_free_surface(s);
  return s;
}

FiniteTypeSurface make_punctured_sphere(int cusps) {
  const int n = 2 * (cusps - 1);
  const RegularPolygon poly = regular_polygon(n, 1.0, ideal_side_distance(n));
  FiniteTypeSurface s;
  s.name = "sphere" + std::to_string(cusps);
  s.signature = {0, 0, cusps, 0};
  std::vector<std::string> names;
  for (int k = 0; k < cusps - 1; ++k) {
    names.push_back("x" + std::to_string(k));
    s.generators.push_back(regular_pairing(poly.mid, poly.side_distance, 2 * k + 1, 2 * k));
    s.generator_homology.push_back({});
  }
  s.group = GroupPresentation(names, std::nullopt);
  finish_free_surface(s);
  if (cusps == 4) {
    s.curve_aliases = {{"c01", Word{1, 2}}, {"c12", Word{2, 3}}};
  }
  return s;
}

FiniteTypeSurface make_genus2() {
  const double alpha = kPi / 4.0;
  const int n = 8;
  const double cosh_r = 1.0 / (std::tan(kPi / n) * std::tan(alpha / 2.0));
  const double r = std::tanh(std::acosh(cosh_r) / 2.0);
  const double d = std::acosh(std::cos(alpha / 2.0) / std::sin(kPi / n));
  const RegularPolygon poly = regular_polygon(n, r, d);
  FiniteTypeSurface s;
  s.name = "genus2";
  s.signature = {2, 0, 0, 0};
  // With these pairings a1 b1 A1 B1 a2 b2 A2 B2 = 1.
  s.generators = {regular_pairing(poly.mid, d, 2, 0), regular_pairing(poly.mid, d, 1, 3),
                  regular_pairing(poly.mid, d, 6, 4), regular_pairing(poly.mid, d, 5, 7)};
  const std::vector<std::string> names{"a1", "b1", "a2", "b2"};
  s.group = GroupPresentation(names, Word{1, 2, -1, -2, 3, 4, -3, -4});
  s.generator_homology = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  s.curve_aliases = {{"a1", Word{1}}, {"b1", Word{2}}, {"a2", Word{3}}, {"b2", Word{4}}, {"d", Word{1, 2, -1, -2}}};
  Polygon p;
  p.vertices = poly.vertices;
  // Side k (between vertices k and k+1) is crossed by the direction g(0).
  p.side_labels.assign(8, "");
  for (std::size_t g = 0; g < s.generators.size(); ++g) {
    for (Letter l : {static_cast<Letter>(g + 1), -static_cast<Letter>(g + 1)}) {
      const double dir = normalize_angle(std::arg(s.letter_map(l).apply_raw(0.0)));
      const auto side = static_cast<std::size_t>(std::lround(dir / (kTwoPi / n))) % 8;
      p.side_labels[side] = l > 0 ? names[g] : inverse_name(names[g]);
    }
  }
  s.fundamental_domain = {p};
  return s;
}

/// Fixed set of a pants generator: a geodesic, or an ideal point (parabolic).
struct CuffLift {
  std::optional<Geodesic> axis;
  cplx ideal{1.0, 0.0};
};

CuffLift cuff_lift(const IsometryMap& m) {
  const auto cls = classify_isometry(m);
  CuffLift c;
  if (cls.kind == IsometryKind::hyperbolic)
    c.axis = cls.axis;
  else
    c.ideal = cls.fixed_points.at(0).to_complex();
  return c;
}

cplx reflect_in(const Geodesic& g, cplx x) {
  const auto circ = g.circle();
  if (!circ) {
    const cplx u = g.from().to_complex();
    return u * u * std::conj(x);
  }
  const cplx c = circ->first;
  const double r = circ->second;
  return c + r * r / std::conj(x - c);
}

/// Feet of the generalized common perpendicular between two cuff lifts:
/// (vertex on the first, vertex on the second).
std::pair<cplx, cplx> perpendicular_feet(const CuffLift& a, const CuffLift& b) {
  if (a.axis && b.axis) {
    const Geodesic perp = common_perpendicular(*a.axis, *b.axis);
    return {geodesic_intersection(perp, *a.axis).z(), geodesic_intersection(perp, *b.axis).z()};
  }
  if (a.axis) {
    const Geodesic perp(BoundaryPoint::from_complex(b.ideal), BoundaryPoint::from_complex(reflect_in(*a.axis, b.ideal)));
    return {geodesic_intersection(perp, *a.axis).z(), b.ideal};
  }
  if (b.axis) {
    const Geodesic perp(BoundaryPoint::from_complex(a.ideal), BoundaryPoint::from_complex(reflect_in(*b.axis, a.ideal)));
    return {a.ideal, geodesic_intersection(perp, *b.axis).z()};
  }
  return {a.ideal, b.ideal};
}

/// Right-angled hexagon (degenerating at cusps) of a pair of pants with the
/// given cuff lengths (0 = cusp), plus its mirror image.
std::vector<Polygon> pants_hexagons(const std::array<double, 3>& lengths) {
  const auto tr = [](double l) { return l > 0.0 ? 2.0 * std::cosh(l / 2.0) : 2.0; };
  const double x = tr(lengths[0]), y = tr(lengths[1]), z = -tr(lengths[2]);
  // A = [[x,-1],[1,0]], B = [[0,s],[-1/s,y]], tr(AB) = s + 1/s = z.
  const double s = (z + std::sqrt(std::max(0.0, z * z - 4.0))) / 2.0;
  const IsometryMap A = IsometryMap::from_upper_half_plane(x, -1.0, 1.0, 0.0);
  const IsometryMap B = IsometryMap::from_upper_half_plane(0.0, s, -1.0 / s, y);
  const std::array<CuffLift, 3> cuffs{cuff_lift(A), cuff_lift(B), cuff_lift(A * B)};
  Polygon hex;
  for (int i = 0; i < 3; ++i) {
    const auto [on_i, on_next] = perpendicular_feet(cuffs[static_cast<std::size_t>(i)], cuffs[static_cast<std::size_t>((i + 1) % 3)]);
    hex.vertices.push_back(on_i);
    hex.vertices.push_back(on_next);
  }
  // Collapse repeated ideal vertices at cusps.
  std::vector<cplx> uniq;
  for (std::size_t k = 0; k < hex.vertices.size(); ++k) {
    const cplx v = hex.vertices[k];
    const cplx prev = hex.vertices[(k + hex.vertices.size() - 1) % hex.vertices.size()];
    if (k > 0 && std::abs(v - prev) < 1e-12) continue;
    if (k == 0 && std::abs(v - hex.vertices.back()) < 1e-12) continue;
    uniq.push_back(v);
  }
  hex.vertices = uniq;
  hex.side_labels.assign(uniq.size(), "");
  Polygon mirror = hex;
  for (auto& v : mirror.vertices) v = std::conj(v);
  std::reverse(mirror.vertices.begin(), mirror.vertices.end());
  return {hex, mirror};
}

FiniteTypeSurface make_pants_assembly(const Signature& sig, const FenchelNielsen& fn) {
  const int pants = -sig.euler_characteristic();
  const int interior = sig.pants_curves();
  FiniteTypeSurface s;
  s.name = "assembly";
  s.signature = sig;
  s.fenchel_nielsen = fn;
  s.fenchel_nielsen.lengths.resize(static_cast<std::size_t>(std::max(0, interior)), 2.0);
  s.fenchel_nielsen.twists.resize(static_cast<std::size_t>(std::max(0, interior)), 0.0);
  // Cuff slots: cusps first, then boundary circles, then each interior curve twice.
  std::vector<double> slots(static_cast<std::size_t>(sig.cusps), 0.0);
  for (int b = 0; b < sig.boundary; ++b) slots.push_back(2.0);
  for (int k = 0; k < interior; ++k) {
    slots.push_back(s.fenchel_nielsen.lengths[static_cast<std::size_t>(k)]);
    slots.push_back(s.fenchel_nielsen.lengths[static_cast<std::size_t>(k)]);
  }
  for (int p = 0; p < pants; ++p) {
    const auto i = static_cast<std::size_t>(3 * p);
    for (auto& poly : pants_hexagons({slots[i], slots[i + 1], slots[i + 2]})) s.fundamental_domain.push_back(poly);
  }
  // Standard presentation, combinatorial only.
  std::vector<std::string> names;
  for (int g = 1; g <= sig.genus; ++g) {
    names.push_back("a" + std::to_string(g));
    names.push_back("b" + std::to_string(g));
    s.generator_homology.push_back({});
    s.generator_homology.push_back({});
  }
  const int punctures = sig.boundary + sig.cusps;
  for (int c = 1; c < punctures; ++c) {
    names.push_back("c" + std::to_string(c));
    s.generator_homology.push_back({});
  }
  for (int g = 0; g < sig.genus; ++g) {
    s.generator_homology[static_cast<std::size_t>(2 * g)].assign(static_cast<std::size_t>(2 * sig.genus), 0);
    s.generator_homology[static_cast<std::size_t>(2 * g + 1)].assign(static_cast<std::size_t>(2 * sig.genus), 0);
    s.generator_homology[static_cast<std::size_t>(2 * g)][static_cast<std::size_t>(2 * g)] = 1;
    s.generator_homology[static_cast<std::size_t>(2 * g + 1)][static_cast<std::size_t>(2 * g + 1)] = 1;
  }
  for (std::size_t k = static_cast<std::size_t>(2 * sig.genus); k < names.size(); ++k)
    s.generator_homology[k].assign(static_cast<std::size_t>(2 * sig.genus), 0);
  if (punctures == 0) {
    Word rel;
    for (int g = 0; g < sig.genus; ++g) {
      const Letter a = 2 * g + 1, b = 2 * g + 2;
      rel.insert(rel.end(), {a, b, -a, -b});
    }
    s.group = GroupPresentation(names, rel);
  } else {
    s.group = GroupPresentation(names, std::nullopt);
  }
  return s;
}

}  // namespace

bool CuspCollar::meets(const Geodesic& g) const {
  const cplx p = normalizer.apply(g.from()).to_complex();
  const cplx q = normalizer.apply(g.to()).to_complex();
  if (std::abs(p - 1.0) < 1e-12 || std::abs(q - 1.0) < 1e-12) return true;
  const double x1 = to_upper(p).real();
  const double x2 = to_upper(q).real();
  return std::abs(x1 - x2) / 2.0 > height;
}

IsometryMap FiniteTypeSurface::letter_map(Letter l) const {
  const int g = generator_index(l);
  if (g < 0 || g >= static_cast<int>(generators.size()))
    throw Error(ErrorKind::unknown_generator, "generator index out of range");
  const IsometryMap& m = generators[static_cast<std::size_t>(g)];
  return l > 0 ? m : m.inverse();
}

IsometryMap FiniteTypeSurface::element(const Word& w) const {
  if (!is_geometric()) throw Error(ErrorKind::unsupported, "surface has no geometric realization");
  IsometryMap out;
  for (Letter l : w) out = out * letter_map(l);
  return out;
}

std::vector<int> FiniteTypeSurface::homology(const Word& w) const {
  std::size_t dim = 0;
  for (const auto& h : generator_homology) dim = std::max(dim, h.size());
  std::vector<int> out(dim, 0);
  for (Letter l : w) {
    const auto& h = generator_homology.at(static_cast<std::size_t>(generator_index(l)));
    for (std::size_t k = 0; k < h.size(); ++k) out[k] += l > 0 ? h[k] : -h[k];
  }
  return out;
}

bool FiniteTypeSurface::is_peripheral(const Word& w) const {
  const Word nf = group.unoriented_normal_form(w);
  if (nf.empty()) return false;
  for (const Word& p : peripheral) {
    if (p.empty() || nf.size() % p.size() != 0) continue;
    const int k = static_cast<int>(nf.size() / p.size());
    if (group.unoriented_normal_form(power(p, k)) == nf) return true;
  }
  return false;
}

double FiniteTypeSurface::domain_radius() const {
  double r = 0.0;
  for (const auto& poly : fundamental_domain)
    for (cplx v : poly.vertices)
      if (std::abs(v) < 1.0 - 1e-9) r = std::max(r, hyperbolic_distance(DiskPoint(0.0, 0.0), DiskPoint(v)));
  return r;
}

FiniteTypeSurface surface_from_signature(const Signature& sig, const std::optional<FenchelNielsen>& fn) {
  if (sig.crosscaps > 0) throw Error(ErrorKind::unsupported, "nonorientable surfaces are not supported");
  if (sig.genus < 0 || sig.boundary < 0 || sig.cusps < 0)
    throw Error(ErrorKind::non_standard_signature, "negative signature entry");
  if (!sig.is_standard()) throw Error(ErrorKind::non_standard_signature, "signature is not standard (c+m+b+2g < 3)");
  if (fn) {
    const auto expected = static_cast<std::size_t>(sig.pants_curves());
    if (fn->lengths.size() != expected || (!fn->twists.empty() && fn->twists.size() != expected))
      throw Error(ErrorKind::parse, "expected " + std::to_string(expected) + " Fenchel-Nielsen pairs");
    for (double l : fn->lengths)
      if (!(l > 0.0)) throw Error(ErrorKind::parse, "Fenchel-Nielsen lengths must be positive");
  }
  FiniteTypeSurface s;
  if (sig == Signature{1, 0, 1, 0}) {
    s = make_punctured_torus(fn.value_or(FenchelNielsen{}));
  } else if (sig == Signature{0, 0, 3, 0}) {
    s = make_punctured_sphere(3);
  } else if (sig == Signature{0, 0, 4, 0} && !fn) {
    s = make_punctured_sphere(4);
  } else if (sig == Signature{2, 0, 0, 0} && !fn) {
    s = make_genus2();
  } else {
    return make_pants_assembly(sig, fn.value_or(FenchelNielsen{}));
  }
  if (min_displacement(s, 3) < 1e-6) throw Error(ErrorKind::malformed_isometry, "group failed the discreteness probe");
  return s;
}

FiniteTypeSurface catalog_surface(const std::string& name) {
  if (name == "torus1") return surface_from_signature({1, 0, 1, 0});
  if (name == "sphere3") return surface_from_signature({0, 0, 3, 0});
  if (name == "sphere4") return surface_from_signature({0, 0, 4, 0});
  if (name == "genus2") return surface_from_signature({2, 0, 0, 0});
  throw Error(ErrorKind::parse, "unknown catalog surface '" + name + "'");
}

double area(const FiniteTypeSurface& surface) {
  double total = 0.0;
  for (const auto& poly : surface.fundamental_domain) {
    const std::size_t n = poly.vertices.size();
    double angles = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      angles += vertex_angle(poly.vertices[k], poly.vertices[(k + n - 1) % n], poly.vertices[(k + 1) % n]);
    total += (static_cast<double>(n) - 2.0) * kPi - angles;
  }
  return total;
}

IsometryMap group_element(const FiniteTypeSurface& surface, const Word& w) { return surface.element(w); }

BoundaryPoint ray_endpoint(const FiniteTypeSurface& surface, const Word& cyclic, long start, bool forward, int depth) {
  cplx z(0.0, 0.0);
  for (int t = depth - 1; t >= 0; --t) {
    const Letter l = forward ? cyclic_at(cyclic, start + t) : -cyclic_at(cyclic, start - 1 - t);
    z = surface.letter_map(l).apply_raw(z);
  }
  return BoundaryPoint::from_complex(z);
}

Geodesic element_axis(const FiniteTypeSurface& surface, const Word& w, int depth) {
  const CyclicReduction cr = cyclic_reduce(surface.group.reduce(w));
  if (cr.core.empty()) throw Error(ErrorKind::degenerate_geodesic, "trivial element has no axis");
  const IsometryMap c = surface.element(cr.conjugator);
  const BoundaryPoint attracting = c.apply(ray_endpoint(surface, cr.core, 0, true, depth));
  const BoundaryPoint repelling = c.apply(ray_endpoint(surface, cr.core, 0, false, depth));
  return Geodesic(repelling, attracting);
}

double min_displacement(const FiniteTypeSurface& surface, int radius) {
  std::vector<IsometryMap> frontier{IsometryMap::identity()};
  std::vector<Word> words{Word{}};
  double best = std::numeric_limits<double>::infinity();
  const DiskPoint origin(0.0, 0.0);
  for (int r = 0; r < radius; ++r) {
    std::vector<IsometryMap> next;
    std::vector<Word> next_words;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (int g = 1; g <= surface.group.rank(); ++g) {
        for (Letter l : {g, -g}) {
          if (!words[i].empty() && words[i].back() == -l) continue;
          Word w = words[i];
          w.push_back(l);
          if (surface.group.reduce(w).empty()) continue;
          IsometryMap m = frontier[i] * surface.letter_map(l);
          best = std::min(best, hyperbolic_distance(origin, m.apply(origin)));
          next.push_back(m);
          next_words.push_back(std::move(w));
        }
      }
    }
    frontier = std::move(next);
    words = std::move(next_words);
  }
  return best;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_count(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(value, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse, "invalid integer for '" + key + "'");
  }
  if (pos != value.size() || v < 0) throw Error(ErrorKind::parse, "invalid integer for '" + key + "'");
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse, "invalid number in '" + key + "'");
    }
    if (pos != item.size() || !std::isfinite(v)) throw Error(ErrorKind::parse, "invalid number in '" + key + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

SurfaceSpec parse_surface_spec(const std::string& text) {
  SurfaceSpec spec;
  std::set<std::string> seen;
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  std::optional<std::vector<double>> lengths, twists;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::parse, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw Error(ErrorKind::parse, "duplicate key '" + key + "'");
    if (key == "genus") {
      spec.signature.genus = parse_count(key, value);
    } else if (key == "boundary") {
      spec.signature.boundary = parse_count(key, value);
    } else if (key == "cusps") {
      spec.signature.cusps = parse_count(key, value);
    } else if (key == "crosscaps") {
      spec.signature.crosscaps = parse_count(key, value);
    } else if (key == "fn_lengths") {
      lengths = parse_list(key, value);
    } else if (key == "fn_twists") {
      twists = parse_list(key, value);
    } else if (key.rfind("curve.", 0) == 0 && key.size() > 6) {
      spec.curves[key.substr(6)] = value;
    } else {
      throw Error(ErrorKind::parse, "unknown key '" + key + "'");
    }
  }
  for (const char* required : {"genus", "boundary", "cusps"})
    if (!seen.count(required)) throw Error(ErrorKind::parse, std::string("missing key '") + required + "'");
  if (twists && !lengths) throw Error(ErrorKind::parse, "fn_twists given without fn_lengths");
  if (lengths) spec.fn = FenchelNielsen{*lengths, twists.value_or(std::vector<double>{})};
  return spec;
}

FiniteTypeSurface surface_from_spec(const SurfaceSpec& spec) {
  FiniteTypeSurface s = surface_from_signature(spec.signature, spec.fn);
  for (const auto& [alias, text] : spec.curves) {
    const Word w = s.group.reduce(s.group.parse(text));
    if (w.empty()) throw Error(ErrorKind::parse, "curve alias '" + alias + "' is trivial");
    s.curve_aliases[alias] = w;
  }
  return s;
}

}  // namespace nt
