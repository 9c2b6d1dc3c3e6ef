#include <algorithm>
#include <cmath>
#include <limits>
#include <string_view>
#include <unordered_set>

#include "nt/kernels.hpp"
#include "nt/lamination.hpp"

namespace nt {

std::vector<Word> cyclic_windows(const Word& cyclic, int half_width) {
  if (cyclic.empty() || half_width < 1) return {};
  const long n = static_cast<long>(cyclic.size());
  const long w = 2L * half_width;
  // Letters as bytes so windows can be hashed as string views.
  std::string text(static_cast<std::size_t>(n + w), '\0');
  for (long i = 0; i < n + w; ++i) text[static_cast<std::size_t>(i)] = static_cast<char>(cyclic_at(cyclic, i - half_width) + 64);
  std::unordered_set<std::string_view> seen;
  seen.reserve(static_cast<std::size_t>(std::min<long>(n, 1L << 16)));
  const std::string_view view(text);
  for (long i = 0; i < n; ++i) seen.insert(view.substr(static_cast<std::size_t>(i), static_cast<std::size_t>(w)));
  std::vector<Word> out;
  out.reserve(seen.size());
  for (std::string_view s : seen) {
    Word word(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) word[k] = static_cast<int>(s[k]) - 64;
    out.push_back(std::move(word));
  }
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

namespace {

std::vector<Leaf> stage_leaves(const FiniteTypeSurface& s, const Word& cyclic, int k) {
  std::vector<Word> windows = cyclic_windows(cyclic, k);
  const std::vector<Geodesic> geo = kernels::leaf_batch_parallel(s, windows, k);
  std::vector<Leaf> out;
  out.reserve(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) out.push_back({geo[i], std::move(windows[i])});
  return out;
}

std::vector<Geodesic> geodesics_of(const std::vector<Leaf>& leaves) {
  std::vector<Geodesic> g;
  g.reserve(leaves.size());
  for (const Leaf& l : leaves) g.push_back(l.geodesic);
  return g;
}

// Which side of g the geodesic h lies on: +1 left (counterclockwise arc from
// g.from() to g.to()), -1 right, 0 when linked.
int side_of(const Geodesic& g, const Geodesic& h) {
  const double a = g.from().angle(), b = g.to().angle();
  auto side = [&](double t) {
    if (BoundaryPoint(t).distance(g.from()) < 1e-12 || BoundaryPoint(t).distance(g.to()) < 1e-12) return 0;
    return in_open_arc(b, a, t) ? 1 : -1;
  };
  const int x = side(h.from().angle()), y = side(h.to().angle());
  if (x == 0) return y;
  if (y == 0 || x == y) return x;
  return 0;
}

// A window periodic with a short period is the axis of a closed curve.
bool periodic_window(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p <= n / 4; ++p) {
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return true;
  }
  return false;
}

}  // namespace

LaminationApprox lamination_approx(const FiniteTypeSurface& surface, const MappingClass& f, const Word& seed,
                                   Direction direction, const LaminationOptions& opt) {
  if (!surface.is_geometric()) throw Error(ErrorKind::unsupported, "surface has no Fuchsian group");
  if (opt.depth < 2 || opt.window < 1) throw Error(ErrorKind::precondition, "lamination depth must be at least 2");
  const MappingClass g = direction == Direction::plus ? f : inverse(f);
  LaminationApprox lam;
  lam.direction = direction;
  lam.seed = surface.group.unoriented_normal_form(seed);
  if (lam.seed.empty()) throw Error(ErrorKind::unknown_curve, "trivial seed curve");

  Word current = lam.seed;
  std::vector<Leaf> prev;
  int below = 0;
  for (int n = 1; n <= opt.depth; ++n) {
    Word next = tighten(surface, g, current);
    if (next == lam.seed) throw Error(ErrorKind::precondition, "seed curve is periodic");
    if (next.size() > opt.max_letters) break;
    current = std::move(next);
    std::vector<Leaf> leaves = stage_leaves(surface, current, opt.window);
    lam.depth = n;
    if (!prev.empty()) {
      const double r = kernels::hausdorff_parallel(geodesics_of(leaves), geodesics_of(prev));
      lam.residual_history.push_back(r);
      below = r < opt.threshold ? below + 1 : 0;
    }
    prev = std::move(leaves);
    if (opt.stop_on_convergence && below >= 2) break;
  }
  if (lam.depth < 2) throw Error(ErrorKind::precondition, "orbit exceeded the letter cap before two stages");
  lam.final_curve = current;
  lam.final_word_length = current.size();
  lam.hausdorff_residual = lam.residual_history.empty() ? std::numeric_limits<double>::infinity()
                                                        : lam.residual_history.back();
  lam.converged = lam.hausdorff_residual < opt.threshold;
  const auto& h = lam.residual_history;
  if (h.size() >= 3) {
    const std::size_t m = h.size();
    lam.nonconvergence_warning = !lam.converged && h[m - 1] >= h[m - 2] && h[m - 2] >= h[m - 3];
  }

  // Prune leaves with no other leaf nearby on either side.
  const double width = std::max(opt.prune_width, 10.0 * lam.hausdorff_residual);
  for (std::size_t i = 0; i < prev.size(); ++i) {
    bool left = false, right = false;
    for (std::size_t j = 0; j < prev.size() && !(left && right); ++j) {
      if (i == j || prev[i].geodesic.endpoint_distance(prev[j].geodesic) > width) continue;
      const int sd = side_of(prev[i].geodesic, prev[j].geodesic);
      if (sd > 0) left = true;
      if (sd < 0) right = true;
    }
    (left || right ? lam.leaves : lam.pruned).push_back(prev[i]);
  }

  lam.leaves_unlinked = true;
  for (std::size_t i = 0; i < lam.leaves.size() && lam.leaves_unlinked; ++i)
    for (std::size_t j = i + 1; j < lam.leaves.size(); ++j)
      if (endpoint_linking(lam.leaves[i].geodesic, lam.leaves[j].geodesic) == Linking::linked) {
        lam.leaves_unlinked = false;
        break;
      }
  lam.no_closed_leaves = std::none_of(lam.leaves.begin(), lam.leaves.end(),
                                      [](const Leaf& l) { return periodic_window(l.window); });
  if (surface.generator_homology.size() == 2 && surface.generator_homology[0].size() == 2) {
    const std::vector<int> hom = surface.homology(current);
    if (hom[0] != 0) lam.slope = static_cast<double>(hom[1]) / static_cast<double>(hom[0]);
  }
  return lam;
}

std::string to_string(RegionType t) {
  switch (t) {
    case RegionType::disk_with_p_ideal_vertices: return "disk_with_p_ideal_vertices";
    case RegionType::punctured_disk: return "punctured_disk";
    case RegionType::crown_with_rim: return "crown_with_rim";
    case RegionType::moebius_strip_reserved: return "moebius_strip_reserved";
  }
  return "unknown";
}

std::string to_string(NucleusType t) {
  switch (t) {
    case NucleusType::disk: return "disk";
    case NucleusType::punctured_disk: return "punctured_disk";
    case NucleusType::annulus_with_rim: return "annulus_with_rim";
    case NucleusType::moebius_reserved: return "moebius_reserved";
  }
  return "unknown";
}

std::vector<std::string> CrownCensus::type_multiset() const {
  std::vector<std::string> out;
  for (const CrownRegion& r : regions)
    out.push_back(to_string(r.type) + ":" + std::to_string(r.p) + (r.direction == Direction::plus ? ":+" : ":-"));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

cplx to_upper_half(cplx z) { return cplx(0.0, 1.0) * (1.0 + z) / (1.0 - z); }

// Rotation of the peripheral word (or its inverse) whose element fixes the
// given lift of the cusp.
Word parabolic_at(const FiniteTypeSurface& s, const Word& peripheral, BoundaryPoint point) {
  for (const Word& base : {peripheral, inverse(peripheral)}) {
    Word r = base;
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (s.element(r).apply(point).distance(point) < 1e-9) return r;
      std::rotate(r.begin(), r.begin() + 1, r.end());
    }
  }
  throw Error(ErrorKind::precondition, "no peripheral rotation fixes the cusp lift");
}

}  // namespace

CuspCrown cusp_crown(const FiniteTypeSurface& s, const std::vector<Leaf>& leaves, int cusp) {
  const auto it = std::find_if(s.cusp_collars.begin(), s.cusp_collars.end(),
                               [&](const CuspCollar& c) { return c.cusp == cusp; });
  if (it == s.cusp_collars.end()) throw Error(ErrorKind::precondition, "unknown cusp index");
  const CuspCollar& collar = *it;
  CuspCrown crown;
  crown.cusp = cusp;
  Word par = parabolic_at(s, s.peripheral[static_cast<std::size_t>(cusp)], collar.point);
  const IsometryMap& nz = collar.normalizer;
  auto coord = [&](cplx z) { return to_upper_half(nz.apply_raw(z)); };
  double shift = (coord(s.element(par).apply_raw(0.0)) - coord(0.0)).real();
  if (shift < 0) {
    par = inverse(par);
    shift = -shift;
  }
  crown.parabolic = par;
  crown.period = shift;

  // Tiles around the cusp lift: prefixes of par^2 and par^-2, one layer out.
  std::vector<Word> tiles{{}};
  for (const Word& base : {power(par, 2), power(inverse(par), 2)}) {
    Word pre;
    for (Letter l : base) {
      pre.push_back(l);
      tiles.push_back(free_reduce(pre));
    }
  }
  const std::size_t core = tiles.size();
  for (std::size_t i = 0; i < core; ++i)
    for (int g = 1; g <= s.group.rank(); ++g)
      for (Letter l : {g, -g}) tiles.push_back(free_reduce(concat(tiles[i], Word{l})));
  std::sort(tiles.begin(), tiles.end(), word_less);
  tiles.erase(std::unique(tiles.begin(), tiles.end()), tiles.end());

  std::vector<std::pair<double, double>> iv;
  for (const Word& t : tiles) {
    const IsometryMap h = s.element(t);
    for (const Leaf& l : leaves) {
      const Geodesic g = l.geodesic.image(h);
      const cplx p = nz.apply(g.from()).to_complex(), q = nz.apply(g.to()).to_complex();
      if (std::abs(p - 1.0) < 1e-12 || std::abs(q - 1.0) < 1e-12) continue;
      double x1 = to_upper_half(p).real(), x2 = to_upper_half(q).real();
      if (x1 > x2) std::swap(x1, x2);
      const double k = std::floor(x1 / shift);
      for (int c = -1; c <= 1; ++c) iv.emplace_back(x1 - (k + c) * shift, x2 - (k + c) * shift);
    }
  }
  const double tol = 1e-7 * shift;
  std::sort(iv.begin(), iv.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  });
  std::vector<std::pair<double, double>> outer;
  double reach = -std::numeric_limits<double>::infinity();
  for (const auto& x : iv) {
    if (x.second <= reach + tol) continue;
    if (!outer.empty() && std::abs(x.first - outer.back().first) <= tol) outer.back() = x;  // same start, wider
    else outer.push_back(x);
    reach = x.second;
  }
  crown.closed = true;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const auto& x = outer[i];
    if (x.first < 0.0 || x.first >= shift) continue;
    crown.sides.push_back(x);
    if (i + 1 >= outer.size() || std::abs(outer[i + 1].first - x.second) > tol) crown.closed = false;
    crown.vertices.push_back(x.second >= shift ? x.second - shift : x.second);
  }
  std::sort(crown.vertices.begin(), crown.vertices.end());
  if (crown.sides.empty()) crown.closed = false;
  return crown;
}

TransversalityReport transversality_and_census(const FiniteTypeSurface& s, const LaminationApprox& plus,
                                               const LaminationApprox& minus, const CurveSystem& gamma) {
  TransversalityReport rep;
  if (plus.direction == minus.direction) rep.notes.push_back("both laminations have the same direction");

  // Every leaf of one lamination must cross some translate of a leaf of the other.
  auto crosses_all = [&](const std::vector<Leaf>& xs, const std::vector<Leaf>& ys) {
    std::vector<Geodesic> pool;
    pool.reserve(ys.size() * (2 * static_cast<std::size_t>(s.group.rank()) + 1));
    std::vector<IsometryMap> near{IsometryMap::identity()};
    for (int g = 1; g <= s.group.rank(); ++g) {
      near.push_back(s.letter_map(g));
      near.push_back(s.letter_map(-g));
    }
    for (const IsometryMap& h : near)
      for (const Leaf& y : ys) pool.push_back(y.geodesic.image(h));
    return !xs.empty() && std::all_of(xs.begin(), xs.end(), [&](const Leaf& x) {
      return std::any_of(pool.begin(), pool.end(),
                         [&](const Geodesic& g) { return endpoint_linking(x.geodesic, g) == Linking::linked; });
    });
  };
  rep.transverse = crosses_all(plus.leaves, minus.leaves) && crosses_all(minus.leaves, plus.leaves);

  const int cusps = s.signature.cusps;
  const int closed_chi = 2 - 2 * s.signature.genus;
  for (const LaminationApprox* lam : {&plus, &minus}) {
    // Index count: each region contributes 1 - p/2 (cusp regions counted with
    // the puncture filled in); the total is the Euler characteristic.
    double remaining = closed_chi;
    for (int c = 0; c < cusps; ++c) {
      const CuspCrown cr = cusp_crown(s, lam->leaves, c);
      CrownRegion r;
      r.type = RegionType::punctured_disk;
      r.p = static_cast<int>(cr.vertices.size());
      r.nucleus = NucleusType::punctured_disk;
      r.direction = lam->direction;
      r.cusp = c;
      r.resolved = cr.closed;
      if (!cr.closed) rep.notes.push_back("crown around cusp " + std::to_string(c) + " did not close");
      remaining -= 1.0 - 0.5 * r.p;
      rep.census.regions.push_back(r);
    }
    for (const CurveClass& g : gamma.curves) {
      CrownRegion r;
      r.type = RegionType::crown_with_rim;
      r.rim = g.word;
      r.nucleus = NucleusType::annulus_with_rim;
      r.direction = lam->direction;
      r.resolved = false;
      rep.census.regions.push_back(r);
    }
    if (remaining < -1e-9) {
      // Ideal polygons away from the cusps; only their total index is known.
      CrownRegion r;
      r.type = RegionType::disk_with_p_ideal_vertices;
      r.p = static_cast<int>(std::lround(2.0 - 2.0 * remaining));
      r.nucleus = NucleusType::disk;
      r.direction = lam->direction;
      r.resolved = false;
      rep.census.regions.push_back(r);
      rep.notes.push_back("ideal polygon regions inferred from the index count");
    } else if (remaining > 1e-9) {
      rep.notes.push_back("region census does not account for the Euler characteristic");
    }
  }
  return rep;
}

}  // namespace nt
