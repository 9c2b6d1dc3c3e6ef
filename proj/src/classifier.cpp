#include "nt/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace nt {

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::periodic: return "Periodic";
    case VerdictKind::pseudo_anosov: return "PseudoAnosov";
    case VerdictKind::reducible: return "Reducible";
    case VerdictKind::indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

std::optional<VerdictKind> verdict_kind_from_string(const std::string& s) {
  for (VerdictKind k : {VerdictKind::periodic, VerdictKind::pseudo_anosov, VerdictKind::reducible,
                        VerdictKind::indeterminate})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

namespace {

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string words_text(const FiniteTypeSurface& s, const CurveSystem& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.curves.size(); ++i) out += (i ? ", " : "") + s.group.format(c.curves[i].word);
  return out + "}";
}

// Rank over Q of a set of integer vectors.
int rational_rank(std::vector<std::vector<double>> rows) {
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && std::abs(rows[piv][c]) < 1e-9) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const auto& p = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || std::abs(rows[r][c]) < 1e-9) continue;
      const double m = rows[r][c] / p[c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= m * p[k];
    }
    ++rank;
  }
  return rank;
}

Verdict leaf_verdict(VerdictKind kind, std::optional<int> order, std::vector<std::string> evidence) {
  Verdict v;
  v.kind = kind;
  v.order = order;
  v.evidence = std::move(evidence);
  return v;
}

// Image of cusp c under f, with the orientation of its peripheral word.
std::pair<int, bool> cusp_image(const FiniteTypeSurface& s, const MappingClass& f, int c) {
  const Word img = s.group.conjugacy_normal_form(apply(s, f, s.peripheral[static_cast<std::size_t>(c)]));
  for (std::size_t k = 0; k < s.peripheral.size(); ++k) {
    if (img == s.group.conjugacy_normal_form(s.peripheral[k])) return {static_cast<int>(k), true};
    if (img == s.group.conjugacy_normal_form(inverse(s.peripheral[k]))) return {static_cast<int>(k), false};
  }
  throw Error(ErrorKind::relator_violation, "map does not permute the cusps");
}

// Order of the permutation induced on boundary sides of the cut curves and on
// cusps; side (i, +) is the left of curve i as stored.
int boundary_permutation_order(const FiniteTypeSurface& s, const MappingClass& f, const CurveSystem& gamma) {
  const std::size_t n = gamma.curves.size();
  std::vector<int> perm;
  for (std::size_t i = 0; i < n; ++i) {
    const Word img = tighten_oriented(s, f, gamma.curves[i].word);
    int target = -1;
    bool same = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (img == s.group.conjugacy_normal_form(gamma.curves[j].word)) target = static_cast<int>(j);
      if (img == s.group.conjugacy_normal_form(inverse(gamma.curves[j].word))) {
        target = static_cast<int>(j);
        same = false;
      }
    }
    if (target < 0) throw Error(ErrorKind::precondition, "reduction system is not invariant");
    if (f.orientation == Orientation::reversing) same = !same;
    perm.push_back(2 * target + (same ? 0 : 1));
    perm.push_back(2 * target + (same ? 1 : 0));
  }
  for (int c = 0; c < s.signature.cusps; ++c) perm.push_back(static_cast<int>(2 * n) + cusp_image(s, f, c).first);
  int order = 1;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = 1;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

// Restriction of a genus-2 map to handle k (generators a_k, b_k) as a map of
// the punctured torus, when it preserves the handle.
std::optional<MappingClass> handle_restriction(const FiniteTypeSurface& s, const MappingClass& f, int k,
                                               const FiniteTypeSurface& torus) {
  const Letter a = 2 * k + 1, b = 2 * k + 2;
  auto restrict_images = [&](const std::vector<Word>& images) -> std::optional<std::vector<Word>> {
    MappingClass by;
    by.images = images;
    const Word d{a, b, -a, -b};
    const Word fd = s.group.reduce(apply(s, by, d));
    const CyclicReduction cr = cyclic_reduce(fd);
    Word rot = d, lead;
    for (std::size_t r = 0; r < 4; ++r) {
      if (rot == cr.core) {
        const Word c = s.group.reduce(concat(cr.conjugator, inverse(lead)));
        std::vector<Word> out;
        for (Letter x : {a, b}) {
          const Word w = s.group.reduce(concat(concat(inverse(c), apply(s, by, Word{x})), c));
          Word t;
          for (Letter l : w) {
            if (generator_index(l) / 2 != k) return std::nullopt;
            const int g = generator_index(l) % 2 + 1;
            t.push_back(l > 0 ? g : -g);
          }
          out.push_back(free_reduce(t));
        }
        return out;
      }
      lead.push_back(rot.front());
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    }
    return std::nullopt;
  };
  const auto fw = restrict_images(f.images);
  const auto bw = restrict_images(f.inverse_images);
  if (!fw || !bw) return std::nullopt;
  MappingClass m;
  m.images = *fw;
  m.inverse_images = *bw;
  m.orientation = f.orientation;
  m.word_record = f.word_record + "|handle" + std::to_string(k + 1);
  try {
    verify_automorphism(torus, m);
  } catch (const Error&) {
    return std::nullopt;
  }
  return m;
}

}  // namespace

FillingSystem choose_filling_system(const FiniteTypeSurface& s, int check_length) {
  FillingSystem fs;
  const std::vector<CurveClass> shortlist = enumerate_simple_closed_geodesics(s, 2);
  for (const CurveClass& c : shortlist) {
    const bool free = std::all_of(fs.sigma.curves.begin(), fs.sigma.curves.end(), [&](const CurveClass& x) {
      return geometric_intersection(s, x.word, c.word) == 0;
    });
    if (free) fs.sigma.insert(c);
  }
  fs.sigma.disjoint = true;
  // Dual twist: for each member, the first short curve crossing it.
  MappingClass dual = identity_class(s);
  for (const CurveClass& x : fs.sigma.curves)
    for (const CurveClass& c : shortlist)
      if (geometric_intersection(s, x.word, c.word) > 0) {
        dual = compose(s, dehn_twist(s, c.word), dual);
        break;
      }
  for (const CurveClass& x : fs.sigma.curves) fs.sigma_prime.insert(make_curve(s, tighten(s, dual, x.word)));
  fs.sigma_prime.disjoint = true;
  const std::vector<CurveClass> probe = enumerate_simple_closed_geodesics(s, check_length);
  auto meets = [&](const CurveClass& c) {
    for (const CurveSystem* sys : {&fs.sigma, &fs.sigma_prime})
      for (const CurveClass& x : sys->curves)
        if (geometric_intersection(s, x.word, c.word) > 0) return true;
    return false;
  };
  fs.fills = !fs.sigma.empty() && std::all_of(probe.begin(), probe.end(), meets);
  for (const CurveClass& x : fs.sigma.curves)
    for (const CurveClass& y : fs.sigma_prime.curves) fs.crossings += geometric_intersection(s, x.word, y.word);
  return fs;
}

std::optional<int> periodic_order(const FiniteTypeSurface& s, const MappingClass& f, const FillingSystem& fs,
                                  int max_n) {
  if (!fs.fills) throw Error(ErrorKind::precondition, "curve system does not fill");
  std::vector<Word> targets;
  for (const CurveSystem* sys : {&fs.sigma, &fs.sigma_prime})
    for (const CurveClass& c : sys->curves) targets.push_back(c.word);
  MappingClass g = identity_class(s);
  for (int n = 1; n <= max_n; ++n) {
    g = compose(s, f, g);
    if (g.orientation != Orientation::preserving) continue;
    const bool fixed = std::all_of(targets.begin(), targets.end(), [&](const Word& w) {
      return tighten_oriented(s, g, w) == s.group.conjugacy_normal_form(w);
    });
    if (fixed) return n;
  }
  return std::nullopt;
}

std::vector<ComponentReport> component_split(const FiniteTypeSurface& s, const CurveSystem& gamma) {
  const Signature sig = s.signature;
  auto report = [](Signature g, std::vector<Word> bounds) {
    ComponentReport r;
    r.signature = g;
    r.area = g.expected_area();
    r.boundary_curves = std::move(bounds);
    return r;
  };
  if (gamma.empty()) return {report(sig, {})};
  const auto& cs = gamma.curves;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (geometric_intersection(s, cs[i].word, cs[j].word) != 0)
        throw Error(ErrorKind::precondition, "cut curves intersect");
  std::vector<std::vector<double>> rows;
  std::vector<Word> all;
  for (const CurveClass& c : cs) {
    const std::vector<int> h = s.homology(c.word);
    rows.emplace_back(h.begin(), h.end());
    all.push_back(c.word);
  }
  const int n = static_cast<int>(cs.size());
  const int rank = rational_rank(rows);
  const int pieces = 1 + n - rank;
  if (pieces == 1) return {report({sig.genus - n, sig.boundary + 2 * n, sig.cusps, sig.crosscaps}, all)};
  if (n == 1 && sig.boundary == 0) {
    // A single separating curve: the split is forced on the catalog surfaces.
    if (sig.genus == 2 && sig.cusps == 0)
      return {report({1, 1, 0, 0}, all), report({1, 1, 0, 0}, all)};
    if (sig.genus == 0 && sig.cusps == 4)
      return {report({0, 1, 2, 0}, all), report({0, 1, 2, 0}, all)};
  }
  throw Error(ErrorKind::unsupported, "cut pieces are not determined by the curve classes");
}

namespace {

Verdict classify_at(const FiniteTypeSurface& s, const MappingClass& f, const Budgets& b, int level);

void reducible_branch(const FiniteTypeSurface& s, const MappingClass& f, const Budgets& b, int level,
                      const ReductionResult& red, Verdict& v) {
  v.kind = VerdictKind::reducible;
  for (const CurveClass& c : red.gamma.curves) v.gamma.push_back(c.word);
  v.evidence.push_back("reduction system " + words_text(s, red.gamma) + " within word length " +
                       std::to_string(red.max_word_length) + " and period " + std::to_string(b.max_period));
  v.evidence.push_back("reduction system is invariant under the map");
  try {
    v.components = component_split(s, red.gamma);
  } catch (const Error& e) {
    v.evidence.push_back(std::string("component split not computed: ") + e.what());
    return;
  }
  const bool handles = s.signature.genus == 2 && s.signature.cusps == 0 && v.components.size() == 2 &&
                       red.gamma.size() == 1 && red.gamma.curves[0].word == s.group.unoriented_normal_form(
                                                                               Word{1, 2, -1, -2});
  for (std::size_t k = 0; k < v.components.size(); ++k) {
    ComponentReport& comp = v.components[k];
    const Signature& g = comp.signature;
    if (level + 1 > b.max_recursion) {
      comp.sub_verdict = std::make_shared<Verdict>(
          leaf_verdict(VerdictKind::indeterminate, std::nullopt, {"component recursion depth reached"}));
      continue;
    }
    if (g.genus == 0 && g.boundary + g.cusps == 3) {
      // Pants: the mapping class group is the permutation group of the boundary.
      const int order = boundary_permutation_order(s, f, red.gamma);
      comp.return_time = 1;
      comp.sub_verdict = std::make_shared<Verdict>(leaf_verdict(
          VerdictKind::periodic, order,
          {"pair of pants: induced map is determined by its boundary permutation, of order " +
           std::to_string(order)}));
      continue;
    }
    if (handles) {
      const FiniteTypeSurface torus = catalog_surface("torus1");
      auto m = handle_restriction(s, f, static_cast<int>(k), torus);
      int ret = 1;
      if (!m) {
        const MappingClass f2 = compose(s, f, f);
        m = handle_restriction(s, f2, static_cast<int>(k), torus);
        ret = 2;
      }
      comp.return_time = ret;
      if (m) {
        Verdict sub = classify_at(torus, *m, b, level + 1);
        sub.surface = "handle " + std::to_string(k + 1) + " as torus1";
        comp.sub_verdict = std::make_shared<Verdict>(std::move(sub));
        continue;
      }
    }
    comp.sub_verdict = std::make_shared<Verdict>(
        leaf_verdict(VerdictKind::indeterminate, std::nullopt, {"induced map on this component not computed"}));
  }
}

// Cusp-crown fixed-point check for the lift fixing a cusp of the plus lamination.
bool crown_spot_check(const FiniteTypeSurface& s, const MappingClass& f, const LaminationApprox& plus,
                      std::vector<std::string>& evidence) {
  if (s.signature.cusps == 0) {
    evidence.push_back("boundary fixed points: no cusp lift to check on a closed surface");
    return true;
  }
  const CuspCrown crown = cusp_crown(s, plus.leaves, 0);
  if (!crown.closed) {
    evidence.push_back("boundary fixed points: crown around cusp 0 not closed");
    return false;
  }
  for (int p = 1; p <= 2; ++p) {
    const auto a = cusp_anchor(s, f, p, crown);
    if (!a) continue;
    for (int k : {0, -1, 1}) {
      const Word anchor = s.group.reduce(concat(power(crown.parabolic, k), *a));
      const BoundaryFixedPointReport r = cusp_fixed_points(s, f, p, anchor, crown, 5);
      std::size_t contracting = 0;
      for (const auto& x : r.fixed_points) contracting += x.type == FixedPointType::contracting;
      if (contracting == crown.vertices.size() && r.one_expanding_per_interval && r.alternating) {
        evidence.push_back("boundary fixed points: lift of f^" + std::to_string(p) + " fixing cusp 0 has " +
                           std::to_string(contracting) +
                           " contracting points at crown vertices, one expanding point per interval");
        return true;
      }
    }
  }
  evidence.push_back("boundary fixed points: no lift fixing cusp 0 matched the crown vertices");
  return false;
}

LaminationSummary summarize(const LaminationApprox& l) {
  LaminationSummary s;
  s.direction = l.direction == Direction::plus ? "+" : "-";
  s.depth = l.depth;
  s.leaves = l.leaves.size();
  s.pruned = l.pruned.size();
  s.residual = l.hausdorff_residual;
  s.slope = l.slope;
  s.final_word_length = l.final_word_length;
  return s;
}

void pseudo_anosov_branch(const FiniteTypeSurface& s, const MappingClass& f, const Budgets& b, const Word& seed,
                          Verdict& v) {
  LaminationOptions opt;
  opt.depth = b.depth;
  opt.window = b.window;
  opt.threshold = b.threshold;
  opt.max_letters = b.max_letters;
  opt.stop_on_convergence = true;
  bool ok = true;
  try {
    const LaminationApprox plus = lamination_approx(s, f, seed, Direction::plus, opt);
    const LaminationApprox minus = lamination_approx(s, f, seed, Direction::minus, opt);
    v.laminations = {summarize(plus), summarize(minus)};
    for (const LaminationApprox* l : {&plus, &minus}) {
      const std::string name = l->direction == Direction::plus ? "lambda+" : "lambda-";
      v.evidence.push_back(name + ": " + std::to_string(l->leaves.size()) + " leaves at depth " +
                           std::to_string(l->depth) + ", residual " + fmt(l->hausdorff_residual));
      if (!l->converged) {
        v.evidence.push_back(name + " did not converge below " + fmt(b.threshold));
        ok = false;
      }
      if (!l->leaves_unlinked) {
        v.evidence.push_back(name + " has crossing leaves");
        ok = false;
      }
    }
    const TransversalityReport tr = transversality_and_census(s, plus, minus, {});
    v.census = tr.census.type_multiset();
    v.evidence.push_back(std::string("laminations ") + (tr.transverse ? "transverse" : "not transverse"));
    for (const std::string& n : tr.notes) v.evidence.push_back("census: " + n);
    ok = ok && tr.transverse;
    ok = crown_spot_check(s, f, plus, v.evidence) && ok;
  } catch (const Error& e) {
    v.evidence.push_back(std::string("lamination construction failed: ") + e.what());
    ok = false;
  }
  try {
    const OrbitRecord orb = orbit(s, f, seed, b.depth, b.dilatation_letters, true);
    const DilatationEstimate d = dilatation_estimate(s, orb, seed);
    v.dilatation = d.value;
    v.dilatation_error = d.error;
    v.evidence.push_back("dilatation " + fmt(d.value, 9) + " from " + std::to_string(d.table.size()) +
                         " intersection numbers" + (orb.truncated ? " (orbit stopped at the letter cap)" : ""));
    if (!d.hyperbolic) {
      v.evidence.push_back("intersection growth is not exponential");
      ok = false;
    }
  } catch (const Error& e) {
    v.evidence.push_back(std::string("dilatation estimate failed: ") + e.what());
    ok = false;
  }
  v.kind = ok ? VerdictKind::pseudo_anosov : VerdictKind::indeterminate;
}

Verdict classify_at(const FiniteTypeSurface& s, const MappingClass& f, const Budgets& b, int level) {
  Verdict v;
  v.budgets = b;
  v.surface = s.name;
  v.mapping_class = f.word_record;
  if (!s.is_geometric()) {
    v.evidence.push_back("surface has no Fuchsian group; classification unsupported");
    return v;
  }
  // Simplicity tests on closed surfaces walk group balls; keep curves short.
  const int length = s.is_free() ? b.max_word_length : std::min(b.max_word_length, b.closed_word_length);
  if (length < b.max_word_length)
    v.evidence.push_back("closed surface: curve enumeration capped at word length " + std::to_string(length));
  const ReductionResult red = reduction_system(s, f, length, b.max_period);
  if (!red.gamma.empty()) {
    if (!red.invariant) {
      v.evidence.push_back("isolated periodic curves " + words_text(s, red.gamma) + " are not invariant");
      return v;
    }
    reducible_branch(s, f, b, level, red, v);
    return v;
  }
  v.evidence.push_back("reduction system empty within word length " + std::to_string(red.max_word_length) +
                       " and period " + std::to_string(b.max_period));

  std::optional<Word> aperiodic;
  const std::vector<CurveClass> seeds = enumerate_simple_closed_geodesics(s, b.seed_length);
  for (const CurveClass& c : seeds) {
    const OrbitRecord rec = orbit(s, f, c.word, b.max_n, b.probe_letters, false);
    if (!rec.period) {
      aperiodic = c.word;
      v.evidence.push_back("seed " + s.group.format(c.word) + " has no period within " +
                           std::to_string(rec.images.size() - 1) + " iterations" +
                           (rec.truncated ? " (images outgrew " + std::to_string(b.probe_letters) + " letters)" : ""));
      break;
    }
  }
  if (!aperiodic) {
    v.evidence.push_back("all " + std::to_string(seeds.size()) + " seeds up to length " +
                         std::to_string(b.seed_length) + " are periodic");
    const FillingSystem fs = choose_filling_system(s);
    if (!fs.fills) {
      v.evidence.push_back("no filling system found for the order certificate");
      return v;
    }
    const auto n = periodic_order(s, f, fs, b.max_n);
    if (!n) {
      v.evidence.push_back("filling system " + words_text(s, fs.sigma) + " + " + words_text(s, fs.sigma_prime) +
                           " not fixed by any power up to " + std::to_string(b.max_n));
      return v;
    }
    v.kind = VerdictKind::periodic;
    v.order = *n;
    v.evidence.push_back("f^" + std::to_string(*n) + " fixes the oriented filling system " +
                         words_text(s, fs.sigma) + " + " + words_text(s, fs.sigma_prime));
    return v;
  }
  pseudo_anosov_branch(s, f, b, *aperiodic, v);
  return v;
}

}  // namespace

Verdict classify(const FiniteTypeSurface& surface, const MappingClass& f, const Budgets& budgets) {
  if (budgets.max_word_length < 1 || budgets.closed_word_length < 1 || budgets.max_period < 1 || budgets.depth < 2 ||
      budgets.max_n < 1 || budgets.seed_length < 1 || budgets.window < 1 || !(budgets.threshold > 0.0))
    throw Error(ErrorKind::precondition, "budgets must be positive");
  return classify_at(surface, f, budgets, 0);
}

}  // namespace nt
