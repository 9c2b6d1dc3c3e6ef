#include "nt/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

namespace nt {

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

Json words_json(const FiniteTypeSurface& s, const std::vector<Word>& ws) {
  Json out = Json::array();
  for (const Word& w : ws) out.push_back(s.group.format(w));
  return out;
}

Json words_json(const FiniteTypeSurface& s, const CurveSystem& cs) {
  Json out = Json::array();
  for (const CurveClass& c : cs.curves) out.push_back(s.group.format(c.word));
  return out;
}

std::vector<Word> words_from(const FiniteTypeSurface& s, const Json& j) {
  std::vector<Word> out;
  for (const auto& w : j) out.push_back(s.group.parse(w.get<std::string>()));
  return out;
}

Json signature_json(const Signature& g) {
  return {{"genus", g.genus}, {"boundary", g.boundary}, {"cusps", g.cusps}, {"crosscaps", g.crosscaps}};
}

Signature signature_from(const Json& j) {
  Signature g;
  g.genus = j.at("genus").get<int>();
  g.boundary = j.at("boundary").get<int>();
  g.cusps = j.at("cusps").get<int>();
  g.crosscaps = j.at("crosscaps").get<int>();
  return g;
}

Json optional_number(const std::optional<double>& x) {
  return x ? Json(round_significant(*x)) : Json(nullptr);
}

std::optional<double> optional_number_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

Json geodesic_json(const Geodesic& g) {
  return Json::array({round_significant(g.from().angle()), round_significant(g.to().angle())});
}

// Surface whose generators spell the words of a sub-verdict. Handles are
// classified on the catalog torus; pants verdicts carry no words.
FiniteTypeSurface word_surface(const FiniteTypeSurface& parent, const std::string& name) {
  const std::string tag = "torus1";
  if (name.size() >= tag.size() && name.compare(name.size() - tag.size(), tag.size(), tag) == 0)
    return catalog_surface(tag);
  return parent;
}

}  // namespace

Json budgets_to_json(const Budgets& b) {
  return {{"max_word_length", b.max_word_length},
          {"closed_word_length", b.closed_word_length},
          {"max_period", b.max_period},
          {"depth", b.depth},
          {"max_n", b.max_n},
          {"seed_length", b.seed_length},
          {"window", b.window},
          {"threshold", round_significant(b.threshold)},
          {"max_letters", b.max_letters},
          {"probe_letters", b.probe_letters},
          {"dilatation_letters", b.dilatation_letters},
          {"max_recursion", b.max_recursion}};
}

Budgets budgets_from_json(const Json& j) {
  Budgets b;
  b.max_word_length = j.at("max_word_length").get<int>();
  b.closed_word_length = j.at("closed_word_length").get<int>();
  b.max_period = j.at("max_period").get<int>();
  b.depth = j.at("depth").get<int>();
  b.max_n = j.at("max_n").get<int>();
  b.seed_length = j.at("seed_length").get<int>();
  b.window = j.at("window").get<int>();
  b.threshold = j.at("threshold").get<double>();
  b.max_letters = j.at("max_letters").get<std::size_t>();
  b.probe_letters = j.at("probe_letters").get<std::size_t>();
  b.dilatation_letters = j.at("dilatation_letters").get<std::size_t>();
  b.max_recursion = j.at("max_recursion").get<int>();
  return b;
}

Json to_json(const FiniteTypeSurface& s, const Verdict& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  if (v.order) j["order"] = *v.order;
  if (v.dilatation) j["dilatation"] = round_significant(*v.dilatation);
  if (v.dilatation_error) j["dilatation_error"] = round_significant(*v.dilatation_error);
  j["gamma"] = words_json(s, v.gamma);
  j["components"] = Json::array();
  for (const ComponentReport& c : v.components) {
    Json cj = {{"signature", signature_json(c.signature)},
               {"area", round_significant(c.area)},
               {"return_time", c.return_time},
               {"boundary_curves", words_json(s, c.boundary_curves)}};
    if (c.sub_verdict) cj["sub_verdict"] = to_json(word_surface(s, c.sub_verdict->surface), *c.sub_verdict);
    j["components"].push_back(std::move(cj));
  }
  j["laminations"] = Json::array();
  for (const LaminationSummary& l : v.laminations)
    j["laminations"].push_back({{"direction", l.direction},
                                {"depth", l.depth},
                                {"leaves", l.leaves},
                                {"pruned", l.pruned},
                                {"residual", round_significant(l.residual)},
                                {"slope", optional_number(l.slope)},
                                {"final_word_length", l.final_word_length}});
  j["census"] = v.census;
  j["evidence"] = v.evidence;
  j["budgets"] = budgets_to_json(v.budgets);
  j["surface"] = v.surface;
  j["mapping_class"] = v.mapping_class;
  return j;
}

Verdict verdict_from_json(const FiniteTypeSurface& s, const Json& j) {
  try {
    Verdict v;
    const auto kind = verdict_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorKind::parse, "unknown verdict kind");
    v.kind = *kind;
    if (j.contains("order")) v.order = j.at("order").get<int>();
    v.dilatation = optional_number_from(j, "dilatation");
    v.dilatation_error = optional_number_from(j, "dilatation_error");
    v.gamma = words_from(s, j.at("gamma"));
    for (const auto& cj : j.at("components")) {
      ComponentReport c;
      c.signature = signature_from(cj.at("signature"));
      c.area = cj.at("area").get<double>();
      c.return_time = cj.at("return_time").get<int>();
      c.boundary_curves = words_from(s, cj.at("boundary_curves"));
      if (cj.contains("sub_verdict")) {
        const Json& sj = cj.at("sub_verdict");
        c.sub_verdict = std::make_shared<const Verdict>(
            verdict_from_json(word_surface(s, sj.at("surface").get<std::string>()), sj));
      }
      v.components.push_back(std::move(c));
    }
    for (const auto& lj : j.at("laminations")) {
      LaminationSummary l;
      l.direction = lj.at("direction").get<std::string>();
      l.depth = lj.at("depth").get<int>();
      l.leaves = lj.at("leaves").get<std::size_t>();
      l.pruned = lj.at("pruned").get<std::size_t>();
      l.residual = lj.at("residual").get<double>();
      l.slope = optional_number_from(lj, "slope");
      l.final_word_length = lj.at("final_word_length").get<std::size_t>();
      v.laminations.push_back(std::move(l));
    }
    v.census = j.at("census").get<std::vector<std::string>>();
    v.evidence = j.at("evidence").get<std::vector<std::string>>();
    v.budgets = budgets_from_json(j.at("budgets"));
    v.surface = j.at("surface").get<std::string>();
    v.mapping_class = j.at("mapping_class").get<std::string>();
    return v;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::parse, std::string("verdict JSON: ") + e.what());
  }
}

Json surface_report(const FiniteTypeSurface& s) {
  Json gens = Json::array();
  for (const auto& n : s.group.names()) gens.push_back(n);
  Json j = {{"name", s.name},
            {"signature", signature_json(s.signature)},
            {"euler_characteristic", s.signature.euler_characteristic()},
            {"generators", gens},
            {"relator", s.group.relator() ? Json(s.group.format(*s.group.relator())) : Json(nullptr)},
            {"peripheral", words_json(s, s.peripheral)},
            {"expected_area", round_significant(s.signature.expected_area())}};
  if (!s.fundamental_domain.empty()) {
    const double a = area(s);
    j["area"] = round_significant(a);
    j["area_error"] = round_significant(std::abs(a - s.signature.expected_area()));
  } else {
    j["area"] = nullptr;
  }
  Json aliases = Json::object();
  for (const auto& [name, w] : s.curve_aliases) aliases[name] = s.group.format(w);
  j["curves"] = aliases;
  return j;
}

Json orbit_report(const FiniteTypeSurface& s, const OrbitRecord& orb) {
  Json images = Json::array(), lengths = Json::array();
  for (const Word& w : orb.images) {
    images.push_back(s.group.format(w));
    lengths.push_back(w.size());
  }
  return {{"seed", s.group.format(orb.seed)},
          {"images", images},
          {"lengths", lengths},
          {"period", orb.period ? Json(*orb.period) : Json(nullptr)},
          {"intersection_table", orb.intersection_table},
          {"truncated", orb.truncated}};
}

Json reduction_report(const FiniteTypeSurface& s, const ReductionResult& red) {
  return {{"gamma", words_json(s, red.gamma)},
          {"gamma_prime", words_json(s, red.gamma_prime)},
          {"max_word_length", red.max_word_length},
          {"max_period", red.max_period},
          {"invariant", red.invariant},
          {"notes", red.notes}};
}

Json lamination_report(const FiniteTypeSurface& s, const LaminationApprox& lam) {
  Json leaves = Json::array(), pruned = Json::array(), history = Json::array();
  for (const Leaf& l : lam.leaves) leaves.push_back(geodesic_json(l.geodesic));
  for (const Leaf& l : lam.pruned) pruned.push_back(geodesic_json(l.geodesic));
  for (double r : lam.residual_history) history.push_back(round_significant(r));
  return {{"direction", lam.direction == Direction::plus ? "+" : "-"},
          {"seed", s.group.format(lam.seed)},
          {"depth", lam.depth},
          {"leaves", leaves},
          {"pruned", pruned},
          {"residual", round_significant(lam.hausdorff_residual)},
          {"residual_history", history},
          {"converged", lam.converged},
          {"nonconvergence_warning", lam.nonconvergence_warning},
          {"leaves_unlinked", lam.leaves_unlinked},
          {"no_closed_leaves", lam.no_closed_leaves},
          {"avoids_gamma", lam.avoids_gamma},
          {"slope", optional_number(lam.slope)},
          {"final_word_length", lam.final_word_length}};
}

std::vector<Geodesic> gamma_lifts(const FiniteTypeSurface& s, const std::vector<Word>& gamma, double reach) {
  std::vector<Geodesic> out;
  if (!s.is_geometric() || gamma.empty()) return out;
  const auto ball = element_ball(s, reach);
  std::map<std::pair<long, long>, Geodesic> seen;
  for (const Word& g : gamma) {
    const Geodesic axis = element_axis(s, g);
    for (const auto& h : ball) {
      const Geodesic l = axis.image(h.map);
      const auto [x, y] = l.canonical();
      // Arcs shorter than a pixel are dropped.
      if (std::abs(l.from().to_complex() - l.to().to_complex()) < 2e-3) continue;
      seen.emplace(std::pair{std::lround(x * 1e6), std::lround(y * 1e6)}, l);
    }
  }
  for (const auto& [key, l] : seen) out.push_back(l);
  return out;
}

namespace {

constexpr double kCentre = 500.0;
constexpr double kRadius = 480.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string point(cplx z) { return num(kCentre + kRadius * z.real()) + " " + num(kCentre - kRadius * z.imag()); }

// Arc of the circle orthogonal to the boundary through both endpoints. With
// q counterclockwise from p by less than pi, the inner arc runs clockwise in
// the disk, which is sweep flag 0 once the y axis points down.
std::string arc_path(const Geodesic& g) {
  double a = g.from().angle(), b = g.to().angle();
  double gap = std::remainder(b - a, kTwoPi);
  if (gap < 0) {
    std::swap(a, b);
    gap = -gap;
  }
  const cplx p = std::polar(1.0, a), q = std::polar(1.0, b);
  if (std::abs(gap - kPi) < 1e-9) return "M " + point(p) + " L " + point(q);
  const double r = kRadius * std::tan(0.5 * gap);
  return "M " + point(p) + " A " + num(r) + " " + num(r) + " 0 0 0 " + point(q);
}

std::vector<Geodesic> sorted(std::vector<Geodesic> gs) {
  std::sort(gs.begin(), gs.end(), [](const Geodesic& x, const Geodesic& y) { return x.canonical() < y.canonical(); });
  return gs;
}

}  // namespace

std::string render_disk_svg(const DiskPicture& pic) {
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
  out += "<style>\n"
         ".disk{fill:none;stroke:#000;stroke-width:2}\n"
         ".lam-plus{fill:none;stroke:#c0392b;stroke-width:0.8}\n"
         ".lam-minus{fill:none;stroke:#2471a3;stroke-width:0.8}\n"
         ".gamma{fill:none;stroke:#1e8449;stroke-width:2}\n"
         ".fix-a{fill:#000}\n"
         ".fix-b{fill:#fff;stroke:#000;stroke-width:1.5}\n"
         "text{font-family:sans-serif;font-size:16px}\n"
         "</style>\n";
  out += "<circle class=\"disk\" cx=\"500\" cy=\"500\" r=\"480\"/>\n";
  const auto group = [&](const char* cls, const std::vector<Geodesic>& gs) {
    if (gs.empty()) return;
    out += std::string("<g class=\"") + cls + "\">\n";
    for (const Geodesic& g : sorted(gs)) out += "<path d=\"" + arc_path(g) + "\"/>\n";
    out += "</g>\n";
  };
  group("lam-plus", pic.plus);
  group("lam-minus", pic.minus);
  group("gamma", pic.gamma);
  std::vector<BoundaryFixedPoint> fps = pic.fixed_points;
  std::sort(fps.begin(), fps.end(), [](const auto& x, const auto& y) { return x.position < y.position; });
  int na = 0, nb = 0;
  for (const auto& fp : fps) {
    const cplx z = std::polar(1.0, fp.position);
    const bool a = fp.type == FixedPointType::contracting;
    const std::string label = a ? "a" + std::to_string(na++) : "b" + std::to_string(nb++);
    out += std::string("<circle class=\"") + (a ? "fix-a" : "fix-b") + "\" cx=\"" +
           num(kCentre + kRadius * z.real()) + "\" cy=\"" + num(kCentre - kRadius * z.imag()) + "\" r=\"5\"/>\n";
    const cplx t = 0.95 * z;
    out += "<text x=\"" + num(kCentre + kRadius * t.real()) + "\" y=\"" + num(kCentre - kRadius * t.imag()) +
           "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" + label + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorKind::io, "cannot write " + path);
    os << content;
    os.close();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorKind::io, "write failed for " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::io, "cannot write " + path);
  }
}

}  // namespace nt
