#include "nt/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nt/report.hpp"

namespace nt {

FiniteTypeSurface load_surface(const std::string& spec) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_regular_file(spec, ec)) {
    std::ifstream is(spec);
    if (!is) throw Error(ErrorKind::io, "cannot read " + spec);
    std::ostringstream text;
    text << is.rdbuf();
    return surface_from_spec(parse_surface_spec(text.str()));
  }
  for (const char* name : {"torus1", "sphere3", "sphere4", "genus2"})
    if (spec == name) return catalog_surface(spec);
  throw Error(ErrorKind::io, "no surface spec file '" + spec + "'");
}

namespace {

Word default_seed(const FiniteTypeSurface& s, const RunConfig& cfg) {
  if (cfg.seed_curve) return resolve_curve(s, *cfg.seed_curve);
  return Word{1};
}

// First short simple curve whose orbit is not periodic within the probe budget.
std::optional<Word> aperiodic_seed(const FiniteTypeSurface& s, const MappingClass& f, const RunConfig& cfg) {
  if (cfg.seed_curve) return resolve_curve(s, *cfg.seed_curve);
  const Budgets& b = cfg.budgets;
  for (const CurveClass& c : enumerate_simple_closed_geodesics(s, b.seed_length))
    if (!orbit(s, f, c.word, b.max_n, b.probe_letters, false).period) return c.word;
  return std::nullopt;
}

LaminationOptions lamination_options(const Budgets& b) {
  LaminationOptions op;
  op.depth = b.depth;
  op.window = b.window;
  op.threshold = b.threshold;
  op.max_letters = b.max_letters;
  op.stop_on_convergence = true;
  return op;
}

std::vector<Geodesic> geodesics(const LaminationApprox& lam) {
  std::vector<Geodesic> out;
  for (const Leaf& l : lam.leaves) out.push_back(l.geodesic);
  return out;
}

// Fixed points of the lift of f fixing a crown cusp, when the surface has one.
std::vector<BoundaryFixedPoint> crown_fixed_points(const FiniteTypeSurface& s, const MappingClass& f,
                                                   const LaminationApprox& plus) {
  if (s.signature.cusps == 0) return {};
  for (int p = 1; p <= 2; ++p) {
    const CuspCrown crown = cusp_crown(s, plus.leaves, 0);
    const auto anchor = cusp_anchor(s, f, p, crown);
    if (!anchor) continue;
    const BoundaryFixedPointReport rep = boundary_fixed_points(s, f, p, *anchor);
    if (rep.conclusive) return rep.fixed_points;
  }
  return {};
}

int command_surface(const RunConfig& cfg, std::ostream& out) {
  const FiniteTypeSurface s = load_surface(cfg.surface_spec);
  out << dump(surface_report(s));
  return kExitOk;
}

int command_orbit(const RunConfig& cfg, std::ostream& out) {
  const FiniteTypeSurface s = load_surface(cfg.surface_spec);
  const MappingClass f = build_mapping_class(s, cfg.mapping_class);
  const OrbitRecord orb = orbit(s, f, default_seed(s, cfg), cfg.steps, cfg.budgets.max_letters, true);
  Json j = orbit_report(s, orb);
  j["surface"] = s.name;
  j["mapping_class"] = cfg.mapping_class;
  out << dump(j);
  return kExitOk;
}

int command_reduce(const RunConfig& cfg, std::ostream& out) {
  const FiniteTypeSurface s = load_surface(cfg.surface_spec);
  const MappingClass f = build_mapping_class(s, cfg.mapping_class);
  Json j = reduction_report(s, reduction_system(s, f, cfg.budgets.max_word_length, cfg.budgets.max_period));
  j["surface"] = s.name;
  j["mapping_class"] = cfg.mapping_class;
  out << dump(j);
  return kExitOk;
}

int command_classify(const RunConfig& cfg, std::ostream& out) {
  const FiniteTypeSurface s = load_surface(cfg.surface_spec);
  const MappingClass f = build_mapping_class(s, cfg.mapping_class);
  Verdict v = classify(s, f, cfg.budgets);
  v.mapping_class = cfg.mapping_class;
  const std::string text = dump(to_json(s, v));
  if (cfg.out_path) write_file(*cfg.out_path, text);
  out << text;
  return v.kind == VerdictKind::indeterminate ? kExitIndeterminate : kExitOk;
}

int command_laminations(const RunConfig& cfg, std::ostream& out) {
  if (cfg.direction != "+" && cfg.direction != "-")
    throw Error(ErrorKind::parse, "direction must be + or -");
  const FiniteTypeSurface s = load_surface(cfg.surface_spec);
  const MappingClass f = build_mapping_class(s, cfg.mapping_class);
  const auto seed = aperiodic_seed(s, f, cfg);
  if (!seed) throw Error(ErrorKind::precondition, "every probed seed curve is periodic; no lamination");
  const LaminationApprox lam = lamination_approx(s, f, *seed, cfg.direction == "+" ? Direction::plus : Direction::minus,
                                                 lamination_options(cfg.budgets));
  Json j = lamination_report(s, lam);
  j["surface"] = s.name;
  j["mapping_class"] = cfg.mapping_class;
  out << dump(j);
  return lam.converged ? kExitOk : kExitIndeterminate;
}

int command_render(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.out_path) throw Error(ErrorKind::parse, "render needs --out");
  const FiniteTypeSurface s = load_surface(cfg.surface_spec);
  const MappingClass f = build_mapping_class(s, cfg.mapping_class);
  const Verdict v = classify(s, f, cfg.budgets);
  DiskPicture pic;
  if (v.kind == VerdictKind::pseudo_anosov) {
    if (const auto seed = aperiodic_seed(s, f, cfg)) {
      const LaminationOptions op = lamination_options(cfg.budgets);
      const LaminationApprox plus = lamination_approx(s, f, *seed, Direction::plus, op);
      const LaminationApprox minus = lamination_approx(s, f, *seed, Direction::minus, op);
      pic.plus = geodesics(plus);
      pic.minus = geodesics(minus);
      pic.fixed_points = crown_fixed_points(s, f, plus);
    }
  }
  pic.gamma = gamma_lifts(s, v.gamma);
  write_file(*cfg.out_path, render_disk_svg(pic));
  const Json j = {{"out", *cfg.out_path},
                  {"kind", to_string(v.kind)},
                  {"surface", s.name},
                  {"mapping_class", cfg.mapping_class},
                  {"plus_leaves", pic.plus.size()},
                  {"minus_leaves", pic.minus.size()},
                  {"gamma_arcs", pic.gamma.size()},
                  {"fixed_points", pic.fixed_points.size()}};
  out << dump(j);
  return v.kind == VerdictKind::indeterminate ? kExitIndeterminate : kExitOk;
}

void add_budgets(CLI::App* sub, Budgets& b) {
  sub->add_option("--max-word-length", b.max_word_length, "Reduction system enumeration length")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-period", b.max_period, "Largest period searched")->check(CLI::PositiveNumber);
  sub->add_option("--depth", b.depth, "Lamination and dilatation depth")->check(CLI::PositiveNumber);
  sub->add_option("--max-n", b.max_n, "Periodic order search bound")->check(CLI::PositiveNumber);
  sub->add_option("--threshold", b.threshold, "Lamination residual threshold")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Nielsen-Thurston classification of surface mapping classes"};
  app.name("ntclass");
  app.require_subcommand(1);

  auto* surface = app.add_subcommand("surface", "Validate a surface spec and report its area");
  surface->add_option("spec", cfg.surface_spec, "Surface spec file or catalog name")->required();

  const auto with_word = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("spec", cfg.surface_spec, "Surface spec file or catalog name")->required();
    sub->add_option("word", cfg.mapping_class, "Twist word such as Ta*Tb^-1")->required();
    add_budgets(sub, cfg.budgets);
    return sub;
  };
  auto* orbit_cmd = with_word("orbit", "Iterate the tightened action on a seed curve");
  orbit_cmd->add_option("--seed-curve", cfg.seed_curve, "Curve alias or word");
  orbit_cmd->add_option("-N,--steps", cfg.steps, "Number of iterates")->check(CLI::NonNegativeNumber);
  auto* reduce_cmd = with_word("reduce", "Compute the reduction system");
  auto* classify_cmd = with_word("classify", "Classify the mapping class");
  classify_cmd->add_option("--out", cfg.out_path, "Also write the verdict JSON here");
  auto* lam_cmd = with_word("laminations", "Approximate an invariant lamination");
  lam_cmd->add_option("--direction", cfg.direction, "+ or -");
  lam_cmd->add_option("--seed-curve", cfg.seed_curve, "Curve alias or word");
  auto* render_cmd = with_word("render", "Draw laminations, reduction curves and fixed points as SVG");
  render_cmd->add_option("--out", cfg.out_path, "SVG output path")->required();
  render_cmd->add_option("--seed-curve", cfg.seed_curve, "Curve alias or word");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (surface->parsed()) return command_surface(cfg, out);
    if (orbit_cmd->parsed()) return command_orbit(cfg, out);
    if (reduce_cmd->parsed()) return command_reduce(cfg, out);
    if (classify_cmd->parsed()) return command_classify(cfg, out);
    if (lam_cmd->parsed()) return command_laminations(cfg, out);
    if (render_cmd->parsed()) return command_render(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(args, out, err);
}

}  // namespace nt
