#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "nt/cli.hpp"
#include "nt/report.hpp"

using namespace nt;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out, err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "nt_report_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream s;
  s << is.rdbuf();
  return s.str();
}

void check_round_trip(const FiniteTypeSurface& s, const Verdict& v) {
  const Json j = to_json(s, v);
  const Json parsed = Json::parse(dump(j));
  const Verdict back = verdict_from_json(s, parsed);
  CHECK(to_json(s, back) == j);
  CHECK(back.kind == v.kind);
  CHECK(back.order == v.order);
  CHECK(back.gamma == v.gamma);
  CHECK(back.components.size() == v.components.size());
}

}  // namespace

TEST_CASE("significant digit rounding") {
  CHECK(round_significant(2.6180339887498949) == 2.61803398875);
  CHECK(round_significant(0.0) == 0.0);
  CHECK(round_significant(-1.234567890123456e-7) == -1.23456789012e-7);
}

TEST_CASE("verdict JSON round trips") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  for (const char* w : {"Ta*Tb^-1", "Ta", "Ta*Tb", ""}) check_round_trip(t, classify(t, build_mapping_class(t, w)));
  const FiniteTypeSurface g = catalog_surface("genus2");
  check_round_trip(g, classify(g, build_mapping_class(g, "Td")));
}

TEST_CASE("verdict JSON fields") {
  const FiniteTypeSurface t = catalog_surface("torus1");
  const Json j = to_json(t, classify(t, build_mapping_class(t, "Ta*Tb^-1")));
  for (const char* key : {"kind", "dilatation", "gamma", "components", "evidence", "budgets"})
    CHECK(j.contains(key));
  CHECK_FALSE(j.contains("order"));
  CHECK(j["kind"] == "PseudoAnosov");
  // Twelve significant digits at most.
  const std::string text = j["dilatation"].dump();
  const std::string digits = std::regex_replace(text, std::regex("[^0-9]"), "");
  CHECK(digits.size() <= 13);
  CHECK_THROWS_AS(verdict_from_json(t, Json::parse(R"({"kind":"Sometimes"})")), Error);
  CHECK_THROWS_AS(verdict_from_json(t, Json::parse(R"({"kind":"Periodic"})")), Error);
}

TEST_CASE("empty picture is the circle only") {
  const std::string svg = render_disk_svg(DiskPicture{});
  CHECK(svg.find("<circle class=\"disk\" cx=\"500\" cy=\"500\" r=\"480\"/>") != std::string::npos);
  CHECK(svg.find("<path") == std::string::npos);
  CHECK(svg.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
}

TEST_CASE("leaves are drawn as arcs orthogonal to the boundary") {
  const Geodesic g(BoundaryPoint(0.3), BoundaryPoint(1.9));
  DiskPicture pic;
  pic.plus = {g};
  const std::string svg = render_disk_svg(pic);
  std::smatch m;
  const std::regex arc(R"(M ([-0-9.]+) ([-0-9.]+) A ([-0-9.]+) [-0-9.]+ 0 0 0 ([-0-9.]+) ([-0-9.]+))");
  REQUIRE(std::regex_search(svg, m, arc));
  const double x1 = std::stod(m[1]), y1 = std::stod(m[2]), r = std::stod(m[3]);
  const double x2 = std::stod(m[4]), y2 = std::stod(m[5]);
  // Both endpoints on the boundary circle.
  CHECK(std::hypot(x1 - 500, y1 - 500) == doctest::Approx(480).epsilon(1e-5));
  CHECK(std::hypot(x2 - 500, y2 - 500) == doctest::Approx(480).epsilon(1e-5));
  // The supporting circle of the geodesic has the same radius.
  const auto circle = g.circle();
  REQUIRE(circle);
  CHECK(r == doctest::Approx(480 * circle->second).epsilon(1e-5));
  // Orthogonality: |centre|^2 = 1 + r^2.
  CHECK(std::norm(circle->first) == doctest::Approx(1 + circle->second * circle->second).epsilon(1e-9));
}

TEST_CASE("fixed points are labelled a_i and b_i") {
  DiskPicture pic;
  pic.fixed_points = {{0.5, FixedPointType::contracting}, {1.5, FixedPointType::expanding},
                      {2.5, FixedPointType::contracting}, {3.5, FixedPointType::expanding}};
  const std::string svg = render_disk_svg(pic);
  for (const char* label : {">a0<", ">a1<", ">b0<", ">b1<"}) CHECK(svg.find(label) != std::string::npos);
}

TEST_CASE("CLI: surface and classify") {
  const CliResult s = cli({"surface", "genus2"});
  CHECK(s.code == kExitOk);
  CHECK(std::abs(Json::parse(s.out)["area"].get<double>() - 4 * kPi) < 1e-6);

  const CliResult c = cli({"classify", "torus1", "Ta*Tb^-1"});
  CHECK(c.code == kExitOk);
  const Json j = Json::parse(c.out);
  CHECK(j["kind"] == "PseudoAnosov");
  CHECK(std::abs(j["dilatation"].get<double>() - 2.618034) < 1e-3);

  const CliResult id = cli({"classify", "torus1", ""});
  CHECK(id.code == kExitOk);
  CHECK(Json::parse(id.out)["order"] == 1);
}

TEST_CASE("CLI: exit codes partition outcomes") {
  CHECK(cli({"classify", "torus1", "Tq"}).code == kExitInput);
  CHECK(cli({"classify", "no_such_file.surf", "Ta"}).code == kExitInput);
  CHECK(cli({"frobnicate"}).code == kExitInput);
  CHECK(cli({}).code == kExitInput);
  CHECK(cli({"laminations", "torus1", "Ta*Tb^-1", "--direction", "x"}).code == kExitInput);
  CHECK(cli({"classify", "torus1", "Ta", "--depth", "0"}).code == kExitInput);
  const CliResult ind = cli({"classify", "torus1", "Ta*Tb^-1", "--depth", "2"});
  CHECK(ind.code == kExitIndeterminate);
  CHECK(Json::parse(ind.out)["kind"] == "Indeterminate");
  const CliResult err = cli({"classify", "torus1", "Tq"});
  CHECK(err.out.empty());
  CHECK_FALSE(err.err.empty());
}

TEST_CASE("CLI: subcommands emit JSON") {
  const Json orb = Json::parse(cli({"orbit", "torus1", "Ta*Tb^-1", "-N", "4"}).out);
  CHECK(orb["lengths"] == Json::array({1, 3, 8, 21, 55}));
  const Json red = Json::parse(cli({"reduce", "torus1", "Ta"}).out);
  CHECK(red["gamma"] == Json::array({"a"}));
  const CliResult lam = cli({"laminations", "torus1", "Ta*Tb^-1", "--direction", "-"});
  CHECK(lam.code == kExitOk);
  const Json l = Json::parse(lam.out);
  CHECK(l["direction"] == "-");
  CHECK(l["converged"] == true);
}

TEST_CASE("CLI: render writes deterministic SVG and nothing on failure") {
  const fs::path dir = scratch_dir();
  const fs::path a = dir / "a.svg", b = dir / "b.svg", bad = dir / "bad.svg";
  fs::remove(a);
  fs::remove(b);
  fs::remove(bad);
  const CliResult r = cli({"render", "torus1", "Ta*Tb^-1", "--out", a.string()});
  CHECK(r.code == kExitOk);
  CHECK(cli({"render", "torus1", "Ta*Tb^-1", "--out", b.string()}).code == kExitOk);
  CHECK(slurp(a) == slurp(b));
  const Json j = Json::parse(r.out);
  CHECK(j["plus_leaves"].get<int>() >= 12);
  CHECK(j["minus_leaves"].get<int>() >= 12);
  const std::string svg = slurp(a);
  CHECK(svg.find("class=\"lam-plus\"") != std::string::npos);
  CHECK(svg.find("class=\"lam-minus\"") != std::string::npos);

  CHECK(cli({"render", "torus1", "Tq", "--out", bad.string()}).code == kExitInput);
  CHECK_FALSE(fs::exists(bad));
  CHECK(cli({"render", "torus1", "Ta", "--out", (dir / "missing" / "x.svg").string()}).code == kExitInput);
  CHECK_FALSE(fs::exists(dir / "missing"));
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".partial");
}

TEST_CASE("CLI: spec files are read, not modified") {
  const fs::path spec = scratch_dir() / "torus.surf";
  {
    std::ofstream os(spec);
    os << "genus = 1\nboundary = 0\ncusps = 1\ncurve.c = ab\n";
  }
  const std::string before = slurp(spec);
  const auto stamp = fs::last_write_time(spec);
  const CliResult r = cli({"classify", spec.string(), "Tc"});
  CHECK(r.code == kExitOk);
  CHECK(Json::parse(r.out)["kind"] == "Reducible");
  CHECK(slurp(spec) == before);
  CHECK(fs::last_write_time(spec) == stamp);
  std::ofstream(scratch_dir() / "broken.surf") << "genus = 1\n";
  CHECK(cli({"surface", (scratch_dir() / "broken.surf").string()}).code == kExitInput);
}

TEST_CASE("surface report includes the area of pants assemblies") {
  const fs::path spec = scratch_dir() / "pants.surf";
  std::ofstream(spec) << "genus = 0\nboundary = 2\ncusps = 3\n";
  const CliResult r = cli({"surface", spec.string()});
  CHECK(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  REQUIRE(j["area"].is_number());
  CHECK(std::abs(j["area"].get<double>() - 6 * kPi) < 1e-6);
}
