#pragma once

// JSON and SVG renderings of pipeline results. Numbers are rounded to 12
// significant digits and object keys are sorted, so output is reproducible.

#include <string>
#include <vector>

#include <json.hpp>

#include "nt/classifier.hpp"

namespace nt {

using Json = nlohmann::json;

double round_significant(double x, int digits = 12);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

Json to_json(const FiniteTypeSurface& surface, const Verdict& v);
/// Inverse of to_json. Throws Error(parse) on missing or mistyped fields.
Verdict verdict_from_json(const FiniteTypeSurface& surface, const Json& j);

Json budgets_to_json(const Budgets& b);
Budgets budgets_from_json(const Json& j);

Json surface_report(const FiniteTypeSurface& surface);
Json orbit_report(const FiniteTypeSurface& surface, const OrbitRecord& orb);
Json reduction_report(const FiniteTypeSurface& surface, const ReductionResult& red);
Json lamination_report(const FiniteTypeSurface& surface, const LaminationApprox& lam);

struct DiskPicture {
  std::vector<Geodesic> plus;
  std::vector<Geodesic> minus;
  std::vector<Geodesic> gamma;
  std::vector<BoundaryFixedPoint> fixed_points;  // positions are angles
};

/// Lifts of the reduction curves whose axes pass within `reach` of the
/// basepoint, deduplicated and sorted.
std::vector<Geodesic> gamma_lifts(const FiniteTypeSurface& surface, const std::vector<Word>& gamma,
                                  double reach = 2.5);

/// 1000 x 1000 viewBox, boundary circle of radius 480, leaves drawn as arcs
/// orthogonal to it. Contracting fixed points are labelled a_i, expanding b_i.
std::string render_disk_svg(const DiskPicture& picture);

/// Writes through a temporary file in the same directory and renames it, so
/// a failed write leaves nothing behind. Throws Error(io).
void write_file(const std::string& path, const std::string& content);

}  // namespace nt
