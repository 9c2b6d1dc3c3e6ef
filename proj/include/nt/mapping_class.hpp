#pragma once

// Mapping classes as automorphisms of the surface group, generated by Dehn
// twists along named curves.

#include <string>
#include <vector>

#include "nt/curves.hpp"

namespace nt {

struct MappingClass {
  std::vector<Word> images;          // phi(generator k)
  std::vector<Word> inverse_images;  // phi^-1(generator k)
  Orientation orientation = Orientation::preserving;
  std::string word_record;

  bool is_identity() const;
};

MappingClass identity_class(const FiniteTypeSurface& surface);

/// f o g (g applied first).
MappingClass compose(const FiniteTypeSurface& surface, const MappingClass& f, const MappingClass& g);
MappingClass inverse(const MappingClass& f);
MappingClass power(const FiniteTypeSurface& surface, const MappingClass& f, int k);

/// Image of a word under the automorphism, reduced in the group.
Word apply(const FiniteTypeSurface& surface, const MappingClass& f, const Word& w);
Word apply_inverse(const FiniteTypeSurface& surface, const MappingClass& f, const Word& w);

/// Right-handed Dehn twist along a simple closed curve.
MappingClass dehn_twist(const FiniteTypeSurface& surface, const Word& curve);

/// Twist computed from the lifts of the curve crossing each generator's
/// segment; used for curves without a hand-written formula.
MappingClass geometric_twist(const FiniteTypeSurface& surface, const Word& curve);

/// Parse a twist word such as "Ta*Tb^-1". Tokens are T<alias> for a curve
/// alias of the surface and R for the declared reflection; tokens are joined
/// by '*', and "X*Y" is the map X o Y. Throws Error(unknown_curve) and
/// Error(parse).
MappingClass build_mapping_class(const FiniteTypeSurface& surface, const std::string& spec);

/// Check relator preservation and that the stored inverse is a two-sided
/// inverse. Throws Error(relator_violation).
void verify_automorphism(const FiniteTypeSurface& surface, const MappingClass& f);

/// Geodesic tightening: the unoriented normal form of f(w).
Word tighten(const FiniteTypeSurface& surface, const MappingClass& f, const Word& w);
CurveClass tighten(const FiniteTypeSurface& surface, const MappingClass& f, const CurveClass& c);

/// Oriented conjugacy normal form of f(w).
Word tighten_oriented(const FiniteTypeSurface& surface, const MappingClass& f, const Word& w);

/// Action on H_1 of the filled surface, column k = image of generator k's
/// class (only meaningful when generator_homology is a basis).
std::vector<std::vector<int>> homology_action(const FiniteTypeSurface& surface, const MappingClass& f);

struct BoundaryMapSample {
  std::vector<std::pair<double, double>> samples;  // (theta, f(theta)) sorted by theta
  Word lift_anchor;
  bool monotone = false;
};

/// Sample of the boundary extension of the lift x -> anchor * f(x) * anchor^-1
/// at the axis endpoints of the given elements.
BoundaryMapSample boundary_action(const FiniteTypeSurface& surface, const MappingClass& f, const Word& anchor,
                                  const std::vector<Word>& elements, int depth = 64);

/// Cyclic monotonicity of a sorted sample (increasing for preserving maps,
/// decreasing for reversing ones).
bool cyclically_monotone(const std::vector<std::pair<double, double>>& samples, bool reversing);

}  // namespace nt
