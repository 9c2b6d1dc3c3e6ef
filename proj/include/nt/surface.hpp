#pragma once

// Standard hyperbolic surfaces of finite type, realized as Fuchsian groups
// with an explicit fundamental domain, plus the curve classes living on them.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nt/hyperbolic.hpp"
#include "nt/words.hpp"

namespace nt {

struct Signature {
  int genus = 0;
  int boundary = 0;
  int cusps = 0;
  int crosscaps = 0;

  int complexity() const { return cusps + crosscaps + boundary + 2 * genus; }
  bool is_standard() const { return complexity() >= 3; }
  /// Gauss-Bonnet value 2*pi*(c + m + b + 2g - 2).
  double expected_area() const { return kTwoPi * (complexity() - 2); }
  int euler_characteristic() const { return 2 - 2 * genus - crosscaps - boundary - cusps; }
  int pants_curves() const { return 3 * genus - 3 + boundary + cusps; }

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};

struct FenchelNielsen {
  std::vector<double> lengths;
  std::vector<double> twists;
};

/// A geodesic polygon in the closed disk. Ideal vertices have modulus 1.
struct Polygon {
  std::vector<cplx> vertices;
  std::vector<std::string> side_labels;  // pairing generator, "" for free sides
};

/// Horoball neighbourhood of one lift of a cusp. `normalizer` moves the cusp
/// point to z = 1; after w = i(1+z)/(1-z) the horoball is {Im w > height}.
struct CuspCollar {
  int cusp = 0;
  BoundaryPoint point;
  IsometryMap normalizer;
  double height = 0.0;

  /// True when the geodesic enters the horoball.
  bool meets(const Geodesic& g) const;
};

class FiniteTypeSurface {
 public:
  std::string name;
  Signature signature;
  GroupPresentation group;
  std::vector<IsometryMap> generators;  // empty for combinatorial assemblies
  std::vector<Word> peripheral;         // one word per cusp / boundary circle
  FenchelNielsen fenchel_nielsen;
  std::vector<Polygon> fundamental_domain;
  std::vector<CuspCollar> cusp_collars;
  std::vector<Letter> cyclic_order;     // ccw directions at the basepoint (free groups)
  std::map<std::string, Word> curve_aliases;
  std::vector<std::vector<int>> generator_homology;  // image of each generator in H_1 of the filled surface

  bool is_geometric() const { return !generators.empty(); }
  bool is_free() const { return group.is_free(); }

  /// Product of generator isometries. Throws Error(unknown_generator).
  IsometryMap element(const Word& w) const;
  IsometryMap letter_map(Letter l) const;

  /// Abelianization of a word in H_1 of the surface with punctures and
  /// boundary circles filled in, over Z.
  std::vector<int> homology(const Word& w) const;

  /// True when the word is conjugate to a power of a peripheral word.
  bool is_peripheral(const Word& w) const;

  /// Largest hyperbolic displacement of the basepoint over the polygon
  /// vertices that are interior; used to size group-element balls.
  double domain_radius() const;
};

FiniteTypeSurface surface_from_signature(const Signature& sig, const std::optional<FenchelNielsen>& fn = std::nullopt);

/// Catalog surface by name: torus1, sphere3, sphere4, genus2.
FiniteTypeSurface catalog_surface(const std::string& name);

/// Numerical hyperbolic area of the fundamental domain (angle defect of each
/// polygon computed from its vertices).
double area(const FiniteTypeSurface& surface);

IsometryMap group_element(const FiniteTypeSurface& surface, const Word& w);

/// Boundary point reached by the infinite word w[start] w[start+1] ... read
/// cyclically (forward) or w[start-1]^-1 w[start-2]^-1 ... (backward),
/// truncated after `depth` letters.
BoundaryPoint ray_endpoint(const FiniteTypeSurface& surface, const Word& cyclic, long start, bool forward,
                           int depth = 64);

/// Attracting and repelling boundary points of a (not necessarily cyclically
/// reduced) group element given as a word.
Geodesic element_axis(const FiniteTypeSurface& surface, const Word& w, int depth = 64);

/// Smallest displacement of the basepoint over non-identity elements of the
/// word ball of the given radius.
double min_displacement(const FiniteTypeSurface& surface, int radius);

/// Parse the key = value surface spec format.
struct SurfaceSpec {
  Signature signature;
  std::optional<FenchelNielsen> fn;
  std::map<std::string, std::string> curves;  // alias -> word text
};
SurfaceSpec parse_surface_spec(const std::string& text);
FiniteTypeSurface surface_from_spec(const SurfaceSpec& spec);

}  // namespace nt
