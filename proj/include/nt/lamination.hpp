#pragma once

// Orbits of curves under a mapping class, the reduction system, numerical
// laminations and their complementary regions, and boundary dynamics.

#include <optional>
#include <string>
#include <vector>

#include "nt/mapping_class.hpp"

namespace nt {

struct OrbitRecord {
  Word seed;
  std::vector<Word> images;                // sigma_0 .. sigma_N, unoriented normal forms
  std::optional<int> period;               // least k > 0 with sigma_k = sigma_0
  std::vector<long> intersection_table;    // i(sigma_0, sigma_n)
  bool truncated = false;                  // stopped at the letter cap before N
};

OrbitRecord orbit(const FiniteTypeSurface& surface, const MappingClass& f, const Word& seed, int steps,
                  std::size_t max_letters = std::size_t{1} << 21, bool with_table = true);

enum class SpiralRelation { equal, spirals, transverse, far_disjoint };

struct SpiralReport {
  SpiralRelation relation = SpiralRelation::far_disjoint;
  double distance = 0.0;      // least distance between lifts (0 unless far_disjoint)
  double collar_width = 0.0;  // collar half-width of gamma from its translation length
};

SpiralReport spiral_classify(const FiniteTypeSurface& surface, const Word& tau, const Word& gamma);
SpiralReport spiral_classify(const FiniteTypeSurface& surface, const Geodesic& leaf, const Word& gamma);

struct ReductionResult {
  CurveSystem gamma;        // isolated members of gamma_prime
  CurveSystem gamma_prime;  // periodic simple classes found within budget
  int max_word_length = 0;
  int max_period = 0;
  bool invariant = false;   // f(Gamma) == Gamma
  std::vector<std::string> notes;
};

ReductionResult reduction_system(const FiniteTypeSurface& surface, const MappingClass& f, int max_word_length,
                                 int max_period);

enum class Direction { plus, minus };

struct Leaf {
  Geodesic geodesic;
  Word window;  // letters around the base vertex, centre at window.size() / 2
};

struct LaminationOptions {
  int depth = 12;
  int window = 32;             // letters on each side of the base vertex
  double threshold = 1e-4;
  std::size_t max_letters = std::size_t{1} << 23;
  bool stop_on_convergence = false;
  double prune_width = 1e-3;   // one-sided collar width used for pruning (at least 10x residual)
};

struct LaminationApprox {
  Direction direction = Direction::plus;
  Word seed;
  int depth = 0;
  std::vector<Leaf> leaves;
  std::vector<Leaf> pruned;
  double hausdorff_residual = 0.0;
  std::vector<double> residual_history;  // residual of stage n against n - 1, n >= 2
  bool converged = false;
  bool nonconvergence_warning = false;
  bool leaves_unlinked = false;
  bool no_closed_leaves = false;
  bool avoids_gamma = true;
  std::optional<double> slope;           // homology slope of the last stage (torus)
  std::size_t final_word_length = 0;
  Word final_curve;                       // sigma_depth
};

/// Leaves through the base vertex of the curves sigma_n = f^n(seed) (or
/// f^-n for Direction::minus). Throws Error(precondition) when the orbit
/// is periodic.
LaminationApprox lamination_approx(const FiniteTypeSurface& surface, const MappingClass& f, const Word& seed,
                                   Direction direction, const LaminationOptions& options = {});

/// Distinct windows of a cyclic word, sorted.
std::vector<Word> cyclic_windows(const Word& cyclic, int half_width);

enum class RegionType { disk_with_p_ideal_vertices, punctured_disk, crown_with_rim, moebius_strip_reserved };
enum class NucleusType { disk, punctured_disk, annulus_with_rim, moebius_reserved };

std::string to_string(RegionType t);
std::string to_string(NucleusType t);

struct CrownRegion {
  RegionType type = RegionType::punctured_disk;
  int p = 0;
  std::optional<Word> rim;
  std::optional<NucleusType> nucleus;
  Direction direction = Direction::plus;
  int cusp = -1;
  bool resolved = true;  // false when inferred from the index count only
};

struct CrownCensus {
  std::vector<CrownRegion> regions;
  /// Sorted (type, p, direction) triples for comparisons.
  std::vector<std::string> type_multiset() const;
};

struct TransversalityReport {
  bool transverse = false;
  CrownCensus census;
  std::vector<std::string> notes;
};

/// Ideal vertices of the crown around one cusp of the surface, from a leaf
/// set, in the upper half-plane coordinate with the cusp at infinity.
struct CuspCrown {
  int cusp = -1;
  Word parabolic;                 // rotation of the peripheral word fixing the chosen lift
  double period = 0.0;            // translation length of the parabolic in that coordinate
  std::vector<double> vertices;   // ideal vertices in one period, increasing
  std::vector<std::pair<double, double>> sides;  // outermost leaves over one period
  bool closed = false;            // sides chain with shared endpoints around the period
};

CuspCrown cusp_crown(const FiniteTypeSurface& surface, const std::vector<Leaf>& leaves, int cusp);

TransversalityReport transversality_and_census(const FiniteTypeSurface& surface, const LaminationApprox& plus,
                                               const LaminationApprox& minus, const CurveSystem& gamma);

enum class FixedPointType { contracting, expanding };

struct BoundaryFixedPoint {
  double position = 0.0;  // angle, or real coordinate for cusp analyses
  FixedPointType type = FixedPointType::contracting;
};

struct BoundaryFixedPointReport {
  int power = 1;
  Word anchor;
  std::vector<BoundaryFixedPoint> fixed_points;  // cyclic order
  std::vector<std::pair<int, int>> interval_structure;  // (contracting i-1, contracting i) -> expanding index
  bool alternating = false;
  bool one_expanding_per_interval = false;
  bool conclusive = false;
  std::string note;
};

/// Fixed points of the lift x -> anchor * f^p(x) * anchor^-1 on the circle,
/// from axis-endpoint samples of all reduced words up to sample_length.
BoundaryFixedPointReport boundary_fixed_points(const FiniteTypeSurface& surface, const MappingClass& f, int p,
                                               const Word& anchor, int sample_length = 7);

/// Same analysis over one period of a cusp, for a lift fixing that cusp.
BoundaryFixedPointReport cusp_fixed_points(const FiniteTypeSurface& surface, const MappingClass& f, int p,
                                           const Word& anchor, const CuspCrown& crown, int sample_length = 7);

/// Anchor g with g * f^p(parabolic) * g^-1 == parabolic, when f^p fixes the
/// cusp with its orientation.
std::optional<Word> cusp_anchor(const FiniteTypeSurface& surface, const MappingClass& f, int p, const CuspCrown& crown);

struct InvariantLeaf {
  int power = 1;
  Word anchor;
  Leaf leaf;
  BoundaryFixedPointReport report;
};

/// Search anchors up to the given length and powers up to max_power for a
/// lift with exactly four fixed points whose contracting pair bounds a leaf
/// of the lamination.
std::optional<InvariantLeaf> find_two_sided_leaf(const FiniteTypeSurface& surface, const MappingClass& f,
                                                 const LaminationApprox& lam, int max_power = 2,
                                                 int anchor_length = 3, int sample_length = 7);

struct DilatationEstimate {
  double value = 0.0;
  double error = 0.0;
  bool hyperbolic = false;  // exponential rather than polynomial growth
  std::vector<long> table;  // i(sigma_n, probe)
};

/// Geometric mean of successive ratios of i(sigma_n, probe) over the last
/// half of the orbit. Throws Error(precondition) for periodic orbits and
/// all-zero tables.
DilatationEstimate dilatation_estimate(const FiniteTypeSurface& surface, const OrbitRecord& orbit, const Word& probe);

}  // namespace nt
