#pragma once

// Periodic / reducible / pseudo-Anosov classification of a mapping class,
// with the evidence behind each verdict.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nt/lamination.hpp"

namespace nt {

struct Budgets {
  int max_word_length = 6;   // reduction system enumeration
  int closed_word_length = 4;  // enumeration cap on closed surfaces
  int max_period = 12;       // reduction system periods
  int depth = 12;            // lamination and dilatation depth
  int max_n = 24;            // seed orbits and periodic order search
  int seed_length = 2;       // seeds probed for periodicity
  int window = 32;           // lamination window half-width
  double threshold = 1e-4;   // lamination residual
  std::size_t max_letters = std::size_t{1} << 22;
  std::size_t probe_letters = std::size_t{1} << 14;  // seed periodicity probe
  std::size_t dilatation_letters = std::size_t{1} << 18;
  int max_recursion = 4;
};

enum class VerdictKind { periodic, pseudo_anosov, reducible, indeterminate };

std::string to_string(VerdictKind k);
std::optional<VerdictKind> verdict_kind_from_string(const std::string& s);

struct Verdict;

struct ComponentReport {
  Signature signature;
  double area = 0.0;
  int return_time = 1;
  std::vector<Word> boundary_curves;  // cut curves bounding the component
  std::shared_ptr<const Verdict> sub_verdict;
};

struct LaminationSummary {
  std::string direction;
  int depth = 0;
  std::size_t leaves = 0;
  std::size_t pruned = 0;
  double residual = 0.0;
  std::optional<double> slope;
  std::size_t final_word_length = 0;
};

struct Verdict {
  VerdictKind kind = VerdictKind::indeterminate;
  std::optional<int> order;
  std::optional<double> dilatation;
  std::optional<double> dilatation_error;
  std::vector<Word> gamma;
  std::vector<ComponentReport> components;
  std::vector<LaminationSummary> laminations;
  std::vector<std::string> census;  // sorted region type multiset
  std::vector<std::string> evidence;
  Budgets budgets;
  std::string surface;
  std::string mapping_class;
};

struct FillingSystem {
  CurveSystem sigma;
  CurveSystem sigma_prime;
  bool fills = false;
  int crossings = 0;  // total intersections between sigma and sigma_prime
};

/// Sigma is a greedy disjoint system of short curves, Sigma' its image under
/// twists along curves dual to Sigma; fillingness is checked against the
/// enumerated curves up to check_length.
FillingSystem choose_filling_system(const FiniteTypeSurface& surface, int check_length = 4);

/// Least n <= max_n such that f^n is orientation preserving and fixes every
/// curve of the system with its orientation.
std::optional<int> periodic_order(const FiniteTypeSurface& surface, const MappingClass& f, const FillingSystem& fs,
                                  int max_n);

/// Signatures of the pieces of the surface cut along a disjoint system.
/// Throws Error(precondition) for intersecting curves and Error(unsupported)
/// for systems whose pieces are not determined by the curve classes alone.
std::vector<ComponentReport> component_split(const FiniteTypeSurface& surface, const CurveSystem& gamma);

Verdict classify(const FiniteTypeSurface& surface, const MappingClass& f, const Budgets& budgets = {});

}  // namespace nt
