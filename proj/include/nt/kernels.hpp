#pragma once

// Hot loops with an OpenMP version and a serial reference. The two variants
// must return identical results; tests and the benchmark compare them.

#include <vector>

#include "nt/hyperbolic.hpp"
#include "nt/surface.hpp"
#include "nt/words.hpp"

namespace nt::kernels {

/// Cyclic order of directions at the single vertex of a ribbon graph.
class FatGraph {
 public:
  FatGraph() = default;
  explicit FatGraph(const std::vector<Letter>& cyclic_order);

  int degree() const { return static_cast<int>(order_.size()); }
  int position(Letter l) const { return pos_[static_cast<std::size_t>(l + offset_)]; }
  /// True when, turning counterclockwise from a, b comes before c.
  bool ccw(Letter a, Letter b, Letter c) const;
  /// True when {a, b} and {c, d} alternate around the vertex.
  bool separates(Letter a, Letter b, Letter c, Letter d) const;

 private:
  std::vector<Letter> order_;
  std::vector<int> pos_;
  int offset_ = 0;
};

/// Number of linked pairs between the periodic lifts of the cyclic words u
/// and v (each pair counted once per crossing). For u == v pass
/// `same = true`; every self-crossing is then counted twice.
long linked_pairs_serial(const FatGraph& g, const Word& u, const Word& v, bool same);
long linked_pairs_parallel(const FatGraph& g, const Word& u, const Word& v, bool same);

/// Leaf through the base vertex read off a window: window[k..] forward,
/// window[..k) backward, each truncated to `k` letters.
Geodesic window_leaf(const std::vector<IsometryMap>& letter_table, const Word& window, int k);

/// Letter maps indexed by letter + rank (so index 0 is the inverse of the
/// last generator).
std::vector<IsometryMap> letter_table(const FiniteTypeSurface& surface);

std::vector<Geodesic> leaf_batch_serial(const FiniteTypeSurface& surface, const std::vector<Word>& windows, int k);
std::vector<Geodesic> leaf_batch_parallel(const FiniteTypeSurface& surface, const std::vector<Word>& windows, int k);

/// Distance between unoriented leaves: the larger endpoint angle gap under
/// the better of the two endpoint matchings.
double leaf_distance(const Geodesic& x, const Geodesic& y);

/// Hausdorff distance between finite leaf sets under leaf_distance.
/// Empty against nonempty is +inf; empty against empty is 0.
double hausdorff_serial(const std::vector<Geodesic>& a, const std::vector<Geodesic>& b);
double hausdorff_parallel(const std::vector<Geodesic>& a, const std::vector<Geodesic>& b);

}  // namespace nt::kernels
