#include "nt/kernels.hpp"

#include <algorithm>
#include <limits>

#include <omp.h>

namespace nt::kernels {

FatGraph::FatGraph(const std::vector<Letter>& cyclic_order) : order_(cyclic_order) {
  int rank = 0;
  for (Letter l : order_) rank = std::max(rank, std::abs(l));
  offset_ = rank;
  pos_.assign(static_cast<std::size_t>(2 * rank + 1), -1);
  for (std::size_t i = 0; i < order_.size(); ++i) pos_[static_cast<std::size_t>(order_[i] + offset_)] = static_cast<int>(i);
}

bool FatGraph::ccw(Letter a, Letter b, Letter c) const {
  const int n = degree();
  const int pa = position(a);
  const int db = (position(b) - pa + n) % n;
  const int dc = (position(c) - pa + n) % n;
  return db < dc;
}

bool FatGraph::separates(Letter a, Letter b, Letter c, Letter d) const {
  return ccw(a, c, b) != ccw(a, d, b);
}

namespace {

// Contribution of the phase (i, j) for one orientation of v.
inline long phase_count(const FatGraph& g, const Word& u, const Word& v, long i, long j, bool reversed, bool same) {
  const long m = static_cast<long>(u.size());
  const long n = static_cast<long>(v.size());
  if (same && !reversed && i == j) return 0;
  const Letter ub = -cyclic_at(u, i - 1);
  const Letter vb = -cyclic_at(v, j - 1);
  if (ub == vb) return 0;
  const long limit = m + n;
  long k = 0;
  while (k < limit && cyclic_at(u, i + k) == cyclic_at(v, j + k)) ++k;
  if (k >= limit) return 0;
  if (k == 0) {
    if (reversed) return 0;
    const Letter uf = cyclic_at(u, i);
    const Letter vf = cyclic_at(v, j);
    if (ub == vf || uf == vb) return 0;
    return g.separates(ub, uf, vb, vf) ? 1 : 0;
  }
  const Letter x = cyclic_at(u, i);
  const Letter y = -cyclic_at(u, i + k - 1);
  const Letter uf = cyclic_at(u, i + k);
  const Letter vf = cyclic_at(v, j + k);
  return g.ccw(x, ub, vb) == g.ccw(y, uf, vf) ? 1 : 0;
}

}  // namespace

long linked_pairs_serial(const FatGraph& g, const Word& u, const Word& v, bool same) {
  if (u.empty() || v.empty()) return 0;
  const Word vr = inverse(v);
  const long m = static_cast<long>(u.size());
  const long n = static_cast<long>(v.size());
  long total = 0;
  for (long i = 0; i < m; ++i) {
    for (long j = 0; j < n; ++j) {
      total += phase_count(g, u, v, i, j, false, same);
      total += phase_count(g, u, vr, i, j, true, same);
    }
  }
  return total;
}

long linked_pairs_parallel(const FatGraph& g, const Word& u, const Word& v, bool same) {
  if (u.empty() || v.empty()) return 0;
  const Word vr = inverse(v);
  const long m = static_cast<long>(u.size());
  const long n = static_cast<long>(v.size());
  long total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static)
  for (long i = 0; i < m; ++i) {
    for (long j = 0; j < n; ++j) {
      total += phase_count(g, u, v, i, j, false, same);
      total += phase_count(g, u, vr, i, j, true, same);
    }
  }
  return total;
}

std::vector<IsometryMap> letter_table(const FiniteTypeSurface& surface) {
  const int r = surface.group.rank();
  std::vector<IsometryMap> t(static_cast<std::size_t>(2 * r + 1));
  for (int l = -r; l <= r; ++l)
    if (l != 0) t[static_cast<std::size_t>(l + r)] = surface.letter_map(l);
  return t;
}

Geodesic window_leaf(const std::vector<IsometryMap>& table, const Word& window, int k) {
  const int r = static_cast<int>(table.size() / 2);
  const auto map = [&](Letter l) -> const IsometryMap& { return table[static_cast<std::size_t>(l + r)]; };
  const auto len = static_cast<int>(window.size());
  cplx fwd(0.0, 0.0);
  for (int t = std::min(len, 2 * k) - 1; t >= k; --t) fwd = map(window[static_cast<std::size_t>(t)]).apply_raw(fwd);
  cplx back(0.0, 0.0);
  for (int t = 0; t < k; ++t) back = map(-window[static_cast<std::size_t>(t)]).apply_raw(back);
  return Geodesic(BoundaryPoint::from_complex(back), BoundaryPoint::from_complex(fwd));
}

std::vector<Geodesic> leaf_batch_serial(const FiniteTypeSurface& surface, const std::vector<Word>& windows, int k) {
  const auto table = letter_table(surface);
  std::vector<Geodesic> out(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) out[i] = window_leaf(table, windows[i], k);
  return out;
}

std::vector<Geodesic> leaf_batch_parallel(const FiniteTypeSurface& surface, const std::vector<Word>& windows, int k) {
  const auto table = letter_table(surface);
  std::vector<Geodesic> out(windows.size());
  const auto n = static_cast<long>(windows.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = window_leaf(table, windows[static_cast<std::size_t>(i)], k);
  return out;
}

double leaf_distance(const Geodesic& x, const Geodesic& y) { return x.endpoint_distance(y); }

namespace {

double directed(const std::vector<Geodesic>& a, const std::vector<Geodesic>& b, long i) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& g : b) best = std::min(best, leaf_distance(a[static_cast<std::size_t>(i)], g));
  return best;
}

}  // namespace

double hausdorff_serial(const std::vector<Geodesic>& a, const std::vector<Geodesic>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  double h = 0.0;
  for (long i = 0; i < static_cast<long>(a.size()); ++i) h = std::max(h, directed(a, b, i));
  for (long i = 0; i < static_cast<long>(b.size()); ++i) h = std::max(h, directed(b, a, i));
  return h;
}

double hausdorff_parallel(const std::vector<Geodesic>& a, const std::vector<Geodesic>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  double h = 0.0;
  const auto na = static_cast<long>(a.size());
  const auto nb = static_cast<long>(b.size());
#pragma omp parallel for reduction(max : h) schedule(static)
  for (long i = 0; i < na + nb; ++i) h = std::max(h, i < na ? directed(a, b, i) : directed(b, a, i - na));
  return h;
}

}  // namespace nt::kernels
