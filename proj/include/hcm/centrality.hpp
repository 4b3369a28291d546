#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "hcm/digraph.hpp"

namespace hcm {

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// d(u, v) for every u, kUnreachable where v cannot be reached from u.
using DistanceVector = std::vector<std::uint32_t>;

/// Reusable scratch space for reverse breadth-first search. Visited marks are
/// epoch-stamped, so consecutive searches cost O(reached) rather than O(|V|).
class BfsWorkspace {
 public:
  BfsWorkspace() = default;
  explicit BfsWorkspace(std::size_t num_vertices) { reserve(num_vertices); }

  void reserve(std::size_t num_vertices);

  /// Harmonic centrality of `v` on the view; reciprocal distances are summed
  /// layer by layer in increasing distance.
  double harmonic(const ResidualView& view, VertexId v);

  DistanceVector distances(const ResidualView& view, VertexId v);

 private:
  template <typename Visit>
  void search(const ResidualView& view, VertexId v, Visit&& visit);

  std::vector<std::uint32_t> stamp_;
  std::vector<VertexId> queue_;
  std::uint32_t epoch_ = 0;
};

DistanceVector distances_to(const ResidualView& view, VertexId v);

/// h(v) = sum over u != v of 1 / d(u, v), unreachable vertices contributing 0.
double harmonic(const ResidualView& view, VertexId v);
inline double harmonic(const DiGraph& g, VertexId v) { return harmonic(ResidualView(g), v); }

/// f_(G,v)(F) = h_{G \ F}(v).
double objective(const DiGraph& g, VertexId v, const EdgeSubset& removed);
double objective(const DiGraph& g, VertexId v, std::span<const std::uint8_t> removed_mask);

/// h_{G \ rho(v)}(w) for every in-neighbor w of v, aligned with in_neighbors(g, v).
std::vector<double> batch_residual_scores(const DiGraph& g, VertexId v);

}  // namespace hcm
