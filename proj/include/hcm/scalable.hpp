#pragma once

#include <vector>

#include "hcm/digraph.hpp"

namespace hcm {

struct RankedNeighbor {
  VertexId vertex;
  /// h_{G \ rho(v)}(vertex)
  double score;
  /// Position of `vertex` in in_neighbors(g, v).
  std::size_t in_index;
};

/// In-neighbors of v by non-increasing residual score, ties by ascending id.
using RankedNeighbors = std::vector<RankedNeighbor>;

RankedNeighbors rank_neighbors(const DiGraph& g, VertexId v);

/// Cuts the edges from the first min(b, |rho(v)|) ranked neighbors. This is
/// the sqrt(2 h_G(v))-approximation; b = |rho(v)| returns rho(v) without any
/// search.
EdgeSubset top_b_cut(const DiGraph& g, VertexId v, std::size_t budget);

}  // namespace hcm
