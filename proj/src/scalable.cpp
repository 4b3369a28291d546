#include "hcm/scalable.hpp"

#include <algorithm>

#include "hcm/baselines.hpp"
#include "hcm/centrality.hpp"

namespace hcm {

RankedNeighbors rank_neighbors(const DiGraph& g, VertexId v) {
  const auto preds = g.in_neighbors(v);
  const auto scores = batch_residual_scores(g, v);
  RankedNeighbors ranked;
  ranked.reserve(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) ranked.push_back({preds[i], scores[i], i});
  // preds is ascending, so a stable sort on score alone keeps the id tie rule.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedNeighbor& a, const RankedNeighbor& b) { return a.score > b.score; });
  return ranked;
}

EdgeSubset top_b_cut(const DiGraph& g, VertexId v, std::size_t budget) {
  const std::size_t b = clamp_budget(g, v, budget);
  if (b == g.in_degree(v)) return EdgeSubset::all(g, v);
  EdgeSubset chosen(g, v);
  if (b == 0) return chosen;
  const auto ranked = rank_neighbors(g, v);
  for (std::size_t i = 0; i < b; ++i) chosen.insert_index(ranked[i].in_index);
  return chosen;
}

}  // namespace hcm
