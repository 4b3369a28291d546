#include "hcm/baselines.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>

#include "hcm/centrality.hpp"
#include "hcm/errors.hpp"
#include "hcm/parallel.hpp"

namespace hcm {

std::size_t clamp_budget(const DiGraph& g, VertexId v, std::size_t budget) {
  detail::require(g.contains(v), "target vertex out of range");
  const std::size_t degree = g.in_degree(v);
  if (budget > degree) {
    std::cerr << "warning: budget " << budget << " exceeds in-degree " << degree << " of vertex " << v
              << "; clamped\n";
    return degree;
  }
  return budget;
}

EdgeSubset empty_baseline(const DiGraph& g, VertexId v, std::size_t /*budget*/) { return EdgeSubset(g, v); }

EdgeSubset random_baseline(const DiGraph& g, VertexId v, std::size_t budget, std::uint64_t seed) {
  const std::size_t b = clamp_budget(g, v, budget);
  EdgeSubset chosen(g, v);
  std::vector<std::size_t> positions(g.in_degree(v));
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first b slots end up a uniform b-subset.
  for (std::size_t i = 0; i < b; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, positions.size() - 1);
    std::swap(positions[i], positions[pick(rng)]);
    chosen.insert_index(positions[i]);
  }
  return chosen;
}

EdgeSubset degree_baseline(const DiGraph& g, VertexId v, std::size_t budget) {
  const std::size_t b = clamp_budget(g, v, budget);
  const auto preds = g.in_neighbors(v);
  std::vector<std::size_t> order(preds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    return g.in_degree(preds[a]) > g.in_degree(preds[c]);
  });
  EdgeSubset chosen(g, v);
  for (std::size_t i = 0; i < b; ++i) chosen.insert_index(order[i]);
  return chosen;
}

EdgeSubset greedy(const DiGraph& g, VertexId v, std::size_t budget, std::vector<double>* objective_trace) {
  const std::size_t b = clamp_budget(g, v, budget);
  const std::size_t degree = g.in_degree(v);
  EdgeSubset chosen(g, v);
  if (objective_trace) objective_trace->clear();

  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(degree, 1));
  std::vector<BfsWorkspace> workspaces(workers);
  std::vector<std::vector<std::uint8_t>> masks(workers);
  std::vector<double> values(degree);

  for (std::size_t round = 0; round < b; ++round) {
    const auto current = chosen.mask();
    parallel_for(degree, [&](std::size_t worker, std::size_t i) {
      if (current[i]) {
        values[i] = std::numeric_limits<double>::infinity();
        return;
      }
      auto& mask = masks[worker];
      mask.assign(current.begin(), current.end());
      mask[i] = 1;
      values[i] = workspaces[worker].harmonic(ResidualView(g, v, mask), v);
    });
    // First minimum in predecessor order is the lowest id.
    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    chosen.insert_index(best);
    if (objective_trace) objective_trace->push_back(values[best]);
  }
  return chosen;
}

}  // namespace hcm
