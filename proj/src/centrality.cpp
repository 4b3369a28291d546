#include "hcm/centrality.hpp"

#include "hcm/errors.hpp"
#include "hcm/parallel.hpp"

namespace hcm {

namespace {
std::atomic<std::size_t> g_workers{0};
}

void set_worker_count(std::size_t workers) { g_workers.store(workers); }

std::size_t worker_count() {
  const std::size_t configured = g_workers.load();
  if (configured != 0) return configured;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void BfsWorkspace::reserve(std::size_t num_vertices) {
  if (stamp_.size() < num_vertices) {
    stamp_.assign(num_vertices, 0);
    epoch_ = 0;
  }
  if (queue_.size() < num_vertices) queue_.resize(num_vertices);
}

template <typename Visit>
void BfsWorkspace::search(const ResidualView& view, VertexId v, Visit&& visit) {
  const DiGraph& g = view.graph();
  detail::require(g.contains(v), "query vertex out of range");
  reserve(g.num_vertices());
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }

  std::size_t head = 0;
  std::size_t tail = 0;
  queue_[tail++] = v;
  stamp_[v] = epoch_;
  std::uint32_t depth = 0;
  while (head < tail) {
    const std::size_t layer_end = tail;
    ++depth;
    for (; head < layer_end; ++head) {
      view.for_each_in_neighbor(queue_[head], [&](VertexId w) {
        if (stamp_[w] != epoch_) {
          stamp_[w] = epoch_;
          queue_[tail++] = w;
        }
      });
    }
    if (tail > layer_end) visit(depth, std::span<const VertexId>(queue_.data() + layer_end, tail - layer_end));
  }
}

double BfsWorkspace::harmonic(const ResidualView& view, VertexId v) {
  double sum = 0.0;
  search(view, v, [&](std::uint32_t depth, std::span<const VertexId> layer) {
    sum += static_cast<double>(layer.size()) / static_cast<double>(depth);
  });
  return sum;
}

DistanceVector BfsWorkspace::distances(const ResidualView& view, VertexId v) {
  DistanceVector d(view.graph().num_vertices(), kUnreachable);
  d[v] = 0;
  search(view, v, [&](std::uint32_t depth, std::span<const VertexId> layer) {
    for (VertexId u : layer) d[u] = depth;
  });
  return d;
}

DistanceVector distances_to(const ResidualView& view, VertexId v) {
  BfsWorkspace ws;
  return ws.distances(view, v);
}

double harmonic(const ResidualView& view, VertexId v) {
  BfsWorkspace ws;
  return ws.harmonic(view, v);
}

double objective(const DiGraph& g, VertexId v, const EdgeSubset& removed) {
  detail::require(removed.target() == v, "edge subset belongs to a different target");
  return harmonic(restrict(g, removed), v);
}

double objective(const DiGraph& g, VertexId v, std::span<const std::uint8_t> removed_mask) {
  return harmonic(ResidualView(g, v, removed_mask), v);
}

std::vector<double> batch_residual_scores(const DiGraph& g, VertexId v) {
  detail::require(g.contains(v), "target vertex out of range");
  const auto preds = g.in_neighbors(v);
  const std::vector<std::uint8_t> all_removed(preds.size(), 1);
  const ResidualView residual(g, v, all_removed);

  std::vector<double> scores(preds.size(), 0.0);
  std::vector<BfsWorkspace> workspaces(std::min(worker_count(), std::max<std::size_t>(preds.size(), 1)));
  parallel_for(preds.size(), [&](std::size_t worker, std::size_t i) {
    scores[i] = workspaces[worker].harmonic(residual, preds[i]);
  });
  return scores;
}

}  // namespace hcm
