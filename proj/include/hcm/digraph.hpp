#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hcm {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = ~VertexId{0};

struct Edge {
  VertexId tail;
  VertexId head;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct BuildStats {
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
};

/// Immutable simple digraph in compressed (CSR) form, with both successor and
/// predecessor lists sorted by vertex id.
class DiGraph {
 public:
  DiGraph() = default;

  /// Self-loops and repeated edges are dropped; `stats` receives the counts.
  DiGraph(std::size_t num_vertices, std::vector<Edge> edges, BuildStats* stats = nullptr);

  std::size_t num_vertices() const noexcept { return num_vertices_; }
  std::size_t num_edges() const noexcept { return out_targets_.size(); }

  std::span<const VertexId> out_neighbors(VertexId u) const {
    return {out_targets_.data() + out_offsets_[u], out_targets_.data() + out_offsets_[u + 1]};
  }
  std::span<const VertexId> in_neighbors(VertexId u) const {
    return {in_sources_.data() + in_offsets_[u], in_sources_.data() + in_offsets_[u + 1]};
  }
  std::size_t out_degree(VertexId u) const { return out_offsets_[u + 1] - out_offsets_[u]; }
  std::size_t in_degree(VertexId u) const { return in_offsets_[u + 1] - in_offsets_[u]; }

  bool contains(VertexId u) const noexcept { return u < num_vertices_; }
  bool has_edge(VertexId tail, VertexId head) const;

  /// Position of `tail` in the predecessor list of `head`, if the edge exists.
  std::optional<std::size_t> in_position(VertexId tail, VertexId head) const;

  /// All edges in (tail, head) lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const DiGraph&, const DiGraph&) = default;

 private:
  std::size_t num_vertices_ = 0;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<VertexId> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<VertexId> in_sources_;
};

inline std::span<const VertexId> in_neighbors(const DiGraph& g, VertexId v) { return g.in_neighbors(v); }

/// A subset F of the incoming edges rho(v) of one target vertex, stored as a
/// membership mask aligned with the target's predecessor list. The subset
/// refers into the graph it was built from; the graph must outlive it.
class EdgeSubset {
 public:
  EdgeSubset() = default;
  EdgeSubset(const DiGraph& g, VertexId target);

  static EdgeSubset all(const DiGraph& g, VertexId target);
  static EdgeSubset from_mask(const DiGraph& g, VertexId target, std::span<const std::uint8_t> mask);
  /// Throws ContractViolation if some vertex is not a predecessor of `target`.
  static EdgeSubset from_predecessors(const DiGraph& g, VertexId target,
                                      std::span<const VertexId> predecessors);

  VertexId target() const noexcept { return target_; }
  /// |rho(target)|
  std::size_t capacity() const noexcept { return mask_.size(); }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains_index(std::size_t i) const { return mask_[i] != 0; }
  bool contains(VertexId predecessor) const;
  void insert_index(std::size_t i);
  void erase_index(std::size_t i);

  std::span<const std::uint8_t> mask() const noexcept { return mask_; }
  std::span<const VertexId> candidates() const noexcept { return in_list_; }
  /// Tails of the member edges, ascending.
  std::vector<VertexId> members() const;

  friend bool operator==(const EdgeSubset& a, const EdgeSubset& b) {
    return a.target_ == b.target_ && a.mask_ == b.mask_;
  }

 private:
  VertexId target_ = kNoVertex;
  std::span<const VertexId> in_list_;
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

/// The graph G \ F for F inside rho(F.target()), without copying G.
class ResidualView {
 public:
  explicit ResidualView(const DiGraph& g) : graph_(&g) {}
  ResidualView(const DiGraph& g, VertexId target, std::span<const std::uint8_t> removed_mask);

  const DiGraph& graph() const noexcept { return *graph_; }
  VertexId target() const noexcept { return target_; }
  std::span<const std::uint8_t> removed_mask() const noexcept { return removed_; }

  bool is_removed(VertexId tail, VertexId head) const;
  bool has_edge(VertexId tail, VertexId head) const {
    return graph_->has_edge(tail, head) && !is_removed(tail, head);
  }
  std::size_t in_degree(VertexId u) const;

  template <typename Fn>
  void for_each_in_neighbor(VertexId u, Fn&& fn) const {
    const auto preds = graph_->in_neighbors(u);
    if (u == target_) {
      for (std::size_t i = 0; i < preds.size(); ++i)
        if (!removed_[i]) fn(preds[i]);
    } else {
      for (VertexId w : preds) fn(w);
    }
  }

  template <typename Fn>
  void for_each_out_neighbor(VertexId u, Fn&& fn) const {
    for (VertexId w : graph_->out_neighbors(u))
      if (w != target_ || !is_removed(u, w)) fn(w);
  }

 private:
  const DiGraph* graph_;
  VertexId target_ = kNoVertex;
  std::span<const std::uint8_t> removed_;
};

/// Throws ContractViolation when `removed` was not built against `g`.
ResidualView restrict(const DiGraph& g, const EdgeSubset& removed);
/// The view borrows the subset's mask, so a temporary would dangle.
ResidualView restrict(const DiGraph& g, const EdgeSubset&& removed) = delete;

// ---------------------------------------------------------------------------
// Edge-list text I/O
// ---------------------------------------------------------------------------

/// A graph together with the labels it carried in its source file. Dense ids
/// follow first appearance in the file.
struct ParsedGraph {
  DiGraph graph;
  std::vector<std::int64_t> original_ids;
  BuildStats stats;
  std::size_t data_lines = 0;

  std::optional<VertexId> dense_id(std::int64_t original) const;

  /// Same labelled edge set; dense numbering may differ.
  bool same_labelled_graph(const ParsedGraph& other) const;

 private:
  friend ParsedGraph parse_edge_list(std::istream&);
  std::unordered_map<std::int64_t, VertexId> index_;
};

/// Whitespace edge lists as distributed by KONECT/SNAP: '%' and '#' start
/// comment lines, each data line begins with two integer ids "u w", further
/// columns are ignored.
ParsedGraph parse_edge_list(std::istream& in);
ParsedGraph parse_edge_list(std::string_view text);
ParsedGraph load_edge_list(const std::filesystem::path& path);

/// One "u w" line per edge in sorted dense order; labels from `original_ids`
/// when given.
void write_edge_list(std::ostream& out, const DiGraph& g, std::span<const std::int64_t> original_ids = {});

}  // namespace hcm
