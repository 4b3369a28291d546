#include "hcm/digraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hcm/errors.hpp"

namespace hcm {

DiGraph::DiGraph(std::size_t num_vertices, std::vector<Edge> edges, BuildStats* stats)
    : num_vertices_(num_vertices) {
  BuildStats local;
  for (const Edge& e : edges)
    detail::require(e.tail < num_vertices && e.head < num_vertices, "edge endpoint out of range");

  const auto loops_end = std::remove_if(edges.begin(), edges.end(), [](const Edge& e) { return e.tail == e.head; });
  local.self_loops = static_cast<std::size_t>(edges.end() - loops_end);
  edges.erase(loops_end, edges.end());

  std::sort(edges.begin(), edges.end());
  const auto unique_end = std::unique(edges.begin(), edges.end());
  local.duplicates = static_cast<std::size_t>(edges.end() - unique_end);
  edges.erase(unique_end, edges.end());

  out_offsets_.assign(num_vertices + 1, 0);
  in_offsets_.assign(num_vertices + 1, 0);
  for (const Edge& e : edges) {
    ++out_offsets_[e.tail + 1];
    ++in_offsets_[e.head + 1];
  }
  for (std::size_t u = 0; u < num_vertices; ++u) {
    out_offsets_[u + 1] += out_offsets_[u];
    in_offsets_[u + 1] += in_offsets_[u];
  }

  // Edges are sorted by (tail, head), so both fills below leave every list sorted.
  out_targets_.resize(edges.size());
  in_sources_.resize(edges.size());
  std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out_targets_[i] = edges[i].head;
    in_sources_[in_fill[edges[i].head]++] = edges[i].tail;
  }

  if (stats) *stats = local;
}

bool DiGraph::has_edge(VertexId tail, VertexId head) const {
  if (!contains(tail) || !contains(head)) return false;
  const auto succ = out_neighbors(tail);
  return std::binary_search(succ.begin(), succ.end(), head);
}

std::optional<std::size_t> DiGraph::in_position(VertexId tail, VertexId head) const {
  if (!contains(tail) || !contains(head)) return std::nullopt;
  const auto preds = in_neighbors(head);
  const auto it = std::lower_bound(preds.begin(), preds.end(), tail);
  if (it == preds.end() || *it != tail) return std::nullopt;
  return static_cast<std::size_t>(it - preds.begin());
}

std::vector<Edge> DiGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(num_edges());
  for (VertexId u = 0; u < num_vertices_; ++u)
    for (VertexId w : out_neighbors(u)) result.push_back({u, w});
  return result;
}

// ---------------------------------------------------------------------------

EdgeSubset::EdgeSubset(const DiGraph& g, VertexId target) : target_(target) {
  detail::require(g.contains(target), "target vertex out of range");
  in_list_ = g.in_neighbors(target);
  mask_.assign(in_list_.size(), 0);
}

EdgeSubset EdgeSubset::all(const DiGraph& g, VertexId target) {
  EdgeSubset s(g, target);
  std::fill(s.mask_.begin(), s.mask_.end(), std::uint8_t{1});
  s.count_ = s.mask_.size();
  return s;
}

EdgeSubset EdgeSubset::from_mask(const DiGraph& g, VertexId target, std::span<const std::uint8_t> mask) {
  EdgeSubset s(g, target);
  detail::require(mask.size() == s.mask_.size(), "mask length differs from in-degree of target");
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) s.insert_index(i);
  return s;
}

EdgeSubset EdgeSubset::from_predecessors(const DiGraph& g, VertexId target,
                                         std::span<const VertexId> predecessors) {
  EdgeSubset s(g, target);
  for (VertexId w : predecessors) {
    const auto pos = g.in_position(w, target);
    if (!pos) throw ContractViolation("vertex " + std::to_string(w) + " is not a predecessor of " + std::to_string(target));
    detail::require(!s.mask_[*pos], "duplicate member in edge subset");
    s.insert_index(*pos);
  }
  return s;
}

bool EdgeSubset::contains(VertexId predecessor) const {
  const auto it = std::lower_bound(in_list_.begin(), in_list_.end(), predecessor);
  return it != in_list_.end() && *it == predecessor && mask_[static_cast<std::size_t>(it - in_list_.begin())];
}

void EdgeSubset::insert_index(std::size_t i) {
  if (!mask_[i]) {
    mask_[i] = 1;
    ++count_;
  }
}

void EdgeSubset::erase_index(std::size_t i) {
  if (mask_[i]) {
    mask_[i] = 0;
    --count_;
  }
}

std::vector<VertexId> EdgeSubset::members() const {
  std::vector<VertexId> result;
  result.reserve(count_);
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) result.push_back(in_list_[i]);
  return result;
}

// ---------------------------------------------------------------------------

ResidualView::ResidualView(const DiGraph& g, VertexId target, std::span<const std::uint8_t> removed_mask)
    : graph_(&g), target_(target), removed_(removed_mask) {
  detail::require(g.contains(target), "target vertex out of range");
  detail::require(removed_mask.size() == g.in_degree(target), "removal mask length differs from in-degree of target");
}

bool ResidualView::is_removed(VertexId tail, VertexId head) const {
  if (head != target_) return false;
  const auto pos = graph_->in_position(tail, head);
  return pos && removed_[*pos];
}

std::size_t ResidualView::in_degree(VertexId u) const {
  const std::size_t full = graph_->in_degree(u);
  if (u != target_) return full;
  return full - static_cast<std::size_t>(std::count_if(removed_.begin(), removed_.end(), [](auto m) { return m != 0; }));
}

ResidualView restrict(const DiGraph& g, const EdgeSubset& removed) {
  detail::require(removed.target() != kNoVertex && g.contains(removed.target()), "edge subset has no valid target");
  detail::require(removed.candidates().data() == g.in_neighbors(removed.target()).data() &&
                      removed.candidates().size() == g.in_degree(removed.target()),
                  "edge subset was built against a different graph");
  return ResidualView(g, removed.target(), removed.mask());
}

// ---------------------------------------------------------------------------

std::optional<VertexId> ParsedGraph::dense_id(std::int64_t original) const {
  const auto it = index_.find(original);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool ParsedGraph::same_labelled_graph(const ParsedGraph& other) const {
  if (graph.num_vertices() != other.graph.num_vertices() || graph.num_edges() != other.graph.num_edges())
    return false;
  auto labelled = [](const ParsedGraph& p) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const Edge& e : p.graph.edges()) out.emplace_back(p.original_ids[e.tail], p.original_ids[e.head]);
    std::sort(out.begin(), out.end());
    return out;
  };
  auto ids_a = original_ids;
  auto ids_b = other.original_ids;
  std::sort(ids_a.begin(), ids_a.end());
  std::sort(ids_b.begin(), ids_b.end());
  return ids_a == ids_b && labelled(*this) == labelled(other);
}

namespace {

bool parse_int(std::string_view token, std::int64_t& value) {
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc{} && ptr == end;
}

// Splits off the next whitespace-delimited token.
std::string_view next_token(std::string_view& rest) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) ++j;
  const auto token = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return token;
}

}  // namespace

ParsedGraph parse_edge_list(std::istream& in) {
  ParsedGraph result;
  std::vector<Edge> edges;
  std::size_t self_loops = 0;

  auto intern = [&](std::int64_t label) {
    const auto [it, inserted] = result.index_.try_emplace(label, static_cast<VertexId>(result.original_ids.size()));
    if (inserted) result.original_ids.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    const auto first = next_token(rest);
    if (first.empty() || first.front() == '%' || first.front() == '#') continue;
    const auto second = next_token(rest);
    std::int64_t tail = 0;
    std::int64_t head = 0;
    if (second.empty()) throw ParseError(line_no, "expected two vertex ids");
    if (!parse_int(first, tail) || !parse_int(second, head))
      throw ParseError(line_no, "vertex ids must be integers");
    ++result.data_lines;
    // A vertex that only ever occurs in a self-loop is not materialised.
    if (tail == head) {
      ++self_loops;
      continue;
    }
    const VertexId u = intern(tail);
    const VertexId w = intern(head);
    edges.push_back({u, w});
  }
  if (result.data_lines == 0) throw ParseError(line_no, "edge list contains no edges");

  result.graph = DiGraph(result.original_ids.size(), std::move(edges), &result.stats);
  result.stats.self_loops += self_loops;
  return result;
}

ParsedGraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

ParsedGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const DiGraph& g, std::span<const std::int64_t> original_ids) {
  detail::require(original_ids.empty() || original_ids.size() == g.num_vertices(),
                  "label table size differs from vertex count");
  for (const Edge& e : g.edges()) {
    if (original_ids.empty())
      out << e.tail << ' ' << e.head << '\n';
    else
      out << original_ids[e.tail] << ' ' << original_ids[e.head] << '\n';
  }
}

}  // namespace hcm
