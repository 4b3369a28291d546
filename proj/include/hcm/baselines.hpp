#pragma once

#include <cstdint>
#include <vector>

#include "hcm/digraph.hpp"

namespace hcm {

/// min(b, |rho(v)|); emits a warning on stderr when clamping.
std::size_t clamp_budget(const DiGraph& g, VertexId v, std::size_t budget);

EdgeSubset empty_baseline(const DiGraph& g, VertexId v, std::size_t budget);

/// Uniform b-subset of rho(v), reproducible from `seed`.
EdgeSubset random_baseline(const DiGraph& g, VertexId v, std::size_t budget, std::uint64_t seed);

/// Edges from the b in-neighbors of largest in-degree in G (ties: lower id).
EdgeSubset degree_baseline(const DiGraph& g, VertexId v, std::size_t budget);

/// Repeatedly removes the incoming edge whose removal gives the smallest
/// objective on the current residual graph. Every round re-evaluates every
/// remaining candidate; ties go to the lowest predecessor id.
/// `objective_trace`, when given, receives the objective after each round.
EdgeSubset greedy(const DiGraph& g, VertexId v, std::size_t budget, std::vector<double>* objective_trace = nullptr);

}  // namespace hcm
