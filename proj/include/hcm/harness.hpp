#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hcm/digraph.hpp"

namespace hcm {

/// A problem instance: graph, target vertex and budget.
struct Instance {
  DiGraph graph;
  VertexId target = kNoVertex;
  std::size_t budget = 0;
};

// ---------------------------------------------------------------------------
// Gadgets
// ---------------------------------------------------------------------------

/// Minimum k-union: choose k of the m sets minimising the size of their union.
struct KUnionInstance {
  std::size_t universe = 0;
  std::vector<std::vector<std::size_t>> sets;
  std::size_t k = 0;

  /// Throws ContractViolation unless the sets cover {0..universe-1} and k <= m.
  void validate() const;
};

/// Reduction graph: vertex 0 is the target, 1..m are the set vertices and
/// m+1..m+n the element vertices. Edges S_j -> target and e_i -> S_j for
/// e_i in S_j. Budget m - k.
Instance gadget_kunion(const KUnionInstance& instance);

/// Greedy lower-bound gadget for k >= 2: vertex 0 is the target, 1 = n_L,
/// 2 = o_L, 3..k+2 = N_R, k+3..2k+2 = O_R. Budget k.
Instance gadget_greedy_adversarial(std::size_t k);

/// Tightness gadget for the ranking cut, k >= 2: vertex 0 is the target,
/// 1..k = N_L, k+1..2k = N_R, 2k+1..3k = O_R, then the k(k-1) vertices of
/// O_L, the i-th block of k-1 pointing at n_L^i. Budget k.
Instance gadget_alg1_adversarial(std::size_t k);

/// Directed G(n, p), reproducible by seed.
DiGraph random_digraph(std::size_t n, double p, std::uint64_t seed);

/// Each new vertex adds `out_per_vertex` edges to earlier vertices chosen
/// with probability proportional to in-degree + 1.
DiGraph preferential_attachment(std::size_t n, std::size_t out_per_vertex, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Exhaustive oracle
// ---------------------------------------------------------------------------

struct BruteForceOptions {
  /// Refuse when (#subsets) * (|V| + |A|) exceeds this.
  double work_cap = 1e8;
  /// Enumerate every size 0..b instead of exactly b.
  bool all_sizes = false;
};

struct BruteForceResult {
  EdgeSubset solution;
  double value = 0.0;
  std::size_t evaluated = 0;
};

/// Minimises f over subsets of rho(v) of size exactly min(b, |rho(v)|); by
/// monotonicity smaller sets never do better. Subsets are enumerated in
/// lexicographic order of predecessor positions and the first minimiser wins.
BruteForceResult brute_force_opt(const DiGraph& g, VertexId v, std::size_t budget,
                                 const BruteForceOptions& options = {});

// ---------------------------------------------------------------------------
// Experiment protocol
// ---------------------------------------------------------------------------

/// Uniform sample (without replacement) of `count` vertices with in-degree
/// >= min_in_degree. Returns every qualifying vertex, with a warning, when
/// fewer exist. Output is sorted by id.
std::vector<VertexId> select_targets(const DiGraph& g, std::size_t min_in_degree = 100, std::size_t count = 20,
                                     std::uint64_t seed = 0);

/// floor(fraction * in_degree).
std::size_t budget_from_fraction(std::size_t in_degree, double fraction);

enum class AlgorithmKind { Empty, Random, Degree, Greedy, TopB, Bicriteria };

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::TopB;
  double alpha = 0.5;

  /// "empty", "random", "degree", "greedy", "topb", "bicriteria" or
  /// "bicriteria:<alpha>".
  static AlgorithmSpec parse(std::string_view text, double default_alpha = 0.5);
  /// Name written to the algorithm column, e.g. "bicriteria(0.75)".
  std::string name() const;
};

struct ResultRecord {
  std::string graph;
  std::int64_t target = 0;
  std::size_t in_degree = 0;
  std::size_t budget = 0;
  std::string algorithm;
  double objective = 0.0;
  /// Averaged over draws for random and bicriteria, hence not integral.
  double solution_size = 0.0;
  double wall_time_ms = 0.0;
  std::uint64_t seed = 0;
  /// Empty on success.
  std::string error;
};

struct ExperimentConfig {
  std::string graph_name = "graph";
  std::vector<double> budget_fractions{0.25, 0.5, 0.75};
  std::vector<AlgorithmSpec> algorithms;
  std::uint64_t seed = 0;
  std::size_t random_repeats = 100;
  std::size_t rounding_repeats = 100;
  std::size_t psm_iters = 1000;
  std::chrono::duration<double> time_limit{3600.0};
  /// Labels for the target column; dense ids are written when empty.
  std::vector<std::int64_t> original_ids;
};

/// Runs every algorithm on every (target, budget). Per (algorithm, budget)
/// the targets are visited by decreasing in-degree; if the first (largest)
/// one exceeds the time limit the remaining targets are skipped. Random is
/// averaged over `random_repeats` seeds and the bicriteria rounding over
/// `rounding_repeats` draws from a single relaxation solve. A failing run is
/// recorded with its error message instead of aborting the batch. Records
/// come back sorted by (target, budget, algorithm).
std::vector<ResultRecord> run_experiment(const DiGraph& g, const std::vector<VertexId>& targets,
                                         const ExperimentConfig& config);

inline constexpr std::string_view kResultsHeader = "graph,target,in_degree,budget,algorithm,objective,size,time_ms,seed";

void write_results_csv(std::ostream& out, const std::vector<ResultRecord>& records);

}  // namespace hcm
