#include "hcm/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

#include "hcm/baselines.hpp"
#include "hcm/centrality.hpp"
#include "hcm/errors.hpp"
#include "hcm/relaxation.hpp"
#include "hcm/scalable.hpp"

namespace hcm {

void KUnionInstance::validate() const {
  detail::require(!sets.empty(), "set system is empty");
  detail::require(k >= 1 && k <= sets.size(), "k must lie in [1, m]");
  std::vector<std::uint8_t> covered(universe, 0);
  for (const auto& s : sets)
    for (std::size_t e : s) {
      detail::require(e < universe, "set element outside the ground set");
      covered[e] = 1;
    }
  detail::require(std::all_of(covered.begin(), covered.end(), [](auto c) { return c != 0; }),
                  "sets do not cover the ground set");
}

Instance gadget_kunion(const KUnionInstance& instance) {
  instance.validate();
  const std::size_t m = instance.sets.size();
  std::vector<Edge> edges;
  for (std::size_t j = 0; j < m; ++j) {
    const auto set_vertex = static_cast<VertexId>(1 + j);
    edges.push_back({set_vertex, 0});
    for (std::size_t e : instance.sets[j]) edges.push_back({static_cast<VertexId>(1 + m + e), set_vertex});
  }
  return {DiGraph(1 + m + instance.universe, std::move(edges)), 0, m - instance.k};
}

Instance gadget_greedy_adversarial(std::size_t k) {
  detail::require(k >= 2, "gadget needs k >= 2");
  const VertexId target = 0, n_left = 1, o_left = 2;
  const auto n_right = [](std::size_t i) { return static_cast<VertexId>(3 + i); };
  const auto o_right = [k](std::size_t i) { return static_cast<VertexId>(3 + k + i); };
  std::vector<Edge> edges{{n_left, target}, {o_left, n_left}};
  for (std::size_t i = 0; i < k; ++i) {
    edges.push_back({n_right(i), target});
    for (std::size_t j = 0; j < k; ++j) edges.push_back({o_right(i), n_right(j)});
  }
  return {DiGraph(3 + 2 * k, std::move(edges)), target, k};
}

Instance gadget_alg1_adversarial(std::size_t k) {
  detail::require(k >= 2, "gadget needs k >= 2");
  const VertexId target = 0;
  const auto n_left = [](std::size_t i) { return static_cast<VertexId>(1 + i); };
  const auto n_right = [k](std::size_t i) { return static_cast<VertexId>(1 + k + i); };
  const auto o_right = [k](std::size_t i) { return static_cast<VertexId>(1 + 2 * k + i); };
  const auto o_left = [k](std::size_t i) { return static_cast<VertexId>(1 + 3 * k + i); };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) {
    edges.push_back({n_left(i), target});
    edges.push_back({n_right(i), target});
    for (std::size_t j = 0; j < k; ++j) edges.push_back({o_right(i), n_right(j)});
  }
  for (std::size_t i = 0; i < k * (k - 1); ++i) edges.push_back({o_left(i), n_left(i / (k - 1))});
  return {DiGraph(1 + 3 * k + k * (k - 1), std::move(edges)), target, k};
}

DiGraph random_digraph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId w = 0; w < n; ++w)
      if (u != w && coin(rng)) edges.push_back({u, w});
  return DiGraph(n, std::move(edges));
}

DiGraph preferential_attachment(std::size_t n, std::size_t out_per_vertex, std::uint64_t seed) {
  detail::require(n >= 2, "need at least two vertices");
  std::mt19937_64 rng(seed);
  // Every vertex appears once per incoming edge plus once for the +1 smoothing.
  std::vector<VertexId> urn{0};
  urn.reserve(n * (out_per_vertex + 1));
  std::vector<Edge> edges;
  edges.reserve(n * out_per_vertex);
  std::vector<VertexId> picked;
  for (VertexId u = 1; u < n; ++u) {
    const std::size_t want = std::min<std::size_t>(out_per_vertex, u);
    picked.clear();
    while (picked.size() < want) {
      std::uniform_int_distribution<std::size_t> draw(0, urn.size() - 1);
      const VertexId w = urn[draw(rng)];
      if (std::find(picked.begin(), picked.end(), w) == picked.end()) picked.push_back(w);
    }
    for (VertexId w : picked) {
      edges.push_back({u, w});
      urn.push_back(w);
    }
    urn.push_back(u);
  }
  return DiGraph(n, std::move(edges));
}

// ---------------------------------------------------------------------------

namespace {

double binomial(std::size_t n, std::size_t k) {
  double result = 1.0;
  for (std::size_t i = 1; i <= k; ++i) result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  return result;
}

}  // namespace

BruteForceResult brute_force_opt(const DiGraph& g, VertexId v, std::size_t budget, const BruteForceOptions& options) {
  detail::require(g.contains(v), "target vertex out of range");
  const std::size_t m = g.in_degree(v);
  const std::size_t b = std::min(budget, m);
  const std::size_t smallest = options.all_sizes ? 0 : b;

  double subsets = 0.0;
  for (std::size_t s = smallest; s <= b; ++s) subsets += binomial(m, s);
  const double work = subsets * static_cast<double>(g.num_vertices() + g.num_edges());
  if (work > options.work_cap)
    throw WorkCapExceeded("exhaustive search needs ~" + std::to_string(work) + " steps, cap is " +
                          std::to_string(options.work_cap));

  BruteForceResult result{EdgeSubset(g, v), std::numeric_limits<double>::infinity(), 0};
  BfsWorkspace workspace(g.num_vertices());
  std::vector<std::uint8_t> mask(m, 0);
  std::vector<std::size_t> combo;
  for (std::size_t s = smallest; s <= b; ++s) {
    combo.resize(s);
    std::iota(combo.begin(), combo.end(), std::size_t{0});
    while (true) {
      std::fill(mask.begin(), mask.end(), std::uint8_t{0});
      for (std::size_t i : combo) mask[i] = 1;
      const double value = workspace.harmonic(ResidualView(g, v, mask), v);
      ++result.evaluated;
      if (value < result.value) {
        result.value = value;
        result.solution = EdgeSubset::from_mask(g, v, mask);
      }
      // Advance to the next s-combination in lexicographic order.
      std::size_t i = s;
      while (i > 0 && combo[i - 1] == m - s + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < s; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

std::vector<VertexId> select_targets(const DiGraph& g, std::size_t min_in_degree, std::size_t count,
                                     std::uint64_t seed) {
  std::vector<VertexId> qualifying;
  for (VertexId u = 0; u < g.num_vertices(); ++u)
    if (g.in_degree(u) >= min_in_degree) qualifying.push_back(u);
  if (count == 0) return {};
  if (qualifying.size() <= count) {
    if (qualifying.size() < count)
      std::cerr << "warning: only " << qualifying.size() << " vertices have in-degree >= " << min_in_degree
                << " (wanted " << count << ")\n";
    return qualifying;
  }
  std::vector<VertexId> sample;
  std::mt19937_64 rng(seed);
  std::sample(qualifying.begin(), qualifying.end(), std::back_inserter(sample), count, rng);
  std::sort(sample.begin(), sample.end());
  return sample;
}

std::size_t budget_from_fraction(std::size_t in_degree, double fraction) {
  detail::require(fraction >= 0.0, "budget fraction must be nonnegative");
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(in_degree)));
}

AlgorithmSpec AlgorithmSpec::parse(std::string_view text, double default_alpha) {
  AlgorithmSpec spec;
  spec.alpha = default_alpha;
  std::string_view head = text;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    head = text.substr(0, colon);
    const auto tail = text.substr(colon + 1);
    double alpha = 0.0;
    const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), alpha);
    if (head != "bicriteria" || ec != std::errc{} || ptr != tail.data() + tail.size())
      throw std::invalid_argument("bad algorithm spec '" + std::string(text) + "'");
    spec.alpha = alpha;
  }
  static const std::map<std::string_view, AlgorithmKind> kinds{
      {"empty", AlgorithmKind::Empty},   {"random", AlgorithmKind::Random}, {"degree", AlgorithmKind::Degree},
      {"greedy", AlgorithmKind::Greedy}, {"topb", AlgorithmKind::TopB},     {"bicriteria", AlgorithmKind::Bicriteria}};
  const auto it = kinds.find(head);
  if (it == kinds.end()) throw std::invalid_argument("unknown algorithm '" + std::string(text) + "'");
  spec.kind = it->second;
  if (spec.kind == AlgorithmKind::Bicriteria && !(spec.alpha > 0.0 && spec.alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  return spec;
}

std::string AlgorithmSpec::name() const {
  switch (kind) {
    case AlgorithmKind::Empty: return "empty";
    case AlgorithmKind::Random: return "random";
    case AlgorithmKind::Degree: return "degree";
    case AlgorithmKind::Greedy: return "greedy";
    case AlgorithmKind::TopB: return "topb";
    case AlgorithmKind::Bicriteria: {
      std::ostringstream out;
      out << "bicriteria(" << alpha << ')';
      return out.str();
    }
  }
  return "unknown";
}

namespace {

struct Outcome {
  double objective;
  double size;
};

Outcome run_one(const DiGraph& g, VertexId v, std::size_t b, const AlgorithmSpec& spec,
                const ExperimentConfig& config) {
  const auto single = [&](const EdgeSubset& f) {
    return Outcome{objective(g, v, f), static_cast<double>(f.size())};
  };
  switch (spec.kind) {
    case AlgorithmKind::Empty: return single(empty_baseline(g, v, b));
    case AlgorithmKind::Degree: return single(degree_baseline(g, v, b));
    case AlgorithmKind::Greedy: return single(greedy(g, v, b));
    case AlgorithmKind::TopB: return single(top_b_cut(g, v, b));
    case AlgorithmKind::Random: {
      Outcome mean{0.0, 0.0};
      const std::size_t repeats = std::max<std::size_t>(config.random_repeats, 1);
      for (std::size_t r = 0; r < repeats; ++r) {
        const auto o = single(random_baseline(g, v, b, config.seed + r));
        mean.objective += o.objective;
        mean.size += o.size;
      }
      return {mean.objective / static_cast<double>(repeats), mean.size / static_cast<double>(repeats)};
    }
    case AlgorithmKind::Bicriteria: {
      BicriteriaOptions options;
      options.alpha = spec.alpha;
      options.max_iters = config.psm_iters;
      const auto trace = solve_relaxation(g, v, b, options);
      Outcome mean{0.0, 0.0};
      const std::size_t repeats = std::max<std::size_t>(config.rounding_repeats, 1);
      for (std::size_t r = 0; r < repeats; ++r) {
        const auto o = single(round_solution(g, v, trace.best_point, spec.alpha, config.seed + r));
        mean.objective += o.objective;
        mean.size += o.size;
      }
      return {mean.objective / static_cast<double>(repeats), mean.size / static_cast<double>(repeats)};
    }
  }
  throw std::logic_error("unhandled algorithm");
}

}  // namespace

std::vector<ResultRecord> run_experiment(const DiGraph& g, const std::vector<VertexId>& targets,
                                         const ExperimentConfig& config) {
  detail::require(config.original_ids.empty() || config.original_ids.size() == g.num_vertices(),
                  "label table size differs from vertex count");
  std::vector<VertexId> order(targets);
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return g.in_degree(a) > g.in_degree(b); });

  std::vector<ResultRecord> records;
  for (double fraction : config.budget_fractions) {
    for (const auto& spec : config.algorithms) {
      for (std::size_t i = 0; i < order.size(); ++i) {
        const VertexId v = order[i];
        ResultRecord rec;
        rec.graph = config.graph_name;
        rec.target = config.original_ids.empty() ? static_cast<std::int64_t>(v) : config.original_ids[v];
        rec.in_degree = g.in_degree(v);
        rec.budget = budget_from_fraction(rec.in_degree, fraction);
        rec.algorithm = spec.name();
        rec.seed = config.seed;

        const auto start = std::chrono::steady_clock::now();
        try {
          const auto outcome = run_one(g, v, rec.budget, spec, config);
          rec.objective = outcome.objective;
          rec.solution_size = outcome.size;
        } catch (const std::exception& e) {
          rec.objective = std::numeric_limits<double>::quiet_NaN();
          rec.error = e.what();
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        rec.wall_time_ms = elapsed.count() * 1000.0;
        records.push_back(std::move(rec));

        if (i == 0 && elapsed > config.time_limit && order.size() > 1) {
          std::cerr << "note: " << spec.name() << " exceeded the time limit on the largest target at fraction "
                    << fraction << "; skipping " << order.size() - 1 << " remaining targets\n";
          break;
        }
      }
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const ResultRecord& a, const ResultRecord& b) {
    return std::tie(a.target, a.budget, a.algorithm) < std::tie(b.target, b.budget, b.algorithm);
  });
  return records;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRecord>& records) {
  out << kResultsHeader << '\n';
  const auto old_precision = out.precision(12);
  for (const auto& r : records) {
    out << r.graph << ',' << r.target << ',' << r.in_degree << ',' << r.budget << ',' << r.algorithm << ',';
    if (std::isnan(r.objective))
      out << "nan";
    else
      out << r.objective;
    out << ',' << r.solution_size << ',' << std::fixed << std::setprecision(3) << r.wall_time_ms
        << std::defaultfloat << std::setprecision(12) << ',' << r.seed << '\n';
  }
  out.precision(old_precision);
}

}  // namespace hcm
