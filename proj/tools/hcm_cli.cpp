// Command-line front end: solve, bench, gadget, oracle, trace, generate.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "hcm/baselines.hpp"
#include "hcm/centrality.hpp"
#include "hcm/harness.hpp"
#include "hcm/parallel.hpp"
#include "hcm/relaxation.hpp"
#include "hcm/scalable.hpp"

namespace {

using namespace hcm;

VertexId resolve_target(const ParsedGraph& parsed, std::int64_t label) {
  const auto id = parsed.dense_id(label);
  if (!id) throw std::runtime_error("vertex " + std::to_string(label) + " does not occur in the graph");
  return *id;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, sep);)
    if (!item.empty()) parts.push_back(item);
  return parts;
}

void print_solution(const ParsedGraph& parsed, VertexId v, const EdgeSubset& f) {
  for (VertexId w : f.members())
    std::cout << parsed.original_ids[w] << ' ' << parsed.original_ids[v] << '\n';
  std::cout << std::setprecision(12) << "size=" << f.size() << " objective=" << objective(parsed.graph, v, f)
            << '\n';
}

KUnionInstance parse_sets(const std::string& text, std::size_t k) {
  KUnionInstance instance;
  instance.k = k;
  for (const auto& block : split(text, '/')) {
    std::vector<std::size_t> set;
    for (const auto& item : split(block, ',')) set.push_back(std::stoul(item));
    for (std::size_t e : set) instance.universe = std::max(instance.universe, e + 1);
    instance.sets.push_back(std::move(set));
  }
  return instance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local harmonic centrality minimisation"};
  app.require_subcommand(1);

  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  // solve
  auto* solve = app.add_subcommand("solve", "Run one algorithm on one target");
  std::string graph_path;
  std::int64_t target_label = 0;
  std::size_t budget = 0;
  double budget_frac = 0.0;
  std::string algo = "topb";
  double alpha = 0.5;
  std::size_t iters = 1000;
  std::uint64_t seed = 0;
  solve->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
  solve->add_option("--target", target_label)->required();
  auto* budget_opt = solve->add_option("--budget", budget);
  auto* frac_opt = solve->add_option("--budget-frac", budget_frac);
  budget_opt->excludes(frac_opt);
  solve->add_option("--algo", algo)
      ->check(CLI::IsMember({"empty", "random", "degree", "greedy", "topb", "bicriteria"}));
  solve->add_option("--alpha", alpha);
  solve->add_option("--iters", iters);
  solve->add_option("--seed", seed);

  // bench
  auto* bench = app.add_subcommand("bench", "Run the experiment protocol and write results CSV");
  std::string targets_arg = "auto";
  std::vector<double> fracs{0.25, 0.5, 0.75};
  std::string algos_arg = "empty,random,degree,greedy,topb";
  std::string out_path;
  double time_limit = 3600.0;
  std::size_t min_indegree = 100;
  std::size_t target_count = 20;
  std::size_t random_repeats = 100;
  std::size_t rounding_repeats = 100;
  std::string graph_name;
  bench->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
  bench->add_option("--targets", targets_arg, "auto or comma-separated vertex ids");
  bench->add_option("--budget-fracs", fracs)->delimiter(',');
  bench->add_option("--algos", algos_arg, "comma list; bicriteria:<alpha> selects alpha");
  bench->add_option("--out", out_path)->required();
  bench->add_option("--time-limit-secs", time_limit);
  bench->add_option("--seed", seed);
  bench->add_option("--alpha", alpha, "Default alpha for bicriteria");
  bench->add_option("--iters", iters, "Subgradient steps for bicriteria");
  bench->add_option("--min-indegree", min_indegree);
  bench->add_option("--count", target_count);
  bench->add_option("--random-repeats", random_repeats);
  bench->add_option("--rounding-repeats", rounding_repeats);
  bench->add_option("--name", graph_name, "Graph name column (default: file stem)");

  // gadget
  auto* gadget = app.add_subcommand("gadget", "Write a hardness or tightness gadget as an edge list");
  std::string gadget_kind;
  std::size_t k = 2;
  std::string sets_arg;
  gadget->add_option("kind", gadget_kind)->required()->check(CLI::IsMember({"kunion", "greedy-adv", "alg1-adv"}));
  gadget->add_option("--k", k)->required();
  gadget->add_option("--sets", sets_arg, "kunion only: sets as '0,1/1/0,1' (sets separated by '/')");
  gadget->add_option("--out", out_path);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum");
  double work_cap = 1e8;
  oracle->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
  oracle->add_option("--target", target_label)->required();
  oracle->add_option("--budget", budget)->required();
  oracle->add_option("--work-cap", work_cap);

  // trace
  auto* trace = app.add_subcommand("trace", "Log the projected subgradient method");
  trace->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
  trace->add_option("--target", target_label)->required();
  trace->add_option("--budget", budget)->required();
  trace->add_option("--iters", iters);
  trace->add_option("--out", out_path)->required();

  // generate
  auto* generate = app.add_subcommand("generate", "Write a synthetic edge list");
  std::string model;
  std::size_t n = 1000;
  std::size_t out_degree = 5;
  double p = 0.01;
  generate->add_option("model", model)->required()->check(CLI::IsMember({"pa", "gnp"}));
  generate->add_option("--n", n);
  generate->add_option("--m", out_degree, "pa: edges added per vertex");
  generate->add_option("--p", p, "gnp: edge probability");
  generate->add_option("--seed", seed);
  generate->add_option("--out", out_path)->required();

  CLI11_PARSE(app, argc, argv);
  set_worker_count(threads);

  try {
    if (*solve) {
      const auto parsed = load_edge_list(graph_path);
      const VertexId v = resolve_target(parsed, target_label);
      const auto& g = parsed.graph;
      const std::size_t b = *frac_opt ? budget_from_fraction(g.in_degree(v), budget_frac) : budget;
      EdgeSubset f;
      if (algo == "empty") f = empty_baseline(g, v, b);
      else if (algo == "random") f = random_baseline(g, v, b, seed);
      else if (algo == "degree") f = degree_baseline(g, v, b);
      else if (algo == "greedy") f = greedy(g, v, b);
      else if (algo == "topb") f = top_b_cut(g, v, b);
      else {
        BicriteriaOptions options;
        options.alpha = alpha;
        options.max_iters = iters;
        options.seed = seed;
        f = bicriteria_solve(g, v, b, options);
      }
      print_solution(parsed, v, f);
    } else if (*bench) {
      const auto parsed = load_edge_list(graph_path);
      std::vector<VertexId> targets;
      if (targets_arg == "auto")
        targets = select_targets(parsed.graph, min_indegree, target_count, seed);
      else
        for (const auto& item : split(targets_arg, ',')) targets.push_back(resolve_target(parsed, std::stoll(item)));

      ExperimentConfig config;
      config.graph_name = graph_name.empty() ? std::filesystem::path(graph_path).stem().string() : graph_name;
      config.budget_fractions = fracs;
      for (const auto& item : split(algos_arg, ',')) config.algorithms.push_back(AlgorithmSpec::parse(item, alpha));
      config.seed = seed;
      config.random_repeats = random_repeats;
      config.rounding_repeats = rounding_repeats;
      config.psm_iters = iters;
      config.time_limit = std::chrono::duration<double>(time_limit);
      config.original_ids = parsed.original_ids;

      const auto records = run_experiment(parsed.graph, targets, config);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      write_results_csv(out, records);
      std::size_t failed = 0;
      for (const auto& r : records)
        if (!r.error.empty()) {
          ++failed;
          std::cerr << "error: target " << r.target << ' ' << r.algorithm << ": " << r.error << '\n';
        }
      std::cout << records.size() << " records (" << failed << " failed) written to " << out_path << '\n';
    } else if (*gadget) {
      Instance instance;
      if (gadget_kind == "kunion") {
        if (sets_arg.empty()) throw std::runtime_error("kunion needs --sets");
        instance = gadget_kunion(parse_sets(sets_arg, k));
      } else if (gadget_kind == "greedy-adv") {
        instance = gadget_greedy_adversarial(k);
      } else {
        instance = gadget_alg1_adversarial(k);
      }
      std::ostringstream sidecar;
      sidecar << "target=" << instance.target << " budget=" << instance.budget;
      if (out_path.empty()) {
        write_edge_list(std::cout, instance.graph);
        std::cout << "# " << sidecar.str() << '\n';
      } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        write_edge_list(out, instance.graph);
        std::ofstream(out_path + ".meta") << sidecar.str() << '\n';
        std::cout << sidecar.str() << '\n';
      }
    } else if (*oracle) {
      const auto parsed = load_edge_list(graph_path);
      const VertexId v = resolve_target(parsed, target_label);
      BruteForceOptions options;
      options.work_cap = work_cap;
      const auto best = brute_force_opt(parsed.graph, v, budget, options);
      print_solution(parsed, v, best.solution);
    } else if (*trace) {
      const auto parsed = load_edge_list(graph_path);
      const VertexId v = resolve_target(parsed, target_label);
      BicriteriaOptions options;
      options.max_iters = iters;
      const auto log = solve_relaxation(parsed.graph, v, budget, options);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      write_trace_csv(out, log);
      std::cout << std::setprecision(12) << "iterations=" << log.iterations << " best_value=" << log.best_value
                << '\n';
    } else if (*generate) {
      const DiGraph g = model == "pa" ? preferential_attachment(n, out_degree, seed) : random_digraph(n, p, seed);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      out << "% " << model << " n=" << n << " seed=" << seed << '\n';
      write_edge_list(out, g);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
