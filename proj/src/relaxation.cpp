#include "hcm/relaxation.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>

#include "hcm/baselines.hpp"
#include "hcm/centrality.hpp"
#include "hcm/parallel.hpp"

namespace hcm {

LocalObjective::LocalObjective(const DiGraph& g, VertexId v) : graph_(&g), target_(v) {
  detail::require(g.contains(v), "target vertex out of range");
}

double LocalObjective::operator()(std::span<const std::uint8_t> removed_mask) const {
  return objective(*graph_, target_, removed_mask);
}

std::vector<double> LocalObjective::chain_values(const ChainPrefix& chain) const {
  const std::size_t n = chain.order.size();
  detail::require(n == graph_->in_degree(target_), "chain length differs from in-degree of target");
  std::vector<double> values(n + 1);
  const std::size_t workers = std::min(worker_count(), n + 1);
  std::vector<BfsWorkspace> workspaces(workers);
  std::vector<std::vector<std::uint8_t>> masks(workers);
  parallel_for(n + 1, [&](std::size_t worker, std::size_t i) {
    auto& mask = masks[worker];
    mask.assign(n, 0);
    for (std::size_t j = 0; j < i; ++j) mask[static_cast<std::size_t>(chain.order[j])] = 1;
    values[i] = workspaces[worker].harmonic(ResidualView(*graph_, target_, mask), target_);
  });
  return values;
}

LovaszEvaluation lovasz_evaluate(const LocalObjective& f, const FractionalPoint& x) {
  detail::require(x.size() == f.dimension(), "point dimension differs from in-degree of target");
  detail::require(!(x.array() < 0.0).any() && !(x.array() > 1.0).any(), "point lies outside the unit box");
  LovaszEvaluation eval;
  eval.chain = chain_prefix(x);
  eval.chain_values = f.chain_values(eval.chain);
  eval.value = lovasz_from_chain(x, eval.chain, eval.chain_values);
  eval.subgradient = subgradient_from_chain(eval.chain, eval.chain_values);
  return eval;
}

double lovasz_eval(const DiGraph& g, VertexId v, const FractionalPoint& x) {
  return lovasz_evaluate(LocalObjective(g, v), x).value;
}

FractionalPoint lovasz_subgradient(const DiGraph& g, VertexId v, const FractionalPoint& x) {
  return lovasz_evaluate(LocalObjective(g, v), x).subgradient;
}

// ---------------------------------------------------------------------------

namespace {
const double kGapConstant = 2.0 * (1.0 + std::log(3.0));
}

PsmConfig PsmConfig::for_instance(const DiGraph& g, VertexId v, double budget) {
  PsmConfig config;
  const double dimension = static_cast<double>(g.in_degree(v));
  config.theta = std::min(budget, dimension / 2.0);
  config.lipschitz = harmonic(g, v);
  return config;
}

double psm_gap_bound(double lipschitz, double theta, std::size_t t) {
  return kGapConstant * lipschitz * std::sqrt(2.0 * theta) / std::sqrt(static_cast<double>(t) + 2.0);
}

std::size_t psm_iterations_for(double lipschitz, double theta, double epsilon_prime) {
  detail::require(epsilon_prime > 0.0, "epsilon' must be positive");
  const double ratio = kGapConstant * lipschitz * std::sqrt(2.0 * theta) / epsilon_prime;
  return static_cast<std::size_t>(std::ceil(std::max(0.0, ratio * ratio - 2.0)));
}

PsmTrace psm_run(const DiGraph& g, VertexId v, const FeasibleRegion& region, const PsmConfig& config,
                 const FractionalPoint& x0) {
  const LocalObjective f(g, v);
  detail::require(region.dimension == f.dimension(), "region dimension differs from in-degree of target");
  detail::require(region.contains(x0, static_cast<double>(region.dimension) * config.bisection_tol),
                  "initial point lies outside the feasible region");
  detail::require(config.theta > 0.0 || region.dimension == 0, "theta must be positive");
  detail::require(config.lipschitz >= 0.0, "Lipschitz constant must be nonnegative");
  detail::require(config.bisection_tol > 0.0, "bisection tolerance must be positive");

  PsmTrace trace;
  trace.best_point = x0;
  trace.last_point = x0;
  if (config.lipschitz == 0.0 || region.dimension == 0) {
    trace.best_value = config.lipschitz;
    if (config.keep_log) {
      trace.values.push_back(trace.best_value);
      trace.best_values.push_back(trace.best_value);
    }
    return trace;
  }

  const std::size_t steps = config.epsilon_prime
                                ? psm_iterations_for(config.lipschitz, config.theta, *config.epsilon_prime)
                                : config.max_iters;
  const double step_scale = std::sqrt(2.0 * config.theta) / config.lipschitz;

  FractionalPoint x = x0;
  for (std::size_t t = 0;; ++t) {
    const auto eval = lovasz_evaluate(f, x);
    if (t == 0 || eval.value < trace.best_value) {
      trace.best_value = eval.value;
      trace.best_point = x;
      trace.best_iteration = t;
    }
    if (config.keep_log) {
      trace.values.push_back(eval.value);
      trace.best_values.push_back(trace.best_value);
    }
    if (config.keep_iterates) trace.iterates.push_back(x);
    if (t == steps) break;
    const double eta = step_scale / std::sqrt(static_cast<double>(t) + 1.0);
    x = project_budget_box((x - eta * eval.subgradient).eval(), region.budget, config.bisection_tol);
  }
  trace.iterations = steps;
  trace.last_point = std::move(x);
  return trace;
}

void write_trace_csv(std::ostream& out, const PsmTrace& trace) {
  out << "t,value,best_value\n";
  const auto old_precision = out.precision(17);
  for (std::size_t t = 0; t < trace.values.size(); ++t)
    out << t << ',' << trace.values[t] << ',' << trace.best_values[t] << '\n';
  out.precision(old_precision);
}

// ---------------------------------------------------------------------------

double draw_threshold(double alpha, std::uint64_t seed) {
  detail::require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  std::mt19937_64 rng(seed);
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return alpha + (1.0 - alpha) * u;
}

std::vector<std::uint8_t> threshold_mask(const FractionalPoint& x, double p) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(x.size()));
  for (Eigen::Index e = 0; e < x.size(); ++e) mask[static_cast<std::size_t>(e)] = x(e) >= p ? 1 : 0;
  return mask;
}

EdgeSubset round_solution(const DiGraph& g, VertexId v, const FractionalPoint& x_star, double alpha,
                          std::uint64_t seed) {
  detail::require(x_star.size() == static_cast<Eigen::Index>(g.in_degree(v)),
                  "point dimension differs from in-degree of target");
  const double p = draw_threshold(alpha, seed);
  return EdgeSubset::from_mask(g, v, threshold_mask(x_star, p));
}

PsmTrace solve_relaxation(const DiGraph& g, VertexId v, std::size_t budget, const BicriteriaOptions& options) {
  detail::require(options.alpha > 0.0 && options.alpha < 1.0, "alpha must lie in (0, 1)");
  const std::size_t b = clamp_budget(g, v, budget);
  const auto dimension = static_cast<Eigen::Index>(g.in_degree(v));
  const FeasibleRegion region{static_cast<double>(b), dimension};
  if (b == 0) {
    PsmTrace trace;
    trace.best_point = FractionalPoint::Zero(dimension);
    trace.last_point = trace.best_point;
    trace.best_value = harmonic(g, v);
    return trace;
  }

  auto config = PsmConfig::for_instance(g, v, static_cast<double>(b));
  config.max_iters = options.max_iters;
  config.bisection_tol = options.bisection_tol;
  if (options.epsilon) {
    detail::require(*options.epsilon > 0.0, "epsilon must be positive");
    config.epsilon_prime = (1.0 - options.alpha) * *options.epsilon;
  }
  const FractionalPoint x0 = options.x0 ? *options.x0 : FractionalPoint::Zero(dimension);
  return psm_run(g, v, region, config, x0);
}

EdgeSubset bicriteria_solve(const DiGraph& g, VertexId v, std::size_t budget, const BicriteriaOptions& options) {
  const auto trace = solve_relaxation(g, v, budget, options);
  return round_solution(g, v, trace.best_point, options.alpha, options.seed);
}

}  // namespace hcm
