#pragma once

// Continuous relaxation of local harmonic-centrality minimisation: the Lovasz
// extension of f_(G,v) over [0,1]^rho(v), minimised on
//
//   C = { x : ||x||_1 <= b, 0 <= x <= 1 }
//
// by a projected subgradient method, followed by randomised threshold
// rounding. Coordinates of a FractionalPoint are aligned with
// in_neighbors(g, v).

#include <Eigen/Core>
#include <algorithm>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "hcm/digraph.hpp"
#include "hcm/errors.hpp"

namespace hcm {

template <typename Scalar>
using FractionalPointTpl = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using FractionalPoint = FractionalPointTpl<double>;

// ---------------------------------------------------------------------------
// Projections
// ---------------------------------------------------------------------------

/// Componentwise clamp to [0, 1].
template <typename Derived>
typename Derived::PlainObject project_box(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  return x.cwiseMax(Scalar(0)).cwiseMin(Scalar(1));
}

/// phi(lambda) = ||clamp(x - lambda 1)||_1 - b; nonincreasing in lambda.
template <typename Derived>
typename Derived::Scalar budget_excess(const Eigen::MatrixBase<Derived>& x, typename Derived::Scalar lambda,
                                       typename Derived::Scalar budget) {
  using Scalar = typename Derived::Scalar;
  return (x.array() - lambda).cwiseMax(Scalar(0)).cwiseMin(Scalar(1)).sum() - budget;
}

struct FeasibleRegion {
  double budget = 0.0;
  Eigen::Index dimension = 0;

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& x, double budget_slack = 0.0) const {
    if (x.size() != dimension) return false;
    if ((x.array() < 0).any() || (x.array() > 1).any()) return false;
    return static_cast<double>(x.sum()) <= budget + budget_slack;
  }
};

/// Euclidean projection onto C. If the clamped point already meets the
/// budget it is returned; otherwise the shift lambda* > 0 with phi(lambda*) = 0
/// is bracketed in [0, max_e x_e] and bisected until the bracket is narrower
/// than `tolerance`. The upper end of the bracket is used, so the result is
/// always inside C exactly.
template <typename Derived>
typename Derived::PlainObject project_budget_box(const Eigen::MatrixBase<Derived>& x,
                                                 typename Derived::Scalar budget,
                                                 typename Derived::Scalar tolerance = 1e-12,
                                                 typename Derived::Scalar* shift = nullptr) {
  using Scalar = typename Derived::Scalar;
  detail::require(budget >= Scalar(0), "budget must be nonnegative");
  detail::require(tolerance > Scalar(0), "bisection tolerance must be positive");
  typename Derived::PlainObject clamped = project_box(x);
  if (shift) *shift = Scalar(0);
  if (clamped.sum() <= budget) return clamped;

  Scalar lo = 0;
  Scalar hi = x.maxCoeff();
  while (hi - lo > tolerance) {
    const Scalar mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (budget_excess(x, mid, budget) > Scalar(0))
      lo = mid;
    else
      hi = mid;
  }
  if (shift) *shift = hi;
  return project_box((x.array() - hi).matrix());
}

template <typename Derived>
typename Derived::PlainObject project_budget_box(const Eigen::MatrixBase<Derived>& x, const FeasibleRegion& region,
                                                 typename Derived::Scalar tolerance = 1e-12) {
  detail::require(x.size() == region.dimension, "point dimension differs from region");
  return project_budget_box(x, static_cast<typename Derived::Scalar>(region.budget), tolerance);
}

// ---------------------------------------------------------------------------
// Lovasz extension
// ---------------------------------------------------------------------------

/// Coordinates sorted by non-increasing value, ties by ascending index. The
/// prefixes X_i = {order[0], ..., order[i-1]} form the chain of level sets.
struct ChainPrefix {
  std::vector<Eigen::Index> order;
};

template <typename Derived>
ChainPrefix chain_prefix(const Eigen::MatrixBase<Derived>& x) {
  ChainPrefix chain;
  chain.order.resize(static_cast<std::size_t>(x.size()));
  std::iota(chain.order.begin(), chain.order.end(), Eigen::Index{0});
  std::stable_sort(chain.order.begin(), chain.order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return x(a) > x(b); });
  return chain;
}

/// A set function over subsets of {0, ..., n-1}, given as 0/1 masks.
template <typename Fn>
concept SetFunction = requires(const Fn& f, std::span<const std::uint8_t> mask) {
  { f(mask) } -> std::convertible_to<double>;
};

/// f(X_0), ..., f(X_n) along the chain.
template <SetFunction Fn>
std::vector<double> chain_values(const Fn& f, const ChainPrefix& chain) {
  std::vector<std::uint8_t> mask(chain.order.size(), 0);
  std::vector<double> values;
  values.reserve(chain.order.size() + 1);
  values.push_back(f(std::span<const std::uint8_t>(mask)));
  for (Eigen::Index e : chain.order) {
    mask[static_cast<std::size_t>(e)] = 1;
    values.push_back(f(std::span<const std::uint8_t>(mask)));
  }
  return values;
}

/// (1 - x_{e_1}) f(X_0) + sum_i (x_{e_i} - x_{e_{i+1}}) f(X_i) + x_{e_n} f(X_n).
template <typename Derived>
typename Derived::Scalar lovasz_from_chain(const Eigen::MatrixBase<Derived>& x, const ChainPrefix& chain,
                                           std::span<const double> values) {
  using Scalar = typename Derived::Scalar;
  const std::size_t n = chain.order.size();
  if (n == 0) return Scalar(values[0]);
  Scalar total = (Scalar(1) - x(chain.order[0])) * Scalar(values[0]);
  for (std::size_t i = 1; i < n; ++i)
    total += (x(chain.order[i - 1]) - x(chain.order[i])) * Scalar(values[i]);
  total += x(chain.order[n - 1]) * Scalar(values[n]);
  return total;
}

/// Component e_i equals f(X_i) - f(X_{i-1}).
inline FractionalPoint subgradient_from_chain(const ChainPrefix& chain, std::span<const double> values) {
  FractionalPoint g(static_cast<Eigen::Index>(chain.order.size()));
  for (std::size_t i = 0; i < chain.order.size(); ++i) g(chain.order[i]) = values[i + 1] - values[i];
  return g;
}

template <SetFunction Fn, typename Derived>
double lovasz_extension(const Fn& f, const Eigen::MatrixBase<Derived>& x) {
  const auto chain = chain_prefix(x);
  const auto values = chain_values(f, chain);
  return static_cast<double>(lovasz_from_chain(x, chain, values));
}

/// f_(G,v) as a set function over masks of rho(v).
class LocalObjective {
 public:
  LocalObjective(const DiGraph& g, VertexId v);

  const DiGraph& graph() const noexcept { return *graph_; }
  VertexId target() const noexcept { return target_; }
  Eigen::Index dimension() const noexcept { return static_cast<Eigen::Index>(graph_->in_degree(target_)); }

  double operator()(std::span<const std::uint8_t> removed_mask) const;

  /// Same as the generic chain_values, with the |rho(v)| + 1 searches spread
  /// over the worker pool.
  std::vector<double> chain_values(const ChainPrefix& chain) const;

 private:
  const DiGraph* graph_;
  VertexId target_;
};

struct LovaszEvaluation {
  double value = 0.0;
  FractionalPoint subgradient;
  ChainPrefix chain;
  std::vector<double> chain_values;
};

/// Value and subgradient from one pass of |rho(v)| + 1 objective evaluations.
/// Throws ContractViolation if x leaves the unit box.
LovaszEvaluation lovasz_evaluate(const LocalObjective& f, const FractionalPoint& x);

double lovasz_eval(const DiGraph& g, VertexId v, const FractionalPoint& x);
FractionalPoint lovasz_subgradient(const DiGraph& g, VertexId v, const FractionalPoint& x);

inline FractionalPoint indicator(const EdgeSubset& subset) {
  FractionalPoint x(static_cast<Eigen::Index>(subset.capacity()));
  for (std::size_t i = 0; i < subset.capacity(); ++i) x(static_cast<Eigen::Index>(i)) = subset.contains_index(i) ? 1.0 : 0.0;
  return x;
}

// ---------------------------------------------------------------------------
// Projected subgradient method
// ---------------------------------------------------------------------------

struct PsmConfig {
  /// Upper bound on max_{x,y in C} ||x - y||^2 / 2.
  double theta = 0.0;
  /// Lipschitz constant of the extension, f(empty) = h_G(v).
  double lipschitz = 0.0;
  std::size_t max_iters = 1000;
  double bisection_tol = 1e-12;
  /// When set, the iteration count is derived from this additive target
  /// instead of max_iters.
  std::optional<double> epsilon_prime;
  bool keep_log = true;
  /// Also store every iterate x_t (memory grows with t * |rho(v)|).
  bool keep_iterates = false;

  /// theta = min(b, |rho(v)| / 2), lipschitz = h_G(v).
  static PsmConfig for_instance(const DiGraph& g, VertexId v, double budget);
};

struct PsmTrace {
  /// Number of projected steps taken; values hold x_0 .. x_iterations.
  std::size_t iterations = 0;
  double best_value = 0.0;
  std::size_t best_iteration = 0;
  FractionalPoint best_point;
  FractionalPoint last_point;
  std::vector<double> values;
  std::vector<double> best_values;
  std::vector<FractionalPoint> iterates;
};

/// 2 (1 + ln 3) L sqrt(2 theta) / sqrt(t + 2): the guaranteed gap of the best
/// iterate after t steps (t >= 2).
double psm_gap_bound(double lipschitz, double theta, std::size_t t);

/// Smallest t with t >= (2 (1 + ln 3) L sqrt(2 theta) / eps')^2 - 2.
std::size_t psm_iterations_for(double lipschitz, double theta, double epsilon_prime);

/// x_{t+1} = proj_C(x_t - eta_t g_t) with eta_t = sqrt(2 theta) / (L sqrt(t + 1)).
/// Returns the best iterate seen. L = 0 means f is identically zero and x0 is
/// returned untouched.
PsmTrace psm_run(const DiGraph& g, VertexId v, const FeasibleRegion& region, const PsmConfig& config,
                 const FractionalPoint& x0);

/// CSV with header "t,value,best_value".
void write_trace_csv(std::ostream& out, const PsmTrace& trace);

// ---------------------------------------------------------------------------
// Rounding and the bicriteria pipeline
// ---------------------------------------------------------------------------

/// p = alpha + (1 - alpha) u, u uniform in [0, 1) from a 64-bit Mersenne
/// twister seeded with `seed`.
double draw_threshold(double alpha, std::uint64_t seed);

/// Mask of coordinates with x_e >= p.
std::vector<std::uint8_t> threshold_mask(const FractionalPoint& x, double p);

EdgeSubset round_solution(const DiGraph& g, VertexId v, const FractionalPoint& x_star, double alpha,
                          std::uint64_t seed);

struct BicriteriaOptions {
  double alpha = 0.5;
  /// Multiplicative-side slack; the relaxation is then solved to
  /// eps' = (1 - alpha) eps. Without it, max_iters steps are taken.
  std::optional<double> epsilon;
  std::size_t max_iters = 1000;
  std::uint64_t seed = 0;
  std::optional<FractionalPoint> x0;
  double bisection_tol = 1e-12;
};

/// Runs the subgradient method on the relaxation for (g, v, budget).
PsmTrace solve_relaxation(const DiGraph& g, VertexId v, std::size_t budget, const BicriteriaOptions& options);

/// Relaxation followed by one threshold rounding. The result may exceed the
/// budget; |F| <= b / alpha only holds in expectation.
EdgeSubset bicriteria_solve(const DiGraph& g, VertexId v, std::size_t budget, const BicriteriaOptions& options);

}  // namespace hcm
