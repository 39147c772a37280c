#pragma once

#include <cstdint>
#include <functional>

#include "prolab/difference.hpp"
#include "prolab/model.hpp"

namespace prolab {

using Objective = std::function<double(const Eigen::VectorXd&)>;

/// Box constraints; empty vectors mean unbounded.
struct Bounds {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  Eigen::VectorXd project(const Eigen::VectorXd& x) const;
};

struct MinimizeOptions {
  int max_iters = 4000;
  /// Stop when the simplex's objective spread falls below this.
  double tolerance = 1e-10;
  double initial_step = 0.1;
  /// Fresh simplices built around the best point after convergence.
  int restarts = 2;
};

struct MinimizeResult {
  Eigen::VectorXd x;
  double f;
  int evaluations;
  /// Best objective after each iteration; non-increasing.
  std::vector<double> trace;
};

using Minimizer = std::function<MinimizeResult(const Objective&, const Eigen::VectorXd&,
                                               const Bounds&, const MinimizeOptions&)>;

/// Adaptive Nelder-Mead (dimension-dependent coefficients) with restarts.
/// Trial points are projected onto the bounds.
MinimizeResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const Bounds& bounds,
                           const MinimizeOptions& options = {});

inline MinimizeResult minimize(const Objective& f, const Eigen::VectorXd& x0,
                               const Bounds& bounds = {}, const MinimizeOptions& options = {}) {
  return nelder_mead(f, x0, bounds, options);
}

/// U of the proLab built from mu plus weight·Σ max(0, -f_i)². When the
/// transform cannot be built or applied, returns the penalty plus 1.
double penalized_objective(const MetricParams& mu, const PairCache& cache,
                           double penalty_weight = 1e6,
                           const WhitePoint& white = WhitePoint::d65());

struct FitConfig {
  std::size_t n_pairs = 10000;
  std::uint64_t seed = 1;
  double penalty_weight = 1e6;
  int n_starts = 32;
  int max_iters = 4000;
  double tolerance = 1e-10;
  int hull_resolution = 128;
  /// Local searcher; defaults to nelder_mead.
  Minimizer minimizer;

  /// Throws InvalidArgument on a malformed configuration.
  void validate() const;
};

struct FitResult {
  MetricParams mu;
  double objective;
  double u_train;
  double constraint_min;
  int start_index;
  int evaluations;
};

/// Accepted results satisfy constraint_min >= -kFeasibilityTolerance.
inline constexpr double kFeasibilityTolerance = 1e-9;

/// Start points: identity, published, then identity plus U[-0.5, 0.5]^8
/// (with mu1·mu4 kept positive).
std::vector<MetricParams> start_points(int n_starts, std::uint64_t seed);

/// Moves mu onto the feasible set with minimum-norm Gauss-Newton steps on
/// the violated constraints. Returns mu unchanged when already feasible.
MetricParams restore_feasibility(const MetricParams& mu, int max_steps = 20);

/// Multistart fit on pairs sampled from the D65 gamut.
FitResult fit_metric_params(const FitConfig& cfg);
/// Multistart fit on a prepared training cache.
FitResult fit_metric_params(const FitConfig& cfg, const PairCache& training);

}  // namespace prolab
