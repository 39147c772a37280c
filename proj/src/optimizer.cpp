#include "prolab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prolab/error.hpp"
#include "prolab/gamut.hpp"
#include "prolab/parallel.hpp"
#include "prolab/rng.hpp"

namespace prolab {

Eigen::VectorXd Bounds::project(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out = x;
  if (lo.size() == x.size()) out = out.cwiseMax(lo);
  if (hi.size() == x.size()) out = out.cwiseMin(hi);
  return out;
}

namespace {

struct Simplex {
  std::vector<Eigen::VectorXd> x;
  std::vector<double> f;
};

}  // namespace

MinimizeResult nelder_mead(const Objective& fn, const Eigen::VectorXd& x0, const Bounds& bounds,
                           const MinimizeOptions& options) {
  const Eigen::Index n = x0.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty start point");
  const double dim = static_cast<double>(n);
  const double alpha = 1.0;
  const double gamma = 1.0 + 2.0 / dim;
  const double rho = 0.75 - 1.0 / (2.0 * dim);
  const double sigma = 1.0 - 1.0 / dim;

  MinimizeResult result;
  result.evaluations = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++result.evaluations;
    const double v = fn(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  Eigen::VectorXd best = bounds.project(x0);
  double best_f = eval(best);
  int iterations = 0;

  for (int round = 0; round <= options.restarts && iterations < options.max_iters; ++round) {
    Simplex s;
    s.x.push_back(best);
    s.f.push_back(best_f);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::VectorXd v = best;
      const double step = options.initial_step * std::max(1.0, std::abs(best(i)));
      v(i) += step;
      Eigen::VectorXd p = bounds.project(v);
      if (p == best) {
        v(i) = best(i) - step;
        p = bounds.project(v);
      }
      s.x.push_back(p);
      s.f.push_back(eval(p));
    }
    std::vector<int> order(n + 1);

    for (; iterations < options.max_iters; ++iterations) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return s.f[a] < s.f[b]; });
      const int lo = order.front(), hi = order.back(), second = order[n - 1];
      if (s.f[lo] < best_f) {
        best_f = s.f[lo];
        best = s.x[lo];
      }
      result.trace.push_back(best_f);
      if (std::abs(s.f[hi] - s.f[lo]) <= options.tolerance) break;

      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
      for (int i : order)
        if (i != hi) centroid += s.x[i];
      centroid /= dim;

      const Eigen::VectorXd xr = bounds.project(centroid + alpha * (centroid - s.x[hi]));
      const double fr = eval(xr);
      if (fr < s.f[lo]) {
        const Eigen::VectorXd xe = bounds.project(centroid + gamma * (xr - centroid));
        const double fe = eval(xe);
        if (fe < fr) {
          s.x[hi] = xe;
          s.f[hi] = fe;
        } else {
          s.x[hi] = xr;
          s.f[hi] = fr;
        }
        continue;
      }
      if (fr < s.f[second]) {
        s.x[hi] = xr;
        s.f[hi] = fr;
        continue;
      }
      const bool outside = fr < s.f[hi];
      const Eigen::VectorXd xc = outside ? bounds.project(centroid + rho * (xr - centroid))
                                         : bounds.project(centroid + rho * (s.x[hi] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : s.f[hi])) {
        s.x[hi] = xc;
        s.f[hi] = fc;
        continue;
      }
      for (int i : order) {
        if (i == lo) continue;
        s.x[i] = bounds.project(s.x[lo] + sigma * (s.x[i] - s.x[lo]));
        s.f[i] = eval(s.x[i]);
      }
    }
    for (int i = 0; i <= n; ++i) {
      if (s.f[i] < best_f) {
        best_f = s.f[i];
        best = s.x[i];
      }
    }
  }
  result.x = best;
  result.f = best_f;
  return result;
}

double penalized_objective(const MetricParams& mu, const PairCache& cache, double penalty_weight,
                           const WhitePoint& white) {
  if (cache.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty pair sample");
  const ConstraintVector f = constraint_values(mu);
  const double penalty = penalty_weight * f.cwiseMin(0.0).squaredNorm();
  try {
    const Homographyd p = build_p(mu, white);
    std::vector<double> de(cache.size());
    for (std::size_t i = 0; i < cache.size(); ++i) {
      de[i] = (p(cache.xyz_a[i]) - p(cache.xyz_b[i])).norm();
      if (!std::isfinite(de[i])) return penalty + 1.0;
    }
    return stress(de, cache.de00) + penalty;
  } catch (const Error&) {
    return penalty + 1.0;
  }
}

void FitConfig::validate() const {
  if (n_pairs == 0) throw Error(ErrorCode::InvalidArgument, "n_pairs must be positive");
  if (!(penalty_weight > 0.0)) throw Error(ErrorCode::InvalidArgument, "penalty weight must be > 0");
  if (n_starts < 1) throw Error(ErrorCode::InvalidArgument, "n_starts must be >= 1");
  if (max_iters < 1) throw Error(ErrorCode::InvalidArgument, "max_iters must be >= 1");
  if (!(tolerance >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be >= 0");
}

std::vector<MetricParams> start_points(int n_starts, std::uint64_t seed) {
  std::vector<MetricParams> out;
  out.push_back(MetricParams::identity());
  if (n_starts > 1) out.push_back(MetricParams::published());
  for (int k = 2; k < n_starts; ++k) {
    Rng rng = Rng::split(seed ^ 0x5374617274ULL, static_cast<std::uint64_t>(k));
    MetricParams mu = MetricParams::identity();
    for (int i = 0; i < 8; ++i) mu.mu(i) += rng.uniform(-0.5, 0.5);
    // mu1 and mu4 start in [0.5, 1.5]; keep the determinant positive regardless.
    if (mu.mu(0) * mu.mu(3) <= 0.0) {
      mu.mu(0) = std::max(std::abs(mu.mu(0)), 1e-3);
      mu.mu(3) = std::max(std::abs(mu.mu(3)), 1e-3);
    }
    out.push_back(mu);
  }
  out.resize(static_cast<std::size_t>(n_starts));
  return out;
}

MetricParams restore_feasibility(const MetricParams& mu, int max_steps) {
  MetricParams cur = mu;
  for (int step = 0; step < max_steps; ++step) {
    const ConstraintVector f = constraint_values(cur);
    std::vector<int> active;
    for (int i = 0; i < f.size(); ++i)
      if (f(i) < 0.0) active.push_back(i);
    if (active.empty()) return cur;
    Eigen::MatrixXd j(active.size(), 8);
    for (int k = 0; k < 8; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(cur.mu(k)));
      MetricParams lo = cur, hi = cur;
      lo.mu(k) -= h;
      hi.mu(k) += h;
      const ConstraintVector d = (constraint_values(hi) - constraint_values(lo)) / (2.0 * h);
      for (std::size_t r = 0; r < active.size(); ++r) j(r, k) = d(active[r]);
    }
    // Aim slightly inside so rounding cannot land back outside.
    Eigen::VectorXd target(active.size());
    for (std::size_t r = 0; r < active.size(); ++r) target(r) = 1e-12 - f(active[r]);
    const Eigen::VectorXd delta = j.transpose() * (j * j.transpose()).ldlt().solve(target);
    if (!delta.allFinite()) break;
    cur.mu += delta;
  }
  return cur;
}

FitResult fit_metric_params(const FitConfig& cfg) {
  cfg.validate();
  const GamutHull hull = build_d65_gamut(cfg.hull_resolution);
  const PairSample sample = sample_pairs(hull, cfg.n_pairs, cfg.seed);
  return fit_metric_params(cfg, make_pair_cache(sample.pairs));
}

FitResult fit_metric_params(const FitConfig& cfg, const PairCache& training) {
  cfg.validate();
  const std::vector<MetricParams> starts = start_points(cfg.n_starts, cfg.seed);
  const Minimizer minimizer = cfg.minimizer ? cfg.minimizer : Minimizer(nelder_mead);
  MinimizeOptions options;
  options.max_iters = cfg.max_iters;
  options.tolerance = cfg.tolerance;
  Bounds bounds;
  bounds.lo = Eigen::VectorXd::Constant(8, -20.0);
  bounds.hi = Eigen::VectorXd::Constant(8, 20.0);

  auto objective = [&](const Eigen::VectorXd& x) {
    MetricParams mu;
    mu.mu = x;
    return penalized_objective(mu, training, cfg.penalty_weight);
  };

  std::vector<FitResult> results(starts.size());
  parallel_chunks(starts.size(), [&](std::size_t k) {
    const MinimizeResult r = minimizer(objective, starts[k].mu, bounds, options);
    FitResult& out = results[k];
    out.mu.mu = r.x;
    out.evaluations = r.evaluations;
    out.start_index = static_cast<int>(k);
    // The penalty leaves optima a hair outside active constraints.
    out.constraint_min = constraint_values(out.mu).minCoeff();
    if (out.constraint_min < -kFeasibilityTolerance) {
      out.mu = restore_feasibility(out.mu);
      out.constraint_min = constraint_values(out.mu).minCoeff();
    }
    out.objective = penalized_objective(out.mu, training, cfg.penalty_weight);
    out.u_train = penalized_objective(out.mu, training, 0.0);
  });

  const FitResult* best = nullptr;
  for (const auto& r : results) {
    if (r.constraint_min < -kFeasibilityTolerance || !std::isfinite(r.objective)) continue;
    if (best == nullptr || r.objective < best->objective) best = &r;
  }
  if (best == nullptr) throw Error(ErrorCode::NoFeasibleResult, "every start ended infeasible");
  return *best;
}

}  // namespace prolab
