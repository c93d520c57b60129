#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "cvwalk/rng.hpp"
#include "cvwalk/walk.hpp"

namespace cvw {

/// A Brownian path sampled on the uniform grid t_i = i * dt, with value 0 at
/// t = 0. Values live in shared immutable storage so copies are cheap.
class BrownianGrid {
 public:
  /// Throws std::invalid_argument unless dt > 0, values is nonempty and
  /// values[0] == 0.
  BrownianGrid(double dt, std::vector<double> values);

  double dt() const noexcept { return dt_; }
  std::size_t size() const noexcept { return values_->size(); }
  std::span<const double> values() const noexcept { return *values_; }
  double operator[](std::size_t i) const noexcept { return (*values_)[i]; }

  /// Last grid time, (size - 1) * dt.
  double horizon() const noexcept { return dt_ * static_cast<double>(size() - 1); }

  /// Linear interpolation between grid nodes. Throws std::out_of_range
  /// outside [0, horizon()].
  double at(double t) const;

  friend bool operator==(const BrownianGrid& a, const BrownianGrid& b) {
    return a.dt_ == b.dt_ && *a.values_ == *b.values_;
  }

 private:
  double dt_;
  std::shared_ptr<const std::vector<double>> values_;
};

/// ceil(horizon / dt) + 1 grid values with independent N(0, dt) increments.
/// Throws std::invalid_argument unless 0 < dt ≤ horizon.
BrownianGrid sample_brownian(double horizon, double dt, RngSpec rng);

/// Grid version of B ↦ ∫ sgn(B) dB: output increment i is
/// sgn(value_i) (value_{i+1} - value_i), with sgn(0) = -1.
BrownianGrid levy_transform_grid(const BrownianGrid& grid);

/// h-fold levy_transform_grid; h = 0 returns the input.
BrownianGrid iterate_levy(const BrownianGrid& grid, std::size_t h);

/// First-passage embedding of a walk at level spacing 1/sqrt(n).
///
/// hit_indices[k] is the grid index of T^n_{k+1}; T^n_0 = 0 is implicit.
/// walk.steps()[k] is the direction of that crossing, so sqrt(n) times the
/// snapped level after k hits is the walk position S^n_k.
struct EmbeddedWalk {
  double n = 1.0;
  double dt = 1.0;
  std::vector<std::size_t> hit_indices;
  IncrementPath walk;

  /// T^n_k; k = 0 gives 0. Throws std::out_of_range for k > hit count.
  double time(std::size_t k) const;
  std::size_t hits() const noexcept { return hit_indices.size(); }
};

/// Scans the grid from level 0. With the current snapped level l_k, the next
/// hit is the first grid index whose value is ≥ l_k + 1/sqrt(n) (up step) or
/// ≤ l_k - 1/sqrt(n) (down step); the level then moves by exactly 1/sqrt(n).
/// At most one hit is recorded per grid index. A grid that ends early simply
/// yields a shorter walk.
EmbeddedWalk embed_walk(const BrownianGrid& grid, double n);

/// Same scan, but a level strictly between two consecutive node values is
/// also counted as crossed with the Brownian-bridge probability
///   exp(-2 (L - v_i) (L - v_{i+1}) / dt),
/// drawn from `bridge_rng`; the hit is recorded at index i + 1. Node-only
/// detection makes each hop start past its snapped level, which biases the
/// walk towards persistence and inflates T^n_k by a relative
/// 2 E[overshoot] sqrt(n) ≈ 1.17 sqrt(n dt). The bridge rule removes that
/// bias to first order; the remaining clock error is at most dt per hop.
EmbeddedWalk embed_walk(const BrownianGrid& grid, double n, RngSpec bridge_rng);

/// A real function on [0, domain_end()] used by the path metrics.
class PathEvaluator {
 public:
  PathEvaluator(std::function<double(double)> fn, double domain_end);

  double operator()(double t) const { return fn_(t); }
  double domain_end() const noexcept { return domain_end_; }

 private:
  std::function<double(double)> fn_;
  double domain_end_;
};

/// Linear interpolation of the grid; shares the grid's storage.
PathEvaluator grid_evaluator(const BrownianGrid& grid);

/// t ↦ scaled_eval(path, n, t) on [0, size / n].
PathEvaluator walk_evaluator(IncrementPath path, double n);

/// Piecewise-linear function through (times[i], values[i]); times must be
/// strictly increasing and start at 0.
PathEvaluator piecewise_linear(std::vector<double> times, std::vector<double> values);

/// max |f(t) - g(t)| over t = 0, probe_dt, 2 probe_dt, ... and t = horizon.
/// Throws std::domain_error when horizon exceeds either domain.
double sup_distance(const PathEvaluator& f, const PathEvaluator& g, double horizon,
                    double probe_dt);

/// Truncated Wiener-space metric:
///   sum_{m=1}^{n_terms} 2^{-m} min(1, sup_{[0, m]} |f - g|).
/// Throws std::domain_error when either domain is shorter than n_terms.
double du_metric(const PathEvaluator& f, const PathEvaluator& g, std::size_t n_terms,
                 double probe_dt);

/// Fast path for the coupled comparison: the same value as
/// sup_distance(walk_evaluator(walk, n), grid_evaluator(grid), t_end, grid.dt())
/// without the per-probe indirection. Throws std::domain_error when t_end
/// exceeds either domain.
double sup_walk_vs_grid(const IncrementPath& walk, double n, const BrownianGrid& grid,
                        double t_end);

}  // namespace cvw
