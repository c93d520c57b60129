#pragma once

// Monte Carlo harnesses for the scaling-limit behaviour of iterated
// transforms, plus the small statistical helpers they share.
//
// Every run is a pure function of its ExperimentConfig: replicate r draws
// from the stream RngSpec{master_seed, r}, replicates run in parallel, and
// records are merged in replicate order, so the output does not depend on
// the thread count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cvwalk/brownian.hpp"
#include "cvwalk/rng.hpp"
#include "cvwalk/walk.hpp"

namespace cvw {

/// Iteration count as a function of the embedding level n.
class HSchedule {
 public:
  enum class Kind { sqrt, n_over_log, linear };

  /// Accepts "sqrt" (⌊√n⌋), "n_over_log" (⌊n / ln n⌋) and "linear:<c>" (⌊c n⌋).
  static HSchedule parse(std::string_view text);

  std::size_t operator()(std::size_t n) const;
  std::string label() const;
  Kind kind() const noexcept { return kind_; }
  double factor() const noexcept { return factor_; }

 private:
  HSchedule(Kind kind, double factor) : kind_(kind), factor_(factor) {}
  Kind kind_;
  double factor_;
};

struct ExperimentConfig {
  std::uint64_t master_seed = 1;
  double dt = 0x1p-20;
  double horizon = 2.0;
  std::vector<std::size_t> n_values{64, 256, 1024};
  std::vector<std::size_t> h_values{0, 1, 2};
  std::vector<HSchedule> h_schedule;
  std::size_t replicates = 100;
  double t_probe = 1.0;
  /// Independence experiment: iteration counts h^i = ⌊n alpha_i⌋ after h^0 = 0.
  std::vector<double> alpha{8.0, 24.0};
  double sigma = 3.0;
  double significance = 1e-3;
  /// Regime experiment: also estimate E[(B^h_{t ∧ T_h})^2].
  bool isometry = false;
  /// Crossing rule for the embedding: "bridge" (embed_walk with bridge
  /// draws from stream replicate + 2^63) or "node" (grid nodes only).
  std::string crossing = "bridge";
  /// Directory of cached Brownian grids (CLI only; see grid_io.hpp).
  std::optional<std::string> grid_cache;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ExperimentKind { limit, independence, regime, martingale };

ExperimentKind parse_experiment_kind(std::string_view name);
std::string_view experiment_name(ExperimentKind kind);

/// Throws ConfigError when the config cannot drive `kind`. For the
/// Brownian-coupled experiments (limit, martingale) every (n, h) pair must
/// have n * horizon > n * t_probe + h so the expected hit count covers the
/// probe window after h iterations.
void validate(const ExperimentConfig& config, ExperimentKind kind);

/// One scalar output. Per-replicate rows carry replicate ≥ 0; rows that
/// summarize all replicates carry replicate = -1. Invalid rows (for example
/// a walk too short for the requested iteration) keep their place with
/// valid = false and value = NaN.
struct ResultRecord {
  std::string experiment;
  std::size_t n = 0;
  std::size_t h = 0;
  std::int64_t replicate = 0;
  std::string metric;
  double value = 0.0;
  bool valid = true;
  RngSpec seed;
  double wall_seconds = 0.0;
};

/// Produces the Brownian grid for a replicate. The default samples
/// sample_brownian(horizon, dt, {master_seed, replicate}).
using GridSource = std::function<BrownianGrid(const ExperimentConfig&, std::uint64_t)>;

BrownianGrid default_grid(const ExperimentConfig& config, std::uint64_t replicate);

/// Embeds at level n with the configured crossing rule.
EmbeddedWalk embed_for(const ExperimentConfig& config, const BrownianGrid& grid,
                       std::size_t n, std::uint64_t replicate);

struct RunOptions {
  std::size_t threads = 0;  // 0 = hardware concurrency
  GridSource grid_source = default_grid;
};

/// Coupled comparison of S^{n,h} with B^h on one Brownian sample per
/// replicate. Emits exactly one "sup_error" row per (replicate, n, h):
/// sup_{t ≤ t_probe} |S^{n,h}(t) - B^h_t| on the grid, or an invalid row
/// when the embedded walk has fewer than ⌈n t_probe⌉ + h steps.
std::vector<ResultRecord> run_limit_experiment(const ExperimentConfig& config,
                                               const RunOptions& opts = {});

/// Median of `metric` over valid per-replicate rows matching (n, h).
/// Returns nullopt when no valid row matches.
std::optional<double> median_of(const std::vector<ResultRecord>& records,
                                std::string_view metric, std::size_t n, std::size_t h);

/// Iterations far apart are asymptotically independent. Samples an SRW of
/// length ⌈n t_probe⌉ + max h directly and records S^{h}_n(t) for h in
/// {0, ⌊n alpha_1⌋, ...} at t ∈ {t_probe / 2, t_probe} (metric
/// "value_t=<t>"). Summary rows: "ks_normal_t=<t>" per h, and for each
/// pair (h_a, h_b) compared, with h = h_b, "corr_h=<h_a>", "chi2_h=<h_a>"
/// (sign quadrants S > 0 versus S ≤ 0) and "chi2_p_h=<h_a>".
std::vector<ResultRecord> run_independence_experiment(const ExperimentConfig& config,
                                                      const RunOptions& opts = {});

/// Hitting times T^n_h for h from h_values and h_schedule. Per replicate:
/// "t_wedge_T" = min(t_probe, T^n_h) (valid even when the grid ends before
/// the h-th hit, provided horizon ≥ t_probe), "T_h" (valid only when the hit
/// exists) and, with config.isometry, "isometry_sq" = (B^h at t ∧ T)^2.
/// Summary rows: "mean_<metric>", "se_<metric>" and, for T_h, "ratio_T_h"
/// = mean T_h / (h / n).
std::vector<ResultRecord> run_regime_experiment(const ExperimentConfig& config,
                                                const RunOptions& opts = {});

/// Product-of-signs representation and the conditional-mean-zero property.
/// Per replicate and k in h_values: "representation_ok" (1 or 0) and
/// "prod_g=<g>" = S^{n,k}(t_probe) g for the pre-T_k functionals g = 1,
/// S1 (k ≥ 1) and S1S2 (k ≥ 2). Summary rows: "representation_failures",
/// "mean_prod_g=<g>", "se_prod_g=<g>", "z_prod_g=<g>".
std::vector<ResultRecord> martingale_check(const ExperimentConfig& config,
                                           const RunOptions& opts = {});

std::vector<ResultRecord> run_experiment(ExperimentKind kind, const ExperimentConfig& config,
                                         const RunOptions& opts = {});

/// Positions T^k(S)_i, i = 0..keep, rebuilt as
///   sum_{j < i} P^{k,j} (S_{j+k+1} - S_{j+k}),
///   P^{k,j} = prod_{l=1}^{k} sgn(T^{k-l}(S)_{j+l-1/2}).
/// Requires keep + k ≤ path.size().
std::vector<std::int64_t> sign_product_positions(const IncrementPath& path, std::size_t k,
                                                 std::size_t keep);

/// sign_product_positions(path, k, n - k) equals iterate(path, k).positions().
bool sign_product_representation_holds(const IncrementPath& path, std::size_t k);

/// Doubly indexed table u[k][n] of values in [0, 1].
class ErrorTable {
 public:
  ErrorTable(std::size_t rows, std::size_t cols);
  explicit ErrorTable(std::vector<std::vector<double>> rows);

  std::size_t rows() const noexcept { return data_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  double at(std::size_t k, std::size_t n) const { return data_.at(k).at(n); }
  /// Throws std::invalid_argument for values outside [0, 1].
  void set(std::size_t k, std::size_t n, double value);

 private:
  std::vector<std::vector<double>> data_;
  std::size_t cols_ = 0;
};

/// Thresholds 2^{-p}, p = 0..count-1.
std::vector<double> dyadic_thresholds(std::size_t count);

/// Diagonal selection along a vanishing table. n_p is the first column with
/// u[p][m] < thresholds[p] for every m ≥ n_p in the table (kept
/// nondecreasing in p); rows are processed until one never drops below its
/// threshold. Then k_n = n for n < n_0 and k_n = max{p : n_p ≤ n} for
/// n ≥ n_0. Throws std::invalid_argument for an empty table or when row 0
/// never drops below thresholds[0].
std::vector<std::size_t> diagonal_select(const ErrorTable& u,
                                         const std::vector<double>& thresholds);

/// u[k][j] = mean over valid replicates of min(1, sup_error) for
/// h = h_values[k], n = n_values[j].
ErrorTable error_table_from_limit(const std::vector<ResultRecord>& records,
                                  const std::vector<std::size_t>& n_values,
                                  const std::vector<std::size_t>& h_values);

}  // namespace cvw
