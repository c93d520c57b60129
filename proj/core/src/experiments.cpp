#include "cvwalk/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "cvwalk/count_table.hpp"
#include "cvwalk/parallel.hpp"
#include "cvwalk/stats.hpp"
#include "cvwalk/transform.hpp"

namespace cvw {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t probe_steps(std::size_t n, double t_probe) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(n) * t_probe - 1e-9));
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

ResultRecord make_record(std::string_view experiment, std::size_t n, std::size_t h,
                         std::int64_t replicate, std::string metric, double value,
                         const ExperimentConfig& config) {
  ResultRecord rec;
  rec.experiment = std::string(experiment);
  rec.n = n;
  rec.h = h;
  rec.replicate = replicate;
  rec.metric = std::move(metric);
  rec.value = value;
  rec.valid = !std::isnan(value);
  rec.seed = RngSpec{config.master_seed,
                     replicate < 0 ? 0 : static_cast<std::uint64_t>(replicate)};
  return rec;
}

// Runs fn(replicate) for every replicate in parallel and concatenates the
// per-replicate rows in replicate order.
template <class Fn>
std::vector<ResultRecord> run_replicates(const ExperimentConfig& config,
                                         const RunOptions& opts, Fn fn) {
  std::vector<std::vector<ResultRecord>> slots(config.replicates);
  parallel_chunks(config.replicates, opts.threads,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t r = begin; r < end; ++r) {
                      const auto start = std::chrono::steady_clock::now();
                      slots[r] = fn(static_cast<std::uint64_t>(r));
                      const std::chrono::duration<double> elapsed =
                          std::chrono::steady_clock::now() - start;
                      for (auto& rec : slots[r]) rec.wall_seconds = elapsed.count();
                    }
                  });
  std::vector<ResultRecord> out;
  for (auto& slot : slots) {
    std::move(slot.begin(), slot.end(), std::back_inserter(out));
  }
  return out;
}

BrownianGrid grid_for(const ExperimentConfig& config, const RunOptions& opts,
                      std::uint64_t replicate) {
  return opts.grid_source ? opts.grid_source(config, replicate)
                          : default_grid(config, replicate);
}

// Cumulative grid Lévy iterates for every distinct h requested.
std::map<std::size_t, BrownianGrid> levy_iterates(const BrownianGrid& grid,
                                                  std::vector<std::size_t> hs) {
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  std::map<std::size_t, BrownianGrid> out;
  BrownianGrid current = grid;
  std::size_t level = 0;
  for (std::size_t h : hs) {
    current = iterate_levy(current, h - level);
    level = h;
    out.emplace(h, current);
  }
  return out;
}

void add_mean_rows(std::vector<ResultRecord>& out, std::string_view experiment,
                   std::size_t n, std::size_t h, const std::string& metric,
                   const std::vector<double>& values, const ExperimentConfig& config) {
  const auto est = mean_estimate(values);
  const double mean = values.empty() ? kNaN : est.mean;
  const double se = values.size() < 2 ? kNaN : est.std_error;
  out.push_back(make_record(experiment, n, h, -1, "mean_" + metric, mean, config));
  out.push_back(make_record(experiment, n, h, -1, "se_" + metric, se, config));
}

}  // namespace

HSchedule HSchedule::parse(std::string_view text) {
  if (text == "sqrt") return {Kind::sqrt, 1.0};
  if (text == "n_over_log") return {Kind::n_over_log, 1.0};
  if (text.starts_with("linear:")) {
    const auto num = text.substr(7);
    double c = 0.0;
    const auto res = std::from_chars(num.data(), num.data() + num.size(), c);
    if (res.ec != std::errc{} || res.ptr != num.data() + num.size() || !(c >= 0.0)) {
      throw ConfigError("h_schedule: bad factor in '" + std::string(text) + "'");
    }
    return {Kind::linear, c};
  }
  throw ConfigError("h_schedule: unknown schedule '" + std::string(text) +
                    "' (expected sqrt, n_over_log or linear:<c>)");
}

std::size_t HSchedule::operator()(std::size_t n) const {
  const auto x = static_cast<double>(n);
  switch (kind_) {
    case Kind::sqrt: {
      auto r = static_cast<std::size_t>(std::sqrt(x));
      while ((r + 1) * (r + 1) <= n) ++r;
      while (r * r > n) --r;
      return r;
    }
    case Kind::n_over_log:
      return n < 2 ? 0 : static_cast<std::size_t>(std::floor(x / std::log(x)));
    case Kind::linear:
      return static_cast<std::size_t>(std::floor(factor_ * x + 1e-9));
  }
  return 0;
}

std::string HSchedule::label() const {
  switch (kind_) {
    case Kind::sqrt: return "sqrt";
    case Kind::n_over_log: return "n_over_log";
    case Kind::linear: return "linear:" + format_real(factor_);
  }
  return {};
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  if (name == "limit") return ExperimentKind::limit;
  if (name == "independence") return ExperimentKind::independence;
  if (name == "regime") return ExperimentKind::regime;
  if (name == "martingale") return ExperimentKind::martingale;
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

std::string_view experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::limit: return "limit";
    case ExperimentKind::independence: return "independence";
    case ExperimentKind::regime: return "regime";
    case ExperimentKind::martingale: return "martingale";
  }
  return "unknown";
}

void validate(const ExperimentConfig& c, ExperimentKind kind) {
  if (c.replicates < 1) throw ConfigError("replicates must be at least 1");
  if (!(c.t_probe > 0.0)) throw ConfigError("t_probe must be positive");
  if (c.n_values.empty()) throw ConfigError("n_values must not be empty");
  for (std::size_t i = 0; i < c.n_values.size(); ++i) {
    if (c.n_values[i] < 1) throw ConfigError("n_values entries must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (c.n_values[i] == c.n_values[j]) throw ConfigError("n_values must be distinct");
    }
  }
  if (!(c.sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (c.crossing != "bridge" && c.crossing != "node") {
    throw ConfigError("crossing must be \"bridge\" or \"node\"");
  }
  if (!(c.significance > 0.0 && c.significance < 1.0)) {
    throw ConfigError("significance must lie in (0, 1)");
  }
  if (kind == ExperimentKind::independence) {
    if (c.alpha.empty()) throw ConfigError("alpha must not be empty");
    for (double a : c.alpha) {
      if (!(a >= 0.0)) throw ConfigError("alpha entries must be nonnegative");
    }
    return;
  }
  if (!(c.dt > 0.0) || !(c.horizon > 0.0)) {
    throw ConfigError("dt and horizon must be positive");
  }
  if (c.dt > c.horizon) throw ConfigError("dt exceeds horizon");
  if (c.horizon < c.t_probe) throw ConfigError("horizon must be at least t_probe");
  if (kind == ExperimentKind::regime) {
    if (c.h_values.empty() && c.h_schedule.empty()) {
      throw ConfigError("regime needs h_values or h_schedule");
    }
    return;
  }
  if (c.h_values.empty()) throw ConfigError("h_values must not be empty");
  for (auto n : c.n_values) {
    for (auto h : c.h_values) {
      const auto nd = static_cast<double>(n);
      if (!(nd * c.horizon > nd * c.t_probe + static_cast<double>(h))) {
        throw ConfigError("horizon too short: n = " + std::to_string(n) + ", h = " +
                          std::to_string(h) + " needs n*horizon > n*t_probe + h");
      }
    }
  }
}

BrownianGrid default_grid(const ExperimentConfig& config, std::uint64_t replicate) {
  return sample_brownian(config.horizon, config.dt, {config.master_seed, replicate});
}

EmbeddedWalk embed_for(const ExperimentConfig& config, const BrownianGrid& grid,
                       std::size_t n, std::uint64_t replicate) {
  const auto level = static_cast<double>(n);
  if (config.crossing == "node") {
    return embed_walk(grid, level);
  }
  // Bridge draws use the upper half of the stream space; n is mixed in so
  // each level gets its own draws.
  const RngSpec bridge{config.master_seed ^ mix64(n),
                       replicate | (std::uint64_t{1} << 63)};
  return embed_walk(grid, level, bridge);
}

std::vector<ResultRecord> run_limit_experiment(const ExperimentConfig& config,
                                               const RunOptions& opts) {
  validate(config, ExperimentKind::limit);
  constexpr std::string_view kName = "limit";
  return run_replicates(config, opts, [&](std::uint64_t r) {
    std::vector<ResultRecord> rows;
    const auto grid = grid_for(config, opts, r);
    const auto levy = levy_iterates(grid, config.h_values);
    const auto rep = static_cast<std::int64_t>(r);
    for (auto n : config.n_values) {
      const auto embedded = embed_for(config, grid, n, r);
      const auto keep = probe_steps(n, config.t_probe);
      for (auto h : config.h_values) {
        double err = kNaN;
        if (embedded.walk.size() >= keep + h) {
          const auto th = iterate_prefix(embedded.walk, h, keep);
          err = sup_walk_vs_grid(th, static_cast<double>(n), levy.at(h), config.t_probe);
        }
        rows.push_back(make_record(kName, n, h, rep, "sup_error", err, config));
      }
    }
    return rows;
  });
}

std::optional<double> median_of(const std::vector<ResultRecord>& records,
                                std::string_view metric, std::size_t n, std::size_t h) {
  std::vector<double> values;
  for (const auto& rec : records) {
    if (rec.replicate >= 0 && rec.valid && rec.n == n && rec.h == h && rec.metric == metric) {
      values.push_back(rec.value);
    }
  }
  if (values.empty()) return std::nullopt;
  return median(values);
}

std::vector<ResultRecord> run_independence_experiment(const ExperimentConfig& config,
                                                      const RunOptions& opts) {
  validate(config, ExperimentKind::independence);
  constexpr std::string_view kName = "independence";
  const std::vector<double> probes{config.t_probe / 2.0, config.t_probe};

  struct Plan {
    std::size_t n, keep, h_max;
    std::vector<std::size_t> hs;
  };
  std::vector<Plan> plans;
  for (auto n : config.n_values) {
    Plan p{n, probe_steps(n, config.t_probe), 0, {0}};
    for (double a : config.alpha) {
      p.hs.push_back(static_cast<std::size_t>(std::floor(a * static_cast<double>(n) + 1e-9)));
    }
    p.h_max = *std::max_element(p.hs.begin(), p.hs.end());
    plans.push_back(std::move(p));
  }

  auto rows = run_replicates(config, opts, [&](std::uint64_t r) {
    std::vector<ResultRecord> out;
    const auto rep = static_cast<std::int64_t>(r);
    for (const auto& p : plans) {
      const auto walk = sample_srw(p.keep + p.h_max, {config.master_seed, r});
      // Walk iterates in increasing h, reusing the previous iterate.
      std::vector<std::size_t> order(p.hs.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](auto a, auto b) { return p.hs[a] < p.hs[b]; });
      std::vector<IncrementPath> iterates(p.hs.size());
      IncrementPath current = walk;
      std::size_t level = 0;
      for (auto i : order) {
        const auto h = p.hs[i];
        current = iterate_prefix(current, h - level, p.keep + p.h_max - h);
        level = h;
        iterates[i] = current;
      }
      for (std::size_t i = 0; i < p.hs.size(); ++i) {
        for (double t : probes) {
          out.push_back(make_record(kName, p.n, p.hs[i], rep, "value_t=" + format_real(t),
                                    scaled_eval(iterates[i], static_cast<double>(p.n), t),
                                    config));
        }
      }
    }
    return out;
  });

  // Summary rows, computed from the per-replicate values in replicate order.
  for (const auto& p : plans) {
    // Each replicate emitted hs.size() x probes.size() values for this n, in
    // (h index, probe) order.
    std::vector<double> block;
    for (const auto& rec : rows) {
      if (rec.n == p.n && rec.replicate >= 0) block.push_back(rec.value);
    }
    const std::size_t per_rep = p.hs.size() * probes.size();
    auto values = [&](std::size_t hi, std::size_t ti) {
      std::vector<double> out;
      for (std::size_t base = 0; base + per_rep <= block.size(); base += per_rep) {
        out.push_back(block[base + hi * probes.size() + ti]);
      }
      return out;
    };
    for (std::size_t hi = 0; hi < p.hs.size(); ++hi) {
      for (std::size_t ti = 0; ti < probes.size(); ++ti) {
        rows.push_back(make_record(kName, p.n, p.hs[hi], -1,
                                   "ks_normal_t=" + format_real(probes[ti]),
                                   ks_statistic(values(hi, ti)), config));
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 1; i < p.hs.size(); ++i) pairs.emplace_back(0, i);
    for (std::size_t i = 1; i + 1 < p.hs.size(); ++i) pairs.emplace_back(i, i + 1);
    const std::size_t last = probes.size() - 1;
    for (auto [a, b] : pairs) {
      const auto xa = values(a, last);
      const auto xb = values(b, last);
      const std::string suffix = "_h=" + std::to_string(p.hs[a]);
      double corr = kNaN;
      try {
        corr = correlation(xa, xb);
      } catch (const std::invalid_argument&) {
      }
      rows.push_back(make_record(kName, p.n, p.hs[b], -1, "corr" + suffix, corr, config));
      CountTable quadrants;
      for (std::size_t i = 0; i < xa.size(); ++i) {
        quadrants.add({xa[i] > 0.0 ? 1 : 0, xb[i] > 0.0 ? 1 : 0});
      }
      double chi2 = kNaN;
      double p_value = kNaN;
      try {
        chi2 = chi_square_independence(quadrants);
        const auto dof = independence_dof(quadrants);
        if (dof > 0) p_value = chi_square_p_value(chi2, dof);
      } catch (const std::invalid_argument&) {
        chi2 = kNaN;
      }
      rows.push_back(make_record(kName, p.n, p.hs[b], -1, "chi2" + suffix, chi2, config));
      rows.push_back(make_record(kName, p.n, p.hs[b], -1, "chi2_p" + suffix, p_value, config));
    }
  }
  return rows;
}

std::vector<ResultRecord> run_regime_experiment(const ExperimentConfig& config,
                                                const RunOptions& opts) {
  validate(config, ExperimentKind::regime);
  constexpr std::string_view kName = "regime";
  std::vector<std::vector<std::size_t>> hs_per_n;
  std::vector<std::size_t> all_hs;
  for (auto n : config.n_values) {
    std::vector<std::size_t> hs = config.h_values;
    for (const auto& s : config.h_schedule) hs.push_back(s(n));
    all_hs.insert(all_hs.end(), hs.begin(), hs.end());
    hs_per_n.push_back(std::move(hs));
  }

  auto rows = run_replicates(config, opts, [&](std::uint64_t r) {
    std::vector<ResultRecord> out;
    const auto rep = static_cast<std::int64_t>(r);
    const auto grid = grid_for(config, opts, r);
    const bool covers_probe = grid.horizon() >= config.t_probe;
    const auto probe_index = std::min(
        grid.size() - 1,
        static_cast<std::size_t>(std::llround(config.t_probe / grid.dt())));
    std::map<std::size_t, BrownianGrid> levy;
    if (config.isometry) levy = levy_iterates(grid, all_hs);
    for (std::size_t ni = 0; ni < config.n_values.size(); ++ni) {
      const auto n = config.n_values[ni];
      const auto embedded = embed_for(config, grid, n, r);
      for (auto h : hs_per_n[ni]) {
        const bool hit = h <= embedded.hits();
        const double t_h = hit ? embedded.time(h) : kNaN;
        double wedge = kNaN;
        if (hit) {
          wedge = std::min(config.t_probe, t_h);
        } else if (covers_probe) {
          wedge = config.t_probe;
        }
        out.push_back(make_record(kName, n, h, rep, "t_wedge_T", wedge, config));
        out.push_back(make_record(kName, n, h, rep, "T_h", t_h, config));
        if (config.isometry) {
          double sq = kNaN;
          if (hit || covers_probe) {
            const std::size_t hit_index =
                h == 0 ? 0 : (hit ? embedded.hit_indices[h - 1] : probe_index);
            const double b = levy.at(h)[std::min(hit_index, probe_index)];
            sq = b * b;
          }
          out.push_back(make_record(kName, n, h, rep, "isometry_sq", sq, config));
        }
      }
    }
    return out;
  });

  const std::vector<std::string> metrics =
      config.isometry ? std::vector<std::string>{"t_wedge_T", "T_h", "isometry_sq"}
                      : std::vector<std::string>{"t_wedge_T", "T_h"};
  std::vector<ResultRecord> summary;
  for (std::size_t ni = 0; ni < config.n_values.size(); ++ni) {
    const auto n = config.n_values[ni];
    for (auto h : hs_per_n[ni]) {
      for (const auto& metric : metrics) {
        std::vector<double> v;
        for (const auto& rec : rows) {
          if (rec.n == n && rec.h == h && rec.metric == metric && rec.valid) {
            v.push_back(rec.value);
          }
        }
        add_mean_rows(summary, kName, n, h, metric, v, config);
        if (metric == "T_h" && h > 0) {
          const double ratio = v.empty() ? kNaN
                                         : mean_estimate(v).mean /
                                               (static_cast<double>(h) / static_cast<double>(n));
          summary.push_back(make_record(kName, n, h, -1, "ratio_T_h", ratio, config));
        }
      }
    }
  }
  rows.insert(rows.end(), summary.begin(), summary.end());
  return rows;
}

std::vector<std::int64_t> sign_product_positions(const IncrementPath& path, std::size_t k,
                                                 std::size_t keep) {
  if (keep + k > path.size()) {
    throw std::invalid_argument("sign_product_positions: path too short");
  }
  // positions of T^m(S) for m = 0..k-1, each long enough for index keep + k - m.
  std::vector<std::vector<std::int64_t>> pos(k);
  IncrementPath current = path.prefix(keep + k);
  for (std::size_t m = 0; m < k; ++m) {
    pos[m] = current.positions();
    current = transform(current);
  }
  const auto steps = path.steps();
  std::vector<std::int64_t> out(keep + 1, 0);
  for (std::size_t j = 0; j < keep; ++j) {
    int product = 1;
    for (std::size_t l = 1; l <= k; ++l) {
      const auto& p = pos[k - l];
      product *= (p[j + l - 1] + p[j + l] > 0) ? 1 : -1;
    }
    out[j + 1] = out[j] + product * steps[j + k];
  }
  return out;
}

bool sign_product_representation_holds(const IncrementPath& path, std::size_t k) {
  if (k > path.size()) {
    throw std::invalid_argument("sign_product_representation_holds: k exceeds length");
  }
  const std::size_t keep = path.size() - k;
  return sign_product_positions(path, k, keep) == iterate(path, k).positions();
}

std::vector<ResultRecord> martingale_check(const ExperimentConfig& config,
                                           const RunOptions& opts) {
  validate(config, ExperimentKind::martingale);
  constexpr std::string_view kName = "martingale";
  const std::vector<std::string> functionals{"1", "S1", "S1S2"};

  auto rows = run_replicates(config, opts, [&](std::uint64_t r) {
    std::vector<ResultRecord> out;
    const auto rep = static_cast<std::int64_t>(r);
    const auto grid = grid_for(config, opts, r);
    for (auto n : config.n_values) {
      const auto embedded = embed_for(config, grid, n, r);
      const auto keep = probe_steps(n, config.t_probe);
      for (auto k : config.h_values) {
        const bool long_enough = embedded.walk.size() >= keep + k;
        double ok = kNaN;
        double value = kNaN;
        double s1 = kNaN;
        double s2 = kNaN;
        if (long_enough) {
          const auto s = embedded.walk.prefix(keep + k);
          const auto tk = iterate_prefix(s, k, keep);
          ok = sign_product_positions(s, k, keep) == tk.positions() ? 1.0 : 0.0;
          value = scaled_eval(tk, static_cast<double>(n), config.t_probe);
          s1 = s.steps()[0];
          s2 = s.size() > 1 ? s1 + s.steps()[1] : kNaN;
        }
        out.push_back(make_record(kName, n, k, rep, "representation_ok", ok, config));
        out.push_back(make_record(kName, n, k, rep, "prod_g=1", value, config));
        if (k >= 1) {
          out.push_back(make_record(kName, n, k, rep, "prod_g=S1", value * s1, config));
        }
        if (k >= 2) {
          out.push_back(make_record(kName, n, k, rep, "prod_g=S1S2", value * s1 * s2, config));
        }
      }
    }
    return out;
  });

  std::vector<ResultRecord> summary;
  for (auto n : config.n_values) {
    for (auto k : config.h_values) {
      double failures = 0.0;
      for (const auto& rec : rows) {
        if (rec.n == n && rec.h == k && rec.metric == "representation_ok" && rec.valid &&
            rec.value != 1.0) {
          failures += 1.0;
        }
      }
      summary.push_back(
          make_record(kName, n, k, -1, "representation_failures", failures, config));
      for (const auto& g : functionals) {
        if ((g == "S1" && k < 1) || (g == "S1S2" && k < 2)) continue;
        const std::string metric = "prod_g=" + g;
        std::vector<double> v;
        for (const auto& rec : rows) {
          if (rec.n == n && rec.h == k && rec.metric == metric && rec.valid) {
            v.push_back(rec.value);
          }
        }
        add_mean_rows(summary, kName, n, k, metric, v, config);
        const auto est = mean_estimate(v);
        const double z = est.std_error > 0.0 ? est.mean / est.std_error : kNaN;
        summary.push_back(make_record(kName, n, k, -1, "z_" + metric, z, config));
      }
    }
  }
  rows.insert(rows.end(), summary.begin(), summary.end());
  return rows;
}

std::vector<ResultRecord> run_experiment(ExperimentKind kind, const ExperimentConfig& config,
                                         const RunOptions& opts) {
  switch (kind) {
    case ExperimentKind::limit: return run_limit_experiment(config, opts);
    case ExperimentKind::independence: return run_independence_experiment(config, opts);
    case ExperimentKind::regime: return run_regime_experiment(config, opts);
    case ExperimentKind::martingale: return martingale_check(config, opts);
  }
  throw ConfigError("unknown experiment kind");
}

ErrorTable::ErrorTable(std::size_t rows, std::size_t cols)
    : data_(rows, std::vector<double>(cols, 0.0)), cols_(cols) {}

ErrorTable::ErrorTable(std::vector<std::vector<double>> rows) {
  cols_ = rows.empty() ? 0 : rows.front().size();
  data_.assign(rows.size(), std::vector<double>(cols_, 0.0));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != cols_) {
      throw std::invalid_argument("ErrorTable: ragged rows");
    }
    for (std::size_t n = 0; n < cols_; ++n) set(k, n, rows[k][n]);
  }
}

void ErrorTable::set(std::size_t k, std::size_t n, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument("ErrorTable: entries must lie in [0, 1]");
  }
  data_.at(k).at(n) = value;
}

std::vector<double> dyadic_thresholds(std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t p = 0; p < count; ++p) out[p] = std::ldexp(1.0, -static_cast<int>(p));
  return out;
}

std::vector<std::size_t> diagonal_select(const ErrorTable& u,
                                         const std::vector<double>& thresholds) {
  if (u.rows() == 0 || u.cols() == 0) {
    throw std::invalid_argument("diagonal_select: empty table");
  }
  const std::size_t cols = u.cols();
  std::vector<std::size_t> starts;  // n_p
  const std::size_t rows = std::min(u.rows(), thresholds.size());
  for (std::size_t p = 0; p < rows; ++p) {
    // Scan from the right for the start of the tail below the threshold.
    std::size_t first = cols;
    while (first > 0 && u.at(p, first - 1) < thresholds[p]) --first;
    if (first == cols) break;
    if (!starts.empty()) first = std::max(first, starts.back());
    starts.push_back(first);
  }
  if (starts.empty()) {
    throw std::invalid_argument("diagonal_select: row 0 never drops below its threshold");
  }
  std::vector<std::size_t> k(cols);
  for (std::size_t n = 0; n < cols; ++n) {
    if (n < starts.front()) {
      k[n] = n;
      continue;
    }
    std::size_t p = 0;
    while (p + 1 < starts.size() && starts[p + 1] <= n) ++p;
    k[n] = p;
  }
  return k;
}

ErrorTable error_table_from_limit(const std::vector<ResultRecord>& records,
                                  const std::vector<std::size_t>& n_values,
                                  const std::vector<std::size_t>& h_values) {
  ErrorTable table(h_values.size(), n_values.size());
  for (std::size_t k = 0; k < h_values.size(); ++k) {
    for (std::size_t j = 0; j < n_values.size(); ++j) {
      std::vector<double> v;
      for (const auto& rec : records) {
        if (rec.replicate >= 0 && rec.valid && rec.metric == "sup_error" &&
            rec.n == n_values[j] && rec.h == h_values[k]) {
          v.push_back(std::min(1.0, rec.value));
        }
      }
      table.set(k, j, v.empty() ? 1.0 : mean_estimate(v).mean);
    }
  }
  return table;
}

}  // namespace cvw
