#include "cvwalk/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace cvw {
namespace {

// Probe times i * dt for i = 0..count-1, then `horizon` itself if it is not
// already the last probe. Rounding never pushes a probe past `horizon`.
template <class Visit>
void for_each_probe(double horizon, double dt, Visit visit) {
  const auto count = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9)) + 1;
  double last = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    last = std::min(static_cast<double>(i) * dt, horizon);
    visit(last);
  }
  if (last < horizon) {
    visit(horizon);
  }
}

bool within(double t, double domain_end) { return t <= domain_end * (1 + 1e-12) + 1e-15; }

}  // namespace

BrownianGrid::BrownianGrid(double dt, std::vector<double> values) : dt_(dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("BrownianGrid: dt must be positive");
  }
  if (values.empty() || values.front() != 0.0) {
    throw std::invalid_argument("BrownianGrid: values must start at 0");
  }
  values_ = std::make_shared<const std::vector<double>>(std::move(values));
}

double BrownianGrid::at(double t) const {
  const double end = horizon();
  if (!(t >= 0.0) || !within(t, end)) {
    throw std::out_of_range("BrownianGrid::at: t = " + std::to_string(t) +
                            " outside [0, " + std::to_string(end) + "]");
  }
  const double x = std::min(t / dt_, static_cast<double>(size() - 1));
  const auto i = static_cast<std::size_t>(std::floor(x));
  if (i + 1 >= size()) {
    return values_->back();
  }
  const double frac = x - static_cast<double>(i);
  return (*values_)[i] + frac * ((*values_)[i + 1] - (*values_)[i]);
}

BrownianGrid sample_brownian(double horizon, double dt, RngSpec rng) {
  if (!(dt > 0.0) || !(horizon > 0.0)) {
    throw std::invalid_argument("sample_brownian: dt and horizon must be positive");
  }
  if (dt > horizon) {
    throw std::invalid_argument("sample_brownian: dt exceeds horizon");
  }
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  StreamRng gen(rng);
  std::normal_distribution<double> normal(0.0, std::sqrt(dt));
  std::vector<double> values(steps + 1);
  values[0] = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    values[i] = values[i - 1] + normal(gen);
  }
  return BrownianGrid(dt, std::move(values));
}

BrownianGrid levy_transform_grid(const BrownianGrid& grid) {
  const auto v = grid.values();
  std::vector<double> out(v.size());
  out[0] = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double delta = v[i + 1] - v[i];
    out[i + 1] = out[i] + (v[i] > 0.0 ? delta : -delta);
  }
  return BrownianGrid(grid.dt(), std::move(out));
}

BrownianGrid iterate_levy(const BrownianGrid& grid, std::size_t h) {
  BrownianGrid current = grid;
  for (std::size_t i = 0; i < h; ++i) {
    current = levy_transform_grid(current);
  }
  return current;
}

double EmbeddedWalk::time(std::size_t k) const {
  if (k == 0) {
    return 0.0;
  }
  if (k > hit_indices.size()) {
    throw std::out_of_range("EmbeddedWalk::time: only " +
                            std::to_string(hit_indices.size()) + " hits recorded");
  }
  return static_cast<double>(hit_indices[k - 1]) * dt;
}

namespace {

// Shared scan for both crossing rules. `extra_cross(i, up, down)` returns +1
// or -1 when the bridge between nodes i and i+1 crosses a level that neither
// node reaches, 0 otherwise.
template <class BridgeRule>
EmbeddedWalk scan_levels(const BrownianGrid& grid, double n, BridgeRule extra_cross) {
  if (!(n > 0.0)) {
    throw std::invalid_argument("embed_walk: level n must be positive");
  }
  const double spacing = 1.0 / std::sqrt(n);
  EmbeddedWalk out;
  out.n = n;
  out.dt = grid.dt();
  std::vector<Step> steps;
  // Levels are level_index * spacing, so no rounding error accumulates.
  std::int64_t level_index = 0;
  double up = spacing;
  double down = -spacing;
  const auto v = grid.values();
  for (std::size_t i = 1; i < v.size(); ++i) {
    Step step = 0;
    if (v[i] >= up) {
      step = 1;
    } else if (v[i] <= down) {
      step = -1;
    } else {
      step = static_cast<Step>(extra_cross(i - 1, up, down));
      if (step == 0) continue;
    }
    level_index += step;
    steps.push_back(step);
    out.hit_indices.push_back(i);
    up = static_cast<double>(level_index + 1) * spacing;
    down = static_cast<double>(level_index - 1) * spacing;
  }
  out.walk = IncrementPath::from_trusted(std::move(steps));
  return out;
}

}  // namespace

EmbeddedWalk embed_walk(const BrownianGrid& grid, double n) {
  return scan_levels(grid, n, [](std::size_t, double, double) { return 0; });
}

EmbeddedWalk embed_walk(const BrownianGrid& grid, double n, RngSpec bridge_rng) {
  StreamRng gen(bridge_rng);
  const auto v = grid.values();
  const double two_over_dt = 2.0 / grid.dt();
  return scan_levels(grid, n, [&](std::size_t i, double up, double down) {
    const double a = v[i];
    const double b = v[i + 1];
    const double e_up = two_over_dt * (up - a) * (up - b);
    const double e_down = two_over_dt * (a - down) * (b - down);
    // exp(-700) underflows to ~1e-304: no draw is needed unless a node sits
    // close to a level.
    if (e_up > 700.0 && e_down > 700.0) return 0;
    const double p_up = std::exp(-e_up);
    const double p_down = std::exp(-e_down);
    const double u = gen.uniform01();
    if (u < p_up) return 1;
    if (u < p_up + p_down) return -1;
    return 0;
  });
}

PathEvaluator::PathEvaluator(std::function<double(double)> fn, double domain_end)
    : fn_(std::move(fn)), domain_end_(domain_end) {
  if (!fn_) {
    throw std::invalid_argument("PathEvaluator: empty function");
  }
  if (!(domain_end >= 0.0)) {
    throw std::invalid_argument("PathEvaluator: negative domain");
  }
}

PathEvaluator grid_evaluator(const BrownianGrid& grid) {
  return PathEvaluator([grid](double t) { return grid.at(t); }, grid.horizon());
}

PathEvaluator walk_evaluator(IncrementPath path, double n) {
  if (!(n > 0.0)) {
    throw std::invalid_argument("walk_evaluator: scale must be positive");
  }
  const double end = static_cast<double>(path.size()) / n;
  auto positions = path.positions();
  auto fn = [positions = std::move(positions), n](double t) {
    const auto last = static_cast<double>(positions.size() - 1);
    const double x = std::min(n * t, last);
    const auto k = static_cast<std::size_t>(std::floor(x));
    const double frac = x - static_cast<double>(k);
    double value = static_cast<double>(positions[k]);
    if (frac > 0.0) {
      value += frac * static_cast<double>(positions[k + 1] - positions[k]);
    }
    return value / std::sqrt(n);
  };
  return PathEvaluator(std::move(fn), end);
}

PathEvaluator piecewise_linear(std::vector<double> times, std::vector<double> values) {
  if (times.empty() || times.size() != values.size() || times.front() != 0.0) {
    throw std::invalid_argument("piecewise_linear: need matching knots starting at t = 0");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("piecewise_linear: knot times must increase");
    }
  }
  const double end = times.back();
  auto fn = [times = std::move(times), values = std::move(values)](double t) {
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.end()) {
      return values.back();
    }
    const auto i = static_cast<std::size_t>(it - times.begin());
    const double w = (t - times[i - 1]) / (times[i] - times[i - 1]);
    return values[i - 1] + w * (values[i] - values[i - 1]);
  };
  return PathEvaluator(std::move(fn), end);
}

double sup_distance(const PathEvaluator& f, const PathEvaluator& g, double horizon,
                    double probe_dt) {
  if (!(probe_dt > 0.0) || !(horizon >= 0.0)) {
    throw std::invalid_argument("sup_distance: need probe_dt > 0 and horizon ≥ 0");
  }
  if (!within(horizon, f.domain_end()) || !within(horizon, g.domain_end())) {
    throw std::domain_error("sup_distance: horizon " + std::to_string(horizon) +
                            " exceeds an input domain");
  }
  double best = 0.0;
  for_each_probe(horizon, probe_dt,
                 [&](double t) { best = std::max(best, std::abs(f(t) - g(t))); });
  return best;
}

double du_metric(const PathEvaluator& f, const PathEvaluator& g, std::size_t n_terms,
                 double probe_dt) {
  if (!(probe_dt > 0.0)) {
    throw std::invalid_argument("du_metric: probe_dt must be positive");
  }
  const auto horizon = static_cast<double>(n_terms);
  if (!within(horizon, f.domain_end()) || !within(horizon, g.domain_end())) {
    throw std::domain_error("du_metric: inputs must cover [0, " +
                            std::to_string(n_terms) + "]");
  }
  // Running sup over [0, m] is extended interval by interval.
  double total = 0.0;
  double running = 0.0;
  double weight = 1.0;
  for (std::size_t m = 1; m <= n_terms; ++m) {
    const double start = static_cast<double>(m - 1);
    for_each_probe(1.0, probe_dt, [&](double s) {
      const double t = std::min(start + s, horizon);
      running = std::max(running, std::abs(f(t) - g(t)));
    });
    weight *= 0.5;
    total += weight * std::min(1.0, running);
  }
  return total;
}

double sup_walk_vs_grid(const IncrementPath& walk, double n, const BrownianGrid& grid,
                        double t_end) {
  if (!(n > 0.0) || !(t_end >= 0.0)) {
    throw std::invalid_argument("sup_walk_vs_grid: need n > 0 and t_end ≥ 0");
  }
  const auto length = static_cast<double>(walk.size());
  if (!within(t_end, length / n) || !within(t_end, grid.horizon())) {
    throw std::domain_error("sup_walk_vs_grid: t_end exceeds an input domain");
  }
  const auto steps = walk.steps();
  const auto v = grid.values();
  const double dt = grid.dt();
  const double inv_sqrt_n = 1.0 / std::sqrt(n);

  std::size_t k = 0;        // walk index with k ≤ n t < k + 1
  std::int64_t s_k = 0;     // S_k
  double best = 0.0;
  auto eval_walk = [&](double t) {
    const double x = std::min(n * t, length);
    while (static_cast<double>(k + 1) <= x) {
      s_k += steps[k];
      ++k;
    }
    const double frac = x - static_cast<double>(k);
    double value = static_cast<double>(s_k);
    if (frac > 0.0) value += frac * steps[k];
    return value * inv_sqrt_n;
  };
  double last = 0.0;
  const auto count = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    last = std::min(static_cast<double>(i) * dt, t_end);
    const bool on_node = i < v.size() && static_cast<double>(i) * dt == last;
    const double b = on_node ? v[i] : grid.at(last);
    best = std::max(best, std::abs(eval_walk(last) - b));
  }
  if (last < t_end) {
    best = std::max(best, std::abs(eval_walk(t_end) - grid.at(t_end)));
  }
  return best;
}

}  // namespace cvw
