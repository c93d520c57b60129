#include "cvwalk/walk.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvw {

IncrementPath::IncrementPath(std::vector<Step> steps) : steps_(std::move(steps)) {
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (steps_[i] != 1 && steps_[i] != -1) {
      throw std::invalid_argument("IncrementPath: step " + std::to_string(i) +
                                  " is " + std::to_string(int{steps_[i]}) +
                                  ", expected -1 or +1");
    }
  }
}

IncrementPath IncrementPath::from_trusted(std::vector<Step> steps) noexcept {
  return IncrementPath(trusted_tag{}, std::move(steps));
}

Step IncrementPath::step(std::size_t i) const {
  if (i >= steps_.size()) {
    throw std::out_of_range("IncrementPath::step: index " + std::to_string(i) +
                            " beyond length " + std::to_string(steps_.size()));
  }
  return steps_[i];
}

std::vector<std::int64_t> IncrementPath::positions() const {
  std::vector<std::int64_t> out(steps_.size() + 1, 0);
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    out[i + 1] = out[i] + steps_[i];
  }
  return out;
}

IncrementPath IncrementPath::negated() const {
  std::vector<Step> flipped(steps_.size());
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    flipped[i] = static_cast<Step>(-steps_[i]);
  }
  return from_trusted(std::move(flipped));
}

IncrementPath IncrementPath::prefix(std::size_t count) const {
  if (count > steps_.size()) {
    throw std::out_of_range("IncrementPath::prefix: count exceeds length");
  }
  return from_trusted(
      std::vector<Step>(steps_.begin(), steps_.begin() + static_cast<std::ptrdiff_t>(count)));
}

IncrementPath sample_srw(std::size_t n_steps, RngSpec rng) {
  StreamRng gen(rng);
  std::vector<Step> steps(n_steps);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < n_steps; ++i) {
    if (i % 64 == 0) {
      bits = gen();
    }
    steps[i] = (bits & 1U) ? Step{1} : Step{-1};
    bits >>= 1;
  }
  return IncrementPath::from_trusted(std::move(steps));
}

std::int64_t position(const IncrementPath& path, std::size_t k) {
  if (k > path.size()) {
    throw std::out_of_range("position: index " + std::to_string(k) +
                            " beyond length " + std::to_string(path.size()));
  }
  std::int64_t s = 0;
  for (std::size_t i = 0; i < k; ++i) {
    s += path.steps()[i];
  }
  return s;
}

double interpolate(const IncrementPath& path, double t) {
  const auto n = static_cast<double>(path.size());
  if (!(t >= 0.0) || t > n) {
    throw std::out_of_range("interpolate: t = " + std::to_string(t) +
                            " outside [0, " + std::to_string(path.size()) + "]");
  }
  const auto k = static_cast<std::size_t>(std::floor(t));
  const double frac = t - static_cast<double>(k);
  const auto base = static_cast<double>(position(path, k));
  if (k == path.size() || frac == 0.0) {
    return base;
  }
  return base + frac * path.steps()[k];
}

Step sign_at_half(const IncrementPath& path, std::size_t j) {
  if (j < 1 || j > path.size()) {
    throw std::out_of_range("sign_at_half: j = " + std::to_string(j) +
                            " outside [1, " + std::to_string(path.size()) + "]");
  }
  // 2 * midpoint = S_{j-1} + S_j = 2 S_{j-1} + X_j, an odd integer.
  const std::int64_t twice_mid = 2 * position(path, j - 1) + path.steps()[j - 1];
  return twice_mid > 0 ? Step{1} : Step{-1};
}

double scaled_eval(const IncrementPath& path, double n, double t) {
  if (!(n > 0.0)) {
    throw std::invalid_argument("scaled_eval: scale must be positive");
  }
  const double nt = n * t;
  if (!(t >= 0.0) || nt > static_cast<double>(path.size())) {
    throw std::out_of_range("scaled_eval: horizon exceeded (n t = " +
                            std::to_string(nt) + ", length " +
                            std::to_string(path.size()) + ")");
  }
  return interpolate(path, nt) / std::sqrt(n);
}

}  // namespace cvw
