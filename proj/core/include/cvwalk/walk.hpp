#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvwalk/rng.hpp"

namespace cvw {

/// A single walk increment, always -1 or +1.
using Step = std::int8_t;

/// Finite simple random walk stored as its ±1 increments.
///
/// steps()[i] is X_{i+1} = S_{i+1} - S_i, so position(k) is the sum of the
/// first k steps and S_0 = 0. Instances are immutable; every operation in the
/// library returns a new path.
class IncrementPath {
 public:
  IncrementPath() = default;

  /// Throws std::invalid_argument if any entry is not exactly -1 or +1.
  explicit IncrementPath(std::vector<Step> steps);

  /// Skips validation. Callers guarantee every entry is ±1.
  static IncrementPath from_trusted(std::vector<Step> steps) noexcept;

  std::size_t size() const noexcept { return steps_.size(); }
  bool empty() const noexcept { return steps_.empty(); }

  /// Step i, 0-based (that is X_{i+1}). Throws std::out_of_range.
  Step step(std::size_t i) const;
  std::span<const Step> steps() const noexcept { return steps_; }

  /// S_0, ..., S_n.
  std::vector<std::int64_t> positions() const;

  IncrementPath negated() const;

  /// The first `count` steps (count ≤ size()).
  IncrementPath prefix(std::size_t count) const;

  friend bool operator==(const IncrementPath&, const IncrementPath&) = default;

 private:
  struct trusted_tag {};
  IncrementPath(trusted_tag, std::vector<Step> steps) noexcept
      : steps_(std::move(steps)) {}

  std::vector<Step> steps_;
};

/// Fair ±1 path of `n_steps` steps drawn from the stream named by `rng`.
IncrementPath sample_srw(std::size_t n_steps, RngSpec rng);

/// S_k. Throws std::out_of_range unless 0 ≤ k ≤ size.
std::int64_t position(const IncrementPath& path, std::size_t k);

/// Linear interpolation of the positions at real time t ∈ [0, size].
/// Throws std::out_of_range for t outside the path.
double interpolate(const IncrementPath& path, double t);

/// Sign of the interpolated walk at j - 1/2, i.e. of (S_{j-1} + S_j) / 2.
/// The midpoint is a half-integer so the result is never 0.
/// Requires 1 ≤ j ≤ size.
Step sign_at_half(const IncrementPath& path, std::size_t j);

/// Diffusive rescaling: interpolate(path, n t) / sqrt(n).
/// Throws std::out_of_range when n t exceeds the path length.
double scaled_eval(const IncrementPath& path, double n, double t);

}  // namespace cvw
