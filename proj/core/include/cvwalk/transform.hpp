#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cvwalk/walk.hpp"

namespace cvw {

/// The sequence (T^k(S)_1)_{k = 0..n-1} of first steps of the iterated
/// transforms. It determines the path uniquely; see encode() and decode().
class SignCode {
 public:
  SignCode() = default;
  /// Throws std::invalid_argument for entries other than ±1.
  explicit SignCode(std::vector<Step> signs);
  static SignCode from_trusted(std::vector<Step> signs) noexcept;

  std::size_t size() const noexcept { return signs_.size(); }
  bool empty() const noexcept { return signs_.empty(); }
  std::span<const Step> signs() const noexcept { return signs_; }

  friend bool operator==(const SignCode&, const SignCode&) = default;

 private:
  std::vector<Step> signs_;
};

/// τ_0 = 0 < τ_1 < ... : the indices i with S_{i-1} S_{i+1} < 0, i.e. the
/// times where the walk passes strictly through zero. Only the τ_l realized
/// inside the path are listed (all satisfy τ_l ≤ n - 1).
struct TauSequence {
  std::vector<std::size_t> taus{0};

  friend bool operator==(const TauSequence&, const TauSequence&) = default;
};

/// One application of the transform, computed as
///   T(S)_j - T(S)_{j-1} = sgn(S_{j-1/2}) (S_{j+1} - S_j),  1 ≤ j ≤ n - 1.
/// The output has one step fewer than the input; a length-1 path maps to the
/// empty path. Throws std::invalid_argument on the empty path.
IncrementPath transform(const IncrementPath& path);

/// Reference implementation of the same map from the sign-change times:
/// the j-th output step is (-1)^l X_1 X_{j+1} for τ_l + 1 ≤ j ≤ τ_{l+1}.
/// Slower than transform(); used to cross-check it.
IncrementPath transform_block_form(const IncrementPath& path);

/// In-place kernel behind transform(). Overwrites steps[0, n-1) with the
/// transformed steps; steps[n-1] is left unspecified. No-op for n ≤ 1.
void transform_in_place(std::span<Step> steps) noexcept;

/// T^h(S). Throws std::invalid_argument when h > path.size().
IncrementPath iterate(const IncrementPath& path, std::size_t h);

/// First `keep` steps of T^h(S). T^h(S)_j only depends on S up to j + h, so
/// this reads just the first keep + h input steps and costs O(h (keep + h)).
/// Throws std::invalid_argument when keep + h > path.size().
IncrementPath iterate_prefix(const IncrementPath& path, std::size_t h,
                             std::size_t keep);

TauSequence tau_times(const IncrementPath& path);

/// Y_k = T(S)_k - min_{j ≤ k} T(S)_j for the transformed path `tpath`.
std::vector<std::int64_t> reflected(const IncrementPath& tpath);

/// The unique path P with first step `s1` and transform(P) == tpath.
/// Rebuilds S_{j+1} = S_j + sgn((S_{j-1} + S_j) / 2) X̄_j.
IncrementPath inverse_step(const IncrementPath& tpath, Step s1);

/// c_k = T^k(S)_1 for k = 0..n-1.
SignCode encode(const IncrementPath& path);

/// Inverse of encode(): start from the one-step path (c_{n-1}) and apply
/// inverse_step with c_{n-2}, ..., c_0. O(n^2).
IncrementPath decode(const SignCode& code);

}  // namespace cvw
