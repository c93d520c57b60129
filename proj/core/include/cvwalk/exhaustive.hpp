#pragma once

// Exact checks of the transform's distributional identities by enumerating
// all 2^n equally likely n-step paths. Every check is a count, so a pass is
// an exact statement about the uniform measure, not a statistical one.

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "cvwalk/count_table.hpp"
#include "cvwalk/walk.hpp"

namespace cvw {

inline constexpr std::size_t kMaxEnumerationLength = 24;

/// The index-th n-step path in lexicographic order with '-' < '+': the first
/// step is the most significant bit of `index`, and bit value 1 means +1.
IncrementPath path_at(std::size_t n, std::uint64_t index);
std::uint64_t path_index(const IncrementPath& path);

/// Streams all 2^n paths of length n in lexicographic order without
/// materializing them. Throws std::invalid_argument for n > 24.
class PathRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = IncrementPath;
    using difference_type = std::ptrdiff_t;
    using pointer = const IncrementPath*;
    using reference = const IncrementPath&;

    iterator() = default;
    iterator(std::size_t n, std::uint64_t index);

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int);
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.index_ == b.index_;
    }

   private:
    std::size_t n_ = 0;
    std::uint64_t index_ = 0;
    IncrementPath current_;
  };

  explicit PathRange(std::size_t n);

  iterator begin() const { return {n_, 0}; }
  iterator end() const { return {n_, count_}; }
  std::uint64_t size() const noexcept { return count_; }

 private:
  std::size_t n_;
  std::uint64_t count_;
};

PathRange enumerate_paths(std::size_t n);

/// Outcome of one exhaustive check.
///
/// `max_deviation` is check-specific: for the counting checks it is the
/// largest |observed count - expected count| over all cells; for
/// reflection_bound it is the attained max_k |Y_k - |S_k||; for tau_identity
/// and sign_flip it is the number of mismatching paths.
struct CheckReport {
  std::string check;
  std::size_t n = 0;
  std::optional<std::size_t> h;
  bool pass = false;
  std::int64_t max_deviation = 0;
  std::optional<std::string> counterexample;
  std::uint64_t paths_examined = 0;
  std::uint64_t violations = 0;
};

struct OracleOptions {
  std::size_t threads = 1;  // 0 = hardware concurrency
};

/// Every (n-1)-step path is the image of exactly two n-step paths.
CheckReport check_measure_preserving(std::size_t n, OracleOptions opts = {});

/// encode is injective (hence bijective) from n-step paths to n-sign codes.
CheckReport check_bijection(std::size_t n, OracleOptions opts = {});

/// Each pair (first h steps, T^h(S)) occurs for exactly one path.
/// Requires h < n ≤ 20.
CheckReport check_independence(std::size_t n, std::size_t h, OracleOptions opts = {});

/// max over paths and k ≤ n-1 of |Y_k - |S_k||; passes when ≤ 2.
CheckReport check_reflection_bound(std::size_t n, OracleOptions opts = {});

/// τ_l equals the first k with T(S)_k = -2l, in both directions: every
/// realized τ_l is such a hitting time and every hit of -2l within the
/// transformed path is a realized τ_l.
CheckReport check_tau_identity(std::size_t n, OracleOptions opts = {});

/// T(S) == T(-S) for every path.
CheckReport check_sign_flip(std::size_t n, OracleOptions opts = {});

/// transform() and transform_block_form() agree on every path.
CheckReport check_form_equivalence(std::size_t n, OracleOptions opts = {});

/// decode(encode(P)) == P for every path.
CheckReport check_round_trip(std::size_t n, OracleOptions opts = {});

/// Joint counts of (index of first h steps, index of T^h(S)).
CountTable independence_table(std::size_t n, std::size_t h);

/// Names accepted by run_check: measure_preserving, bijection, independence,
/// reflection_bound, tau_identity, sign_flip, form_equivalence, round_trip.
const std::vector<std::string>& check_names();
CheckReport run_check(const std::string& name, std::size_t n, std::size_t h,
                      OracleOptions opts = {});

}  // namespace cvw
