#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace cvw {

/// Counts of outcome tuples. Keys are tuples of integers (for example a
/// (prefix index, image index) pair); counts are nonnegative by construction.
class CountTable {
 public:
  using Key = std::vector<std::int64_t>;

  void add(const Key& key, std::uint64_t count = 1);
  std::uint64_t count(const Key& key) const;
  std::uint64_t total() const noexcept { return total_; }
  std::size_t cells() const noexcept { return counts_.size(); }
  const std::map<Key, std::uint64_t>& entries() const noexcept { return counts_; }

  /// Counts summed over every coordinate except `axis`.
  std::map<std::int64_t, std::uint64_t> marginal(std::size_t axis) const;

 private:
  std::map<Key, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

}  // namespace cvw
