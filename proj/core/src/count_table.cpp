#include "cvwalk/count_table.hpp"

#include <stdexcept>

namespace cvw {

void CountTable::add(const Key& key, std::uint64_t count) {
  counts_[key] += count;
  total_ += count;
}

std::uint64_t CountTable::count(const Key& key) const {
  const auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

std::map<std::int64_t, std::uint64_t> CountTable::marginal(std::size_t axis) const {
  std::map<std::int64_t, std::uint64_t> out;
  for (const auto& [key, c] : counts_) {
    if (axis >= key.size()) {
      throw std::out_of_range("CountTable::marginal: axis beyond key arity");
    }
    out[key[axis]] += c;
  }
  return out;
}

}  // namespace cvw
