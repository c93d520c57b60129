#pragma once

#include <cstdint>
#include <limits>

namespace cvw {

/// Identifies one reproducible random stream: a run-wide master seed plus the
/// replicate (or worker) index that owns the stream.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const RngSpec&, const RngSpec&) = default;
};

/// Counter-based generator keyed by an RngSpec.
///
/// The stream key is `mix64(mix64(master_seed) ^ mix64(stream_id + golden))`
/// and draw i (0-based) is `mix64(key + (i + 1) * golden)`, where mix64 is the
/// SplitMix64 finalizer and golden = 0x9e3779b97f4a7c15. Any draw can be
/// reached in O(1) with `discard`, and streams with different ids never share
/// state. This generator is fixed for the 0.x series; changing it changes
/// every reproducible output.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit StreamRng(RngSpec spec) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept;

  void discard(std::uint64_t count) noexcept { counter_ += count; }

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace cvw
