#include "cvwalk/exhaustive.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <mutex>
#include <span>
#include <stdexcept>

#include "cvwalk/parallel.hpp"
#include "cvwalk/path_io.hpp"
#include "cvwalk/transform.hpp"

namespace cvw {
namespace {

using Buffer = std::array<Step, kMaxEnumerationLength>;

void require_length(const char* check, std::size_t n, std::size_t max_n) {
  if (n < 1 || n > max_n) {
    throw std::invalid_argument(std::string(check) + ": n = " + std::to_string(n) +
                                " outside [1, " + std::to_string(max_n) + "]");
  }
}

void fill_steps(std::size_t n, std::uint64_t index, Step* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = ((index >> (n - 1 - i)) & 1U) ? Step{1} : Step{-1};
  }
}

std::uint64_t index_of(const Step* steps, std::size_t len) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < len; ++i) {
    idx = (idx << 1) | (steps[i] > 0 ? 1U : 0U);
  }
  return idx;
}

std::string text_of(const Step* steps, std::size_t len) {
  return signs_to_text(std::span<const Step>(steps, len));
}

// Tracks the lowest-index counterexample across workers so the report does
// not depend on the thread count.
class FirstFailure {
 public:
  void offer(std::uint64_t index, std::string description) {
    std::lock_guard lock(mutex_);
    if (!index_ || index < *index_) {
      index_ = index;
      description_ = std::move(description);
    }
  }
  std::optional<std::string> get() const {
    if (!index_) return std::nullopt;
    return description_;
  }

 private:
  std::mutex mutex_;
  std::optional<std::uint64_t> index_;
  std::string description_;
};

CheckReport make_report(std::string name, std::size_t n, std::optional<std::size_t> h) {
  CheckReport r;
  r.check = std::move(name);
  r.n = n;
  r.h = h;
  r.paths_examined = std::uint64_t{1} << n;
  return r;
}

// Checks that `image_of(path index)` hits every value in [0, 2^image_bits)
// exactly `expected` times.
template <class ImageFn>
void count_images(CheckReport& report, std::size_t n, std::size_t image_bits,
                  std::uint32_t expected, std::size_t threads, ImageFn image_of,
                  const char* what) {
  const std::uint64_t paths = std::uint64_t{1} << n;
  const std::uint64_t images = std::uint64_t{1} << image_bits;
  threads = std::min<std::size_t>(resolve_threads(threads), 8);
  std::vector<std::vector<std::uint32_t>> partial(threads);
  parallel_chunks(paths, threads, [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto& counts = partial[w];
    counts.assign(images, 0);
    Buffer buf{};
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      fill_steps(n, idx, buf.data());
      ++counts[image_of(buf.data())];
    }
  });
  std::vector<std::uint32_t> counts(images, 0);
  for (const auto& p : partial) {
    for (std::uint64_t i = 0; i < p.size(); ++i) counts[i] += p[i];
  }
  for (std::uint64_t i = 0; i < images; ++i) {
    const auto dev = std::abs(static_cast<std::int64_t>(counts[i]) - std::int64_t{expected});
    if (dev != 0) {
      ++report.violations;
      if (!report.counterexample) {
        report.counterexample = std::string(what) + " #" + std::to_string(i) +
                                " occurs " + std::to_string(counts[i]) + " times, expected " +
                                std::to_string(expected);
      }
    }
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  report.pass = report.violations == 0;
}

}  // namespace

IncrementPath path_at(std::size_t n, std::uint64_t index) {
  if (n > 63) {
    throw std::invalid_argument("path_at: n too large");
  }
  std::vector<Step> steps(n);
  fill_steps(n, index, steps.data());
  return IncrementPath::from_trusted(std::move(steps));
}

std::uint64_t path_index(const IncrementPath& path) {
  if (path.size() > 63) {
    throw std::invalid_argument("path_index: path too long");
  }
  return index_of(path.steps().data(), path.size());
}

PathRange::iterator::iterator(std::size_t n, std::uint64_t index) : n_(n), index_(index) {
  if (index_ < (std::uint64_t{1} << n_)) {
    current_ = path_at(n_, index_);
  }
}

PathRange::iterator& PathRange::iterator::operator++() {
  ++index_;
  if (index_ < (std::uint64_t{1} << n_)) {
    current_ = path_at(n_, index_);
  }
  return *this;
}

PathRange::iterator PathRange::iterator::operator++(int) {
  auto copy = *this;
  ++*this;
  return copy;
}

PathRange::PathRange(std::size_t n) : n_(n) {
  if (n > kMaxEnumerationLength) {
    throw std::invalid_argument("enumerate_paths: n = " + std::to_string(n) +
                                " exceeds the cap of " +
                                std::to_string(kMaxEnumerationLength));
  }
  count_ = std::uint64_t{1} << n;
}

PathRange enumerate_paths(std::size_t n) { return PathRange(n); }

CheckReport check_measure_preserving(std::size_t n, OracleOptions opts) {
  require_length("check_measure_preserving", n, kMaxEnumerationLength);
  auto report = make_report("measure_preserving", n, std::nullopt);
  count_images(report, n, n - 1, 2, opts.threads,
               [n](Step* buf) {
                 transform_in_place(std::span<Step>(buf, n));
                 return index_of(buf, n - 1);
               },
               "image path");
  return report;
}

CheckReport check_bijection(std::size_t n, OracleOptions opts) {
  require_length("check_bijection", n, kMaxEnumerationLength);
  auto report = make_report("bijection", n, std::nullopt);
  count_images(report, n, n, 1, opts.threads,
               [n](Step* buf) {
                 std::array<Step, kMaxEnumerationLength> code{};
                 for (std::size_t k = 0; k < n; ++k) {
                   if (k > 0) transform_in_place(std::span<Step>(buf, n - k + 1));
                   code[k] = buf[0];
                 }
                 return index_of(code.data(), n);
               },
               "sign code");
  return report;
}

CheckReport check_independence(std::size_t n, std::size_t h, OracleOptions opts) {
  require_length("check_independence", n, 20);
  if (h >= n) {
    throw std::invalid_argument("check_independence: need h < n");
  }
  auto report = make_report("independence", n, h);
  count_images(report, n, n, 1, opts.threads,
               [n, h](Step* buf) {
                 const std::uint64_t prefix = index_of(buf, h);
                 std::size_t len = n;
                 for (std::size_t i = 0; i < h; ++i, --len) {
                   transform_in_place(std::span<Step>(buf, len));
                 }
                 return (prefix << (n - h)) | index_of(buf, n - h);
               },
               "(prefix, image) cell");
  return report;
}

CheckReport check_reflection_bound(std::size_t n, OracleOptions opts) {
  require_length("check_reflection_bound", n, kMaxEnumerationLength);
  auto report = make_report("reflection_bound", n, std::nullopt);
  const std::uint64_t paths = std::uint64_t{1} << n;
  const std::size_t threads = resolve_threads(opts.threads);
  std::vector<std::int64_t> worst(threads, 0);
  std::vector<std::uint64_t> bad(threads, 0);
  FirstFailure first;
  parallel_chunks(paths, threads, [&](std::size_t w, std::size_t begin, std::size_t end) {
    Buffer s{}, t{};
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      fill_steps(n, idx, s.data());
      t = s;
      transform_in_place(std::span<Step>(t.data(), n));
      std::int64_t pos = 0, tpos = 0, tmin = 0, path_worst = 0;
      // k = 0 contributes |0 - 0|.
      for (std::size_t k = 1; k < n; ++k) {
        pos += s[k - 1];
        tpos += t[k - 1];
        tmin = std::min(tmin, tpos);
        path_worst = std::max(path_worst, std::abs((tpos - tmin) - std::abs(pos)));
      }
      worst[w] = std::max(worst[w], path_worst);
      if (path_worst > 2) {
        ++bad[w];
        first.offer(idx, text_of(s.data(), n));
      }
    }
  });
  report.max_deviation = *std::max_element(worst.begin(), worst.end());
  for (auto b : bad) report.violations += b;
  report.counterexample = first.get();
  report.pass = report.violations == 0;
  return report;
}

CheckReport check_tau_identity(std::size_t n, OracleOptions opts) {
  require_length("check_tau_identity", n, kMaxEnumerationLength);
  auto report = make_report("tau_identity", n, std::nullopt);
  const std::uint64_t paths = std::uint64_t{1} << n;
  const std::size_t threads = resolve_threads(opts.threads);
  std::vector<std::uint64_t> bad(threads, 0);
  FirstFailure first;
  parallel_chunks(paths, threads, [&](std::size_t w, std::size_t begin, std::size_t end) {
    Buffer s{}, t{};
    std::array<std::int64_t, kMaxEnumerationLength + 1> pos{};
    std::array<std::size_t, kMaxEnumerationLength + 1> taus{};
    std::array<std::size_t, kMaxEnumerationLength + 1> hits{};
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      fill_steps(n, idx, s.data());
      pos[0] = 0;
      for (std::size_t i = 0; i < n; ++i) pos[i + 1] = pos[i] + s[i];
      std::size_t n_taus = 1;
      taus[0] = 0;
      for (std::size_t i = 1; i + 1 <= n; ++i) {
        if (pos[i - 1] * pos[i + 1] < 0) taus[n_taus++] = i;
      }
      // First hitting times of 0, -2, -4, ... by T(S) on indices 0..n-1.
      t = s;
      transform_in_place(std::span<Step>(t.data(), n));
      std::size_t n_hits = 1;
      hits[0] = 0;
      std::int64_t tpos = 0;
      for (std::size_t k = 1; k < n; ++k) {
        tpos += t[k - 1];
        if (tpos == -2 * static_cast<std::int64_t>(n_hits)) hits[n_hits++] = k;
      }
      bool ok = n_hits == n_taus;
      for (std::size_t l = 0; ok && l < n_taus; ++l) ok = taus[l] == hits[l];
      if (!ok) {
        ++bad[w];
        first.offer(idx, text_of(s.data(), n));
      }
    }
  });
  for (auto b : bad) report.violations += b;
  report.max_deviation = static_cast<std::int64_t>(report.violations);
  report.counterexample = first.get();
  report.pass = report.violations == 0;
  return report;
}

namespace {

template <class PathPredicate>
CheckReport check_every_path(std::string name, std::size_t n, std::size_t max_n,
                             OracleOptions opts, PathPredicate ok) {
  require_length(name.c_str(), n, max_n);
  auto report = make_report(name, n, std::nullopt);
  const std::uint64_t paths = std::uint64_t{1} << n;
  const std::size_t threads = resolve_threads(opts.threads);
  std::vector<std::uint64_t> bad(threads, 0);
  FirstFailure first;
  parallel_chunks(paths, threads, [&](std::size_t w, std::size_t begin, std::size_t end) {
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const auto path = path_at(n, idx);
      if (!ok(path)) {
        ++bad[w];
        first.offer(idx, to_text(path));
      }
    }
  });
  for (auto b : bad) report.violations += b;
  report.max_deviation = static_cast<std::int64_t>(report.violations);
  report.counterexample = first.get();
  report.pass = report.violations == 0;
  return report;
}

}  // namespace

CheckReport check_sign_flip(std::size_t n, OracleOptions opts) {
  return check_every_path("sign_flip", n, kMaxEnumerationLength, opts,
                          [](const IncrementPath& p) {
                            return transform(p) == transform(p.negated());
                          });
}

CheckReport check_form_equivalence(std::size_t n, OracleOptions opts) {
  return check_every_path("form_equivalence", n, kMaxEnumerationLength, opts,
                          [](const IncrementPath& p) {
                            return transform(p) == transform_block_form(p);
                          });
}

CheckReport check_round_trip(std::size_t n, OracleOptions opts) {
  return check_every_path("round_trip", n, kMaxEnumerationLength, opts,
                          [](const IncrementPath& p) { return decode(encode(p)) == p; });
}

CountTable independence_table(std::size_t n, std::size_t h) {
  require_length("independence_table", n, 20);
  if (h >= n) {
    throw std::invalid_argument("independence_table: need h < n");
  }
  CountTable table;
  for (const auto& path : enumerate_paths(n)) {
    const auto prefix = path_index(path.prefix(h));
    const auto image = path_index(iterate(path, h));
    table.add({static_cast<std::int64_t>(prefix), static_cast<std::int64_t>(image)});
  }
  return table;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "measure_preserving", "bijection",  "independence",     "reflection_bound",
      "tau_identity",       "sign_flip", "form_equivalence", "round_trip"};
  return names;
}

CheckReport run_check(const std::string& name, std::size_t n, std::size_t h,
                      OracleOptions opts) {
  if (name == "measure_preserving") return check_measure_preserving(n, opts);
  if (name == "bijection") return check_bijection(n, opts);
  if (name == "independence") return check_independence(n, h, opts);
  if (name == "reflection_bound") return check_reflection_bound(n, opts);
  if (name == "tau_identity") return check_tau_identity(n, opts);
  if (name == "sign_flip") return check_sign_flip(n, opts);
  if (name == "form_equivalence") return check_form_equivalence(n, opts);
  if (name == "round_trip") return check_round_trip(n, opts);
  throw std::invalid_argument("unknown check '" + name + "'");
}

}  // namespace cvw
