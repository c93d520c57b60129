#include "cvwalk/transform.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cvw {

SignCode::SignCode(std::vector<Step> signs) : signs_(std::move(signs)) {
  for (Step s : signs_) {
    if (s != 1 && s != -1) {
      throw std::invalid_argument("SignCode: entries must be -1 or +1");
    }
  }
}

SignCode SignCode::from_trusted(std::vector<Step> signs) noexcept {
  SignCode code;
  code.signs_ = std::move(signs);
  return code;
}

void transform_in_place(std::span<Step> steps) noexcept {
  const std::size_t n = steps.size();
  if (n < 2) {
    return;
  }
  // s holds S_{j-1}; 2 S_{j-1} + X_j is twice the midpoint and never zero.
  std::int32_t s = 0;
  Step current = steps[0];
  for (std::size_t j = 1; j < n; ++j) {
    const Step next = steps[j];
    const std::int32_t twice_mid = 2 * s + current;
    const std::int32_t sign = (twice_mid >> 31) | 1;
    steps[j - 1] = static_cast<Step>(sign * next);
    s += current;
    current = next;
  }
}

IncrementPath transform(const IncrementPath& path) {
  if (path.empty()) {
    throw std::invalid_argument("transform: empty path");
  }
  std::vector<Step> buf(path.steps().begin(), path.steps().end());
  transform_in_place(buf);
  buf.pop_back();
  return IncrementPath::from_trusted(std::move(buf));
}

IncrementPath transform_block_form(const IncrementPath& path) {
  if (path.empty()) {
    throw std::invalid_argument("transform_block_form: empty path");
  }
  const auto steps = path.steps();
  const std::size_t n = steps.size();
  const auto taus = tau_times(path).taus;
  const Step first = steps[0];

  std::vector<Step> out(n - 1);
  std::size_t block = 0;
  for (std::size_t j = 1; j < n; ++j) {
    // j lies in block l when τ_l + 1 ≤ j ≤ τ_{l+1}.
    while (block + 1 < taus.size() && taus[block + 1] < j) {
      ++block;
    }
    const int parity = (block % 2 == 0) ? 1 : -1;
    out[j - 1] = static_cast<Step>(parity * first * steps[j]);
  }
  return IncrementPath::from_trusted(std::move(out));
}

IncrementPath iterate(const IncrementPath& path, std::size_t h) {
  if (h > path.size()) {
    throw std::invalid_argument("iterate: h = " + std::to_string(h) +
                                " exceeds path length " + std::to_string(path.size()));
  }
  return iterate_prefix(path, h, path.size() - h);
}

IncrementPath iterate_prefix(const IncrementPath& path, std::size_t h,
                             std::size_t keep) {
  if (keep + h > path.size()) {
    throw std::invalid_argument("iterate_prefix: need " + std::to_string(keep + h) +
                                " steps, path has " + std::to_string(path.size()));
  }
  std::vector<Step> buf(path.steps().begin(),
                        path.steps().begin() + static_cast<std::ptrdiff_t>(keep + h));
  std::size_t len = buf.size();
  for (std::size_t i = 0; i < h; ++i) {
    transform_in_place(std::span<Step>(buf.data(), len));
    --len;
  }
  buf.resize(keep);
  return IncrementPath::from_trusted(std::move(buf));
}

TauSequence tau_times(const IncrementPath& path) {
  TauSequence out;
  const auto pos = path.positions();
  for (std::size_t i = 1; i + 1 < pos.size(); ++i) {
    if (pos[i - 1] * pos[i + 1] < 0) {
      out.taus.push_back(i);
    }
  }
  return out;
}

std::vector<std::int64_t> reflected(const IncrementPath& tpath) {
  const auto pos = tpath.positions();
  std::vector<std::int64_t> y(pos.size());
  std::int64_t running_min = 0;
  for (std::size_t k = 0; k < pos.size(); ++k) {
    running_min = std::min(running_min, pos[k]);
    y[k] = pos[k] - running_min;
  }
  return y;
}

IncrementPath inverse_step(const IncrementPath& tpath, Step s1) {
  if (s1 != 1 && s1 != -1) {
    throw std::invalid_argument("inverse_step: first step must be -1 or +1");
  }
  const auto bar = tpath.steps();
  std::vector<Step> out(bar.size() + 1);
  out[0] = s1;
  std::int64_t prev = 0;   // S_{j-1}
  std::int64_t cur = s1;   // S_j
  for (std::size_t j = 1; j <= bar.size(); ++j) {
    const Step sign = (prev + cur > 0) ? Step{1} : Step{-1};
    const auto step = static_cast<Step>(sign * bar[j - 1]);
    out[j] = step;
    prev = cur;
    cur += step;
  }
  return IncrementPath::from_trusted(std::move(out));
}

SignCode encode(const IncrementPath& path) {
  std::vector<Step> buf(path.steps().begin(), path.steps().end());
  std::vector<Step> code(buf.size());
  for (std::size_t k = 0, len = buf.size(); k < code.size(); ++k, --len) {
    if (k > 0) {
      transform_in_place(std::span<Step>(buf.data(), len + 1));
    }
    code[k] = buf[0];
  }
  return SignCode::from_trusted(std::move(code));
}

IncrementPath decode(const SignCode& code) {
  const auto c = code.signs();
  if (c.empty()) {
    return {};
  }
  IncrementPath path = IncrementPath::from_trusted({c.back()});
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    path = inverse_step(path, c[k]);
  }
  return path;
}

}  // namespace cvw
