#include "cvwalk/path_io.hpp"

#include <fstream>
#include <iterator>
#include <stdexcept>

namespace cvw {

std::string signs_to_text(std::span<const Step> steps) {
  std::string out;
  out.reserve(steps.size());
  for (Step s : steps) {
    out.push_back(s > 0 ? '+' : '-');
  }
  return out;
}

std::vector<Step> signs_from_text(std::string_view text) {
  if (text.ends_with("\r\n")) {
    text.remove_suffix(2);
  } else if (text.ends_with('\n')) {
    text.remove_suffix(1);
  }
  std::vector<Step> steps;
  steps.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case '+': steps.push_back(1); break;
      case '-': steps.push_back(-1); break;
      default:
        throw std::invalid_argument("path text: unexpected character at offset " +
                                    std::to_string(i));
    }
  }
  return steps;
}

std::string to_text(const IncrementPath& path) { return signs_to_text(path.steps()); }

IncrementPath path_from_text(std::string_view text) {
  return IncrementPath::from_trusted(signs_from_text(text));
}

std::vector<std::uint8_t> signs_to_binary(std::span<const Step> steps) {
  const std::uint64_t count = steps.size();
  std::vector<std::uint8_t> out(8 + (count + 7) / 8, 0);
  for (int b = 0; b < 8; ++b) {
    out[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(count >> (8 * b));
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] > 0) {
      out[8 + i / 8] |= static_cast<std::uint8_t>(1U << (i % 8));
    }
  }
  return out;
}

std::vector<Step> signs_from_binary(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8) {
    throw std::invalid_argument("path binary: truncated header");
  }
  std::uint64_t count = 0;
  for (int b = 0; b < 8; ++b) {
    count |= std::uint64_t{bytes[static_cast<std::size_t>(b)]} << (8 * b);
  }
  const std::uint64_t payload = bytes.size() - 8;
  if (payload != (count + 7) / 8) {
    throw std::invalid_argument("path binary: payload of " + std::to_string(payload) +
                                " bytes does not match step count " +
                                std::to_string(count));
  }
  std::vector<Step> steps(count);
  for (std::size_t i = 0; i < count; ++i) {
    steps[i] = (bytes[8 + i / 8] >> (i % 8)) & 1U ? Step{1} : Step{-1};
  }
  if (count % 8 != 0 && (bytes.back() >> (count % 8)) != 0) {
    throw std::invalid_argument("path binary: nonzero padding bits");
  }
  return steps;
}

std::vector<std::uint8_t> to_binary(const IncrementPath& path) {
  return signs_to_binary(path.steps());
}

IncrementPath path_from_binary(std::span<const std::uint8_t> bytes) {
  return IncrementPath::from_trusted(signs_from_binary(bytes));
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + file.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::filesystem::path& file,
                      std::span<const std::uint8_t> bytes) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + file.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::runtime_error("write failed for " + file.string());
  }
}

}  // namespace cvw
