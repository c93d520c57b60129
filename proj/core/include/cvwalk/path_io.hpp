#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvwalk/walk.hpp"

namespace cvw {

/// Text form: one line of '+' and '-'. A single trailing "\n" or "\r\n" is
/// accepted; anything else throws std::invalid_argument.
std::string signs_to_text(std::span<const Step> steps);
std::vector<Step> signs_from_text(std::string_view text);

std::string to_text(const IncrementPath& path);
IncrementPath path_from_text(std::string_view text);

/// Binary form: 64-bit little-endian step count, then the steps packed
/// LSB-first (bit i of byte i/8 holds step i, 1 = +1), zero-padded to a byte.
std::vector<std::uint8_t> signs_to_binary(std::span<const Step> steps);
std::vector<Step> signs_from_binary(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> to_binary(const IncrementPath& path);
IncrementPath path_from_binary(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& file);
void write_file_bytes(const std::filesystem::path& file,
                      std::span<const std::uint8_t> bytes);

}  // namespace cvw
