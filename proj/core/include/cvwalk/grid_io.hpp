#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cvwalk/brownian.hpp"

namespace cvw {

/// Binary grid format, little-endian throughout:
///   dt    : IEEE-754 binary64
///   count : int64
///   values: count × binary64
std::vector<std::uint8_t> grid_to_binary(const BrownianGrid& grid);
BrownianGrid grid_from_binary(std::span<const std::uint8_t> bytes);

void write_grid(const std::filesystem::path& file, const BrownianGrid& grid);
BrownianGrid read_grid(const std::filesystem::path& file);

}  // namespace cvw
