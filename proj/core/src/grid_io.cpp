#include "cvwalk/grid_io.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

#include "cvwalk/path_io.hpp"

namespace cvw {
namespace {

static_assert(std::endian::native == std::endian::little,
              "grid I/O assumes a little-endian host");

template <class T>
void put(std::vector<std::uint8_t>& out, T value) {
  const auto offset = out.size();
  out.resize(offset + sizeof(T));
  std::memcpy(out.data() + offset, &value, sizeof(T));
}

template <class T>
T get(std::span<const std::uint8_t> bytes, std::size_t offset) {
  T value;
  std::memcpy(&value, bytes.data() + offset, sizeof(T));
  return value;
}

}  // namespace

std::vector<std::uint8_t> grid_to_binary(const BrownianGrid& grid) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + 8 * grid.size());
  put(out, grid.dt());
  put(out, static_cast<std::int64_t>(grid.size()));
  const auto offset = out.size();
  out.resize(offset + 8 * grid.size());
  std::memcpy(out.data() + offset, grid.values().data(), 8 * grid.size());
  return out;
}

BrownianGrid grid_from_binary(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 16) {
    throw std::invalid_argument("grid binary: truncated header");
  }
  const auto dt = get<double>(bytes, 0);
  const auto count = get<std::int64_t>(bytes, 8);
  if (count < 1 || bytes.size() != 16 + 8 * static_cast<std::uint64_t>(count)) {
    throw std::invalid_argument("grid binary: size does not match count");
  }
  std::vector<double> values(static_cast<std::size_t>(count));
  std::memcpy(values.data(), bytes.data() + 16, 8 * values.size());
  return BrownianGrid(dt, std::move(values));
}

void write_grid(const std::filesystem::path& file, const BrownianGrid& grid) {
  write_file_bytes(file, grid_to_binary(grid));
}

BrownianGrid read_grid(const std::filesystem::path& file) {
  return grid_from_binary(read_file_bytes(file));
}

}  // namespace cvw
