#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "qcrypt/repr.hpp"

namespace qcrypt {

/// 64-byte little-endian header followed by one byte per digit.
struct ContainerHeader {
  static constexpr std::uint32_t kVersion = 1;
  static constexpr std::size_t kMaxWords = 8;

  std::uint32_t version = kVersion;
  std::uint32_t radix = 4;
  std::uint32_t word_count = 0;
  std::array<std::uint32_t, kMaxWords> word_digits{};
  std::uint32_t value_digits = 1;
  std::uint64_t cell_count = 0;

  static ContainerHeader of(const AxisLayout& layout);
  bool matches(const AxisLayout& layout) const { return *this == of(layout); }
  friend bool operator==(const ContainerHeader&, const ContainerHeader&) = default;
};

struct RawContainer {
  ContainerHeader header;
  std::vector<std::uint8_t> cells;
};

void write_container(std::ostream& out, const MultiImageState& state);
RawContainer read_container(std::istream& in);
void save_container(const std::filesystem::path& path, const MultiImageState& state);
RawContainer load_container(const std::filesystem::path& path);

/// Ciphertext state for a known layout; DataError if the header disagrees.
MultiImageState to_state(RawContainer raw, const AxisLayout& layout);

}  // namespace qcrypt
