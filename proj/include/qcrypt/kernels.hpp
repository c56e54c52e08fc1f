#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcrypt/baker.hpp"
#include "qcrypt/repr.hpp"

namespace qcrypt::kernels {

/// One keyed baker stage in address-digit form.
struct ScrambleSpec {
  std::vector<int> left, right, controls;
  std::vector<BakerPartition> partitions;  // indexed by the control value
  std::vector<std::uint64_t> iterations;
};

/// Keyed digit addition. words[k] is the key word for key-digit value k;
/// byte c of a word belongs to value channel c and plane p of that channel
/// reads bits [8c + bpp*p, 8c + bpp*(p+1)).
struct DiffusionSpec {
  std::vector<int> key_digits;    // least significant first
  std::vector<int> plane_digits;  // empty: plane 0, or the slot's plane for value-plane layouts
  std::vector<std::uint32_t> words;
};

// Serial reference versions. Tables are filled point by point from BakerMap.
void scramble_serial(const AxisLayout& layout, std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                     const ScrambleSpec& spec, bool inverse);
void diffuse_serial(const AxisLayout& layout, std::span<std::uint8_t> cells, const DiffusionSpec& spec, bool inverse);

// OpenMP versions: per-entry permutation tables raised to the iteration count.
void scramble_omp(const AxisLayout& layout, std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                  const ScrambleSpec& spec, bool inverse);
void diffuse_omp(const AxisLayout& layout, std::span<std::uint8_t> cells, const DiffusionSpec& spec, bool inverse);

/// Throws std::invalid_argument on overlapping or out-of-range selections,
/// a wrong entry count, or a partition that does not fit the selection.
void check_spec(const AxisLayout& layout, const ScrambleSpec& spec);
void check_spec(const AxisLayout& layout, const DiffusionSpec& spec);

/// Additive offset for value slot `slot` at plane index `plane`.
inline std::uint8_t key_delta(const AxisLayout& layout, std::uint32_t word, int slot, std::uint64_t plane) {
  const int bpp = layout.bits_per_plane;
  int channel = slot;
  if (layout.value_planes > 0) {
    channel = slot / layout.value_planes;
    plane = static_cast<std::uint64_t>(slot % layout.value_planes);
  }
  const auto shift = static_cast<unsigned>(8 * channel) + static_cast<unsigned>(bpp) * static_cast<unsigned>(plane);
  return static_cast<std::uint8_t>((word >> shift) & ((1u << bpp) - 1u));
}

}  // namespace qcrypt::kernels
