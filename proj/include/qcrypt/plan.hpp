#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcrypt/chaos.hpp"
#include "qcrypt/repr.hpp"

namespace qcrypt {

/// One baker-map scrambling stage over two equal-length digit selections.
/// Positions are absolute address digits, least significant first.
struct StagePlan {
  std::string name;
  std::vector<int> left, right;
  std::vector<int> controls;  // their value selects the key entry
  bool mixed = false;         // the left/right split of left+right is a key field
};

enum class KeyFormula { ququart, triple_bit, triple_rgb24, triple_byte, pair_byte, pair_bit };

/// Keyed per-cell digit addition. Each key word holds one byte per value
/// channel (byte c at bit 8c); the plane index picks the bits_per_plane-wide
/// field inside that byte.
struct DiffusionPlan {
  KeyFormula formula = KeyFormula::ququart;
  chaos::System system = chaos::System::yan7d;
  std::vector<int> i_digits, j_digits, l_digits;  // formula indices
  std::vector<int> plane_digits;                  // plane selector, if any
  std::vector<int> block_digits;                  // one chaotic system per value
  bool per_color = false;                         // one system per value channel

  /// Address digits that index the key table: i, j, l, block (low to high).
  std::vector<int> key_digits() const;
};

struct SchemePlan {
  std::string name;
  bool full = false;
  AxisLayout layout;
  std::vector<StagePlan> stages;
  DiffusionPlan diffusion;

  int systems_per_block() const;
  std::uint64_t system_count() const;
  std::uint64_t stage_entries(std::size_t stage) const;
  /// Sequence lengths per system.
  std::vector<std::size_t> sequence_counts() const;
  /// Number of secret digits the diffusion draws on: radix^|key digits| per
  /// selectable plane.
  std::uint64_t diffusion_key_size() const;
};

struct PresetOptions {
  bool full = false;
  std::uint64_t images = 0;  // 0: one block's worth
  int n = 0;                 // 0: preset default size parameter
};

/// Known preset names with their aliases resolved.
std::vector<std::string> preset_names();
std::string canonical_preset(const std::string& name);
SchemePlan preset(const std::string& name, const PresetOptions& opts = {});

}  // namespace qcrypt
