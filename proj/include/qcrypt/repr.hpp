#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcrypt/raster.hpp"

namespace qcrypt {

enum class Field : std::uint8_t { block, image, row, col, plane, color };
inline constexpr int kFieldCount = 6;

const char* field_name(Field f);

struct FieldBits {
  Field field;
  int bits;
  friend bool operator==(const FieldBits&, const FieldBits&) = default;
};

/// A group of consecutive address digits. A plain word stores the MSB-first
/// concatenation of its fields as a base-radix number; a curve word stores the
/// bit-interleaved encoding of d fields of `digits` bits each.
struct Word {
  std::string name;
  bool curve = false;
  std::vector<FieldBits> fields;
  int digits = 0;
  friend bool operator==(const Word&, const Word&) = default;
};

/// Cell address layout. Address digit i occupies bits [d*i, d*i+d) of the
/// address integer; word 0 sits in the lowest digits. Field extents (image
/// side, images per block, block capacity, bit planes, palette size) are read
/// off the words.
struct AxisLayout {
  int d = 2;
  std::vector<Word> words;
  int channels = 3;         // raster channels (palette size when palette)
  bool palette = false;     // color is an address field, one value digit
  int bits_per_plane = 2;   // 2: quart planes, 1: bit planes
  int value_planes = 0;     // >0: planes stored as value digits, no plane field
  std::vector<std::string> channel_names;

  unsigned radix() const { return 1u << d; }
  int field_bits(Field f) const;
  int address_digits() const;
  int value_digits() const;
  int planes() const;
  int sample_depth() const { return planes() * bits_per_plane; }
  int side() const { return 1 << field_bits(Field::row); }
  std::uint64_t images_per_block() const { return std::uint64_t{1} << field_bits(Field::image); }
  std::uint64_t blocks() const { return std::uint64_t{1} << field_bits(Field::block); }
  std::uint64_t capacity() const { return images_per_block() * blocks(); }
  std::uint64_t address_count() const { return std::uint64_t{1} << (d * address_digits()); }
  std::uint64_t cell_count() const { return address_count() * static_cast<std::uint64_t>(value_digits()); }

  int word_index(const std::string& name) const;  // -1 if absent
  int word_offset(int index) const;
  /// Absolute address digit positions of a word, least significant first.
  std::vector<int> word_digits(const std::string& name) const;

  /// Address bit that carries bit `bit` of field `f` (-1 if the field has
  /// fewer bits).
  int address_bit(Field f, int bit) const;

  void validate() const;
  friend bool operator==(const AxisLayout&, const AxisLayout&) = default;
};

/// Total qudits of the representation: address digits plus value digits.
int qudit_count(const AxisLayout& layout);

struct MultiImageState {
  AxisLayout layout;
  std::vector<std::uint8_t> cells;  // cells[address * value_digits + slot]
  std::vector<bool> blank;          // per global image slot (block * ipb + image)
  std::uint64_t image_count = 0;

  friend bool operator==(const MultiImageState&, const MultiImageState&) = default;
};

/// Quart planes of an 8-bit sample, least significant plane first.
std::array<std::uint8_t, 4> quart_planes_from_byte(int b);
int byte_from_quart_planes(std::span<const std::uint8_t> q);

/// Address contribution tables: for each field, value -> OR of address bits.
struct AddressMap {
  std::array<std::vector<std::uint64_t>, kFieldCount> contrib;
  explicit AddressMap(const AxisLayout& layout);
  std::uint64_t operator()(Field f, std::uint64_t v) const {
    return contrib[static_cast<std::size_t>(f)][v];
  }
};

MultiImageState pack(std::span<const Raster> images, const AxisLayout& layout);
/// Images in global slot order. Blank slots are dropped unless keep_blanks.
std::vector<Raster> unpack(const MultiImageState& state, bool keep_blanks = false);

/// Value of the digits at `positions` (first = least significant).
inline std::uint64_t gather_digits(std::uint64_t address, std::span<const int> positions, int d) {
  const std::uint64_t mask = (std::uint64_t{1} << d) - 1;
  std::uint64_t v = 0;
  for (std::size_t k = positions.size(); k-- > 0;)
    v = (v << d) | ((address >> (d * positions[k])) & mask);
  return v;
}

/// Overwrites the digits at `positions` with the base-2^d digits of v.
inline std::uint64_t scatter_digits(std::uint64_t address, std::span<const int> positions, int d,
                                    std::uint64_t v) {
  const std::uint64_t mask = (std::uint64_t{1} << d) - 1;
  for (const int p : positions) {
    address = (address & ~(mask << (d * p))) | ((v & mask) << (d * p));
    v >>= d;
  }
  return address;
}

}  // namespace qcrypt
