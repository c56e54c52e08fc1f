#include "qcrypt/repr.hpp"

#include <bit>
#include <stdexcept>

#include "qcrypt/error.hpp"
#include "qcrypt/sfc.hpp"

namespace qcrypt {

const char* field_name(Field f) {
  switch (f) {
    case Field::block: return "block";
    case Field::image: return "image";
    case Field::row: return "row";
    case Field::col: return "col";
    case Field::plane: return "plane";
    case Field::color: return "color";
  }
  return "?";
}

int AxisLayout::field_bits(Field f) const {
  int bits = 0;
  for (const auto& w : words)
    for (const auto& fb : w.fields)
      if (fb.field == f) bits += fb.bits;
  return bits;
}

int AxisLayout::address_digits() const {
  int n = 0;
  for (const auto& w : words) n += w.digits;
  return n;
}

int AxisLayout::value_digits() const {
  if (palette) return 1;
  return value_planes > 0 ? channels * value_planes : channels;
}

int AxisLayout::planes() const {
  return value_planes > 0 ? value_planes : 1 << field_bits(Field::plane);
}

int AxisLayout::word_index(const std::string& name) const {
  for (std::size_t i = 0; i < words.size(); ++i)
    if (words[i].name == name) return static_cast<int>(i);
  return -1;
}

int AxisLayout::word_offset(int index) const {
  int off = 0;
  for (int i = 0; i < index; ++i) off += words[static_cast<std::size_t>(i)].digits;
  return off;
}

std::vector<int> AxisLayout::word_digits(const std::string& name) const {
  const int w = word_index(name);
  if (w < 0) throw std::invalid_argument("layout has no word '" + name + "'");
  std::vector<int> out;
  const int off = word_offset(w);
  for (int k = 0; k < words[static_cast<std::size_t>(w)].digits; ++k) out.push_back(off + k);
  return out;
}

int AxisLayout::address_bit(Field f, int bit) const {
  int seen = 0;
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    const Word& w = words[wi];
    const int base = d * word_offset(static_cast<int>(wi));
    if (w.curve) {
      for (std::size_t i = 0; i < w.fields.size(); ++i) {
        if (w.fields[i].field != f) continue;
        if (bit - seen < w.fields[i].bits) {
          // Locate the bit through the curve encoding of a unit vector.
          std::vector<std::uint32_t> coords(w.fields.size(), 0);
          coords[i] = 1u << (bit - seen);
          const auto q = sfc::encode_point(coords, w.digits);
          for (std::size_t k = 0; k < q.digits.size(); ++k)
            if (q.digits[k] != 0) return base + d * static_cast<int>(k) + std::countr_zero(unsigned{q.digits[k]});
        }
        seen += w.fields[i].bits;
      }
    } else {
      int shift = d * w.digits;
      for (const auto& fb : w.fields) {
        shift -= fb.bits;
        if (fb.field != f) continue;
        if (bit - seen < fb.bits) return base + shift + (bit - seen);
        seen += fb.bits;
      }
    }
  }
  return -1;
}

void AxisLayout::validate() const {
  if (d < 1 || d > 7) throw std::invalid_argument("layout: radix exponent must be in [1,7]");
  for (const auto& w : words) {
    if (w.digits < 0) throw std::invalid_argument("layout: negative digit count in " + w.name);
    int bits = 0;
    for (const auto& fb : w.fields) bits += fb.bits;
    if (w.curve) {
      if (static_cast<int>(w.fields.size()) != d)
        throw std::invalid_argument("layout: curve word " + w.name + " needs one field per axis");
      for (const auto& fb : w.fields)
        if (fb.bits != w.digits) throw std::invalid_argument("layout: curve word " + w.name + " has uneven fields");
    } else if (bits != d * w.digits) {
      throw std::invalid_argument("layout: plain word " + w.name + " bit count does not fill its digits");
    }
  }
  if (field_bits(Field::row) != field_bits(Field::col)) throw std::invalid_argument("layout: images must be square");
  if (palette) {
    if (channels != 1 << field_bits(Field::color))
      throw std::invalid_argument("layout: palette size must match the color field");
  } else if (field_bits(Field::color) != 0) {
    throw std::invalid_argument("layout: color field requires a palette layout");
  }
  if (value_planes > 0 && field_bits(Field::plane) != 0)
    throw std::invalid_argument("layout: planes are either values or an address field");
  if (bits_per_plane != 1 && bits_per_plane != 2) throw std::invalid_argument("layout: bits_per_plane must be 1 or 2");
  if (bits_per_plane > d) throw std::invalid_argument("layout: plane values must fit a digit");
  if (sample_depth() > 16) throw std::invalid_argument("layout: sample depth above 16 bits");
  if (d * address_digits() > 62) throw std::invalid_argument("layout: address exceeds 62 bits");
}

int qudit_count(const AxisLayout& layout) { return layout.address_digits() + layout.value_digits(); }

std::array<std::uint8_t, 4> quart_planes_from_byte(int b) {
  if (b < 0 || b > 255) throw std::out_of_range("quart_planes_from_byte: value outside [0,255]");
  std::array<std::uint8_t, 4> q{};
  for (int i = 0; i < 4; ++i) q[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((b >> (2 * i)) & 3);
  return q;
}

int byte_from_quart_planes(std::span<const std::uint8_t> q) {
  if (q.size() != 4) throw std::invalid_argument("byte_from_quart_planes: need 4 quarts");
  int b = 0;
  for (int i = 3; i >= 0; --i) {
    if (q[static_cast<std::size_t>(i)] > 3) throw std::out_of_range("byte_from_quart_planes: quart above 3");
    b = (b << 2) | q[static_cast<std::size_t>(i)];
  }
  return b;
}

AddressMap::AddressMap(const AxisLayout& layout) {
  for (int f = 0; f < kFieldCount; ++f) {
    const Field field = static_cast<Field>(f);
    const int bits = layout.field_bits(field);
    std::vector<int> where(static_cast<std::size_t>(bits));
    for (int b = 0; b < bits; ++b) where[static_cast<std::size_t>(b)] = layout.address_bit(field, b);
    auto& table = contrib[static_cast<std::size_t>(f)];
    table.assign(std::size_t{1} << bits, 0);
    for (std::size_t v = 1; v < table.size(); ++v) {
      const int low = std::countr_zero(v);
      table[v] = table[v & (v - 1)] | (std::uint64_t{1} << where[static_cast<std::size_t>(low)]);
    }
  }
}

namespace {

void check_image(const Raster& img, const AxisLayout& layout, std::size_t index) {
  if (img.width != layout.side() || img.height != layout.side())
    throw DataError("image " + std::to_string(index) + ": size " + std::to_string(img.width) + "x" +
                    std::to_string(img.height) + " does not match layout side " + std::to_string(layout.side()));
  if (img.channels != layout.channels)
    throw DataError("image " + std::to_string(index) + ": expected " + std::to_string(layout.channels) + " channels");
  if (img.depth != layout.sample_depth())
    throw DataError("image " + std::to_string(index) + ": expected depth " + std::to_string(layout.sample_depth()));
}

}  // namespace

MultiImageState pack(std::span<const Raster> images, const AxisLayout& layout) {
  layout.validate();
  if (images.size() > layout.capacity())
    throw DataError("pack: " + std::to_string(images.size()) + " images exceed layout capacity " +
                    std::to_string(layout.capacity()));
  for (std::size_t i = 0; i < images.size(); ++i) check_image(images[i], layout, i);

  MultiImageState st;
  st.layout = layout;
  st.image_count = images.size();
  st.cells.assign(layout.cell_count(), 0);
  st.blank.assign(layout.capacity(), true);
  for (std::size_t i = 0; i < images.size(); ++i) st.blank[i] = false;

  const AddressMap amap(layout);
  const std::uint64_t ipb = layout.images_per_block();
  const int side = layout.side();
  const int planes = layout.planes();
  const int bpp = layout.bits_per_plane;
  const unsigned mask = (1u << bpp) - 1u;
  const int V = layout.value_digits();
  const bool plane_field = layout.value_planes == 0;
  const auto count = static_cast<std::int64_t>(images.size());

#pragma omp parallel for schedule(static)
  for (std::int64_t g = 0; g < count; ++g) {
    const Raster& img = images[static_cast<std::size_t>(g)];
    const std::uint64_t base =
        amap(Field::block, static_cast<std::uint64_t>(g) / ipb) | amap(Field::image, static_cast<std::uint64_t>(g) % ipb);
    for (int r = 0; r < side; ++r)
      for (int c = 0; c < side; ++c) {
        const std::uint64_t pix = base | amap(Field::row, static_cast<std::uint64_t>(r)) |
                                  amap(Field::col, static_cast<std::uint64_t>(c));
        for (int ch = 0; ch < img.channels; ++ch) {
          const unsigned s = img.at(r, c, ch);
          const std::uint64_t cpix = layout.palette ? pix | amap(Field::color, static_cast<std::uint64_t>(ch)) : pix;
          for (int p = 0; p < planes; ++p) {
            const auto val = static_cast<std::uint8_t>((s >> (p * bpp)) & mask);
            std::uint64_t addr = cpix;
            int slot = layout.palette ? 0 : ch;
            if (plane_field) addr |= amap(Field::plane, static_cast<std::uint64_t>(p));
            else slot = ch * planes + p;
            st.cells[addr * static_cast<std::uint64_t>(V) + static_cast<std::uint64_t>(slot)] = val;
          }
        }
      }
  }
  return st;
}

std::vector<Raster> unpack(const MultiImageState& state, bool keep_blanks) {
  const AxisLayout& layout = state.layout;
  const AddressMap amap(layout);
  const std::uint64_t ipb = layout.images_per_block();
  const int side = layout.side();
  const int planes = layout.planes();
  const int bpp = layout.bits_per_plane;
  const unsigned mask = (1u << bpp) - 1u;
  const int V = layout.value_digits();
  const bool plane_field = layout.value_planes == 0;

  std::vector<std::uint64_t> slots;
  for (std::uint64_t g = 0; g < layout.capacity(); ++g)
    if (keep_blanks || !state.blank[g]) slots.push_back(g);

  std::vector<Raster> out(slots.size());
  const auto count = static_cast<std::int64_t>(slots.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    const std::uint64_t g = slots[static_cast<std::size_t>(i)];
    Raster img(side, side, layout.channels, layout.sample_depth());
    const std::uint64_t base = amap(Field::block, g / ipb) | amap(Field::image, g % ipb);
    for (int r = 0; r < side; ++r)
      for (int c = 0; c < side; ++c) {
        const std::uint64_t pix = base | amap(Field::row, static_cast<std::uint64_t>(r)) |
                                  amap(Field::col, static_cast<std::uint64_t>(c));
        for (int ch = 0; ch < layout.channels; ++ch) {
          const std::uint64_t cpix = layout.palette ? pix | amap(Field::color, static_cast<std::uint64_t>(ch)) : pix;
          unsigned s = 0;
          for (int p = 0; p < planes; ++p) {
            std::uint64_t addr = cpix;
            int slot = layout.palette ? 0 : ch;
            if (plane_field) addr |= amap(Field::plane, static_cast<std::uint64_t>(p));
            else slot = ch * planes + p;
            s |= (state.cells[addr * static_cast<std::uint64_t>(V) + static_cast<std::uint64_t>(slot)] & mask) << (p * bpp);
          }
          img.at(r, c, ch) = static_cast<std::uint16_t>(s);
        }
      }
    out[static_cast<std::size_t>(i)] = std::move(img);
  }
  return out;
}

}  // namespace qcrypt
