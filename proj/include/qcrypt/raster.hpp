#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qcrypt {

/// Interleaved row-major image. Samples are stored in 16-bit slots whatever
/// the bit depth; only the low `depth` bits are meaningful.
struct Raster {
  int width = 0;
  int height = 0;
  int channels = 1;
  int depth = 8;
  std::vector<std::uint16_t> samples;

  Raster() = default;
  Raster(int w, int h, int c, int bit_depth)
      : width(w), height(h), channels(c), depth(bit_depth),
        samples(static_cast<std::size_t>(w) * h * c, 0) {}

  std::size_t index(int row, int col, int ch) const {
    return (static_cast<std::size_t>(row) * width + col) * channels + ch;
  }
  std::uint16_t at(int row, int col, int ch) const { return samples[index(row, col, ch)]; }
  std::uint16_t& at(int row, int col, int ch) { return samples[index(row, col, ch)]; }
  std::uint32_t max_value() const { return (1u << depth) - 1u; }

  friend bool operator==(const Raster&, const Raster&) = default;
};

struct PaletteColor {
  const char* name;
  std::array<std::uint8_t, 3> rgb;
};

/// Fixed palettes for the palette-axis layouts. The color names come with no
/// RGB codes, so the codes below are the common web values.
std::span<const PaletteColor> palette(int size);

/// Rescales samples to a new bit depth (rounding to nearest).
Raster convert_depth(const Raster& in, int depth);

/// Gray -> RGB by replication, RGB -> gray by the integer mean. Alpha is
/// dropped.
Raster to_channels(const Raster& in, int channels);

/// Maps an RGB or gray raster onto a palette raster with one intensity channel
/// per palette color: the nearest palette color receives max(R,G,B) rescaled
/// to `depth`, every other channel is zero.
Raster quantize_to_palette(const Raster& rgb, int palette_size, int depth);

/// Inverse rendering: each pixel takes the palette color of its strongest
/// channel scaled by that channel's intensity. Produces 8-bit RGB.
Raster render_palette(const Raster& pal);

}  // namespace qcrypt
