#include "qcrypt/raster.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcrypt {

namespace {

constexpr PaletteColor kPalette8[] = {
    {"red", {255, 0, 0}},      {"yellow", {255, 255, 0}}, {"orange", {255, 165, 0}},
    {"blue", {0, 0, 255}},     {"green", {0, 128, 0}},    {"purple", {128, 0, 128}},
    {"black", {0, 0, 0}},      {"pink", {255, 192, 203}},
};

constexpr PaletteColor kPalette16[] = {
    {"black", {0, 0, 0}},          {"yellow", {255, 255, 0}},   {"gold", {255, 215, 0}},
    {"red", {255, 0, 0}},          {"burgundy", {128, 0, 32}},  {"orange", {255, 165, 0}},
    {"pink", {255, 192, 203}},     {"purple", {128, 0, 128}},   {"violet", {238, 130, 238}},
    {"green", {0, 128, 0}},        {"olive", {128, 128, 0}},    {"lime", {0, 255, 0}},
    {"blue", {0, 0, 255}},         {"cyan", {0, 255, 255}},     {"beige", {245, 245, 220}},
    {"brown", {165, 42, 42}},
};

std::uint16_t rescale(std::uint32_t v, int from, int to) {
  if (from == to) return static_cast<std::uint16_t>(v);
  const std::uint64_t from_max = (1u << from) - 1u;
  const std::uint64_t to_max = (1u << to) - 1u;
  return static_cast<std::uint16_t>((v * to_max + from_max / 2) / from_max);
}

}  // namespace

std::span<const PaletteColor> palette(int size) {
  if (size <= 8 && size >= 1) return std::span<const PaletteColor>(kPalette8, static_cast<std::size_t>(size));
  if (size <= 16) return std::span<const PaletteColor>(kPalette16, static_cast<std::size_t>(size));
  throw std::invalid_argument("palette: supported sizes are 1..16");
}

Raster convert_depth(const Raster& in, int depth) {
  if (depth < 1 || depth > 16) throw std::invalid_argument("convert_depth: depth must be in [1,16]");
  Raster out = in;
  out.depth = depth;
  for (auto& s : out.samples) s = rescale(s, in.depth, depth);
  return out;
}

Raster to_channels(const Raster& in, int channels) {
  if (in.channels == channels) return in;
  Raster out(in.width, in.height, channels, in.depth);
  for (int r = 0; r < in.height; ++r)
    for (int c = 0; c < in.width; ++c) {
      if (channels == 3) {
        const bool gray = in.channels < 3;
        for (int ch = 0; ch < 3; ++ch) out.at(r, c, ch) = in.at(r, c, gray ? 0 : ch);
      } else if (channels == 1) {
        const int use = in.channels >= 3 ? 3 : 1;
        std::uint32_t sum = 0;
        for (int ch = 0; ch < use; ++ch) sum += in.at(r, c, ch);
        out.at(r, c, 0) = static_cast<std::uint16_t>(sum / static_cast<unsigned>(use));
      } else {
        throw std::invalid_argument("to_channels: target must have 1 or 3 channels");
      }
    }
  return out;
}

Raster quantize_to_palette(const Raster& in, int palette_size, int depth) {
  const auto pal = palette(palette_size);
  const Raster rgb = convert_depth(to_channels(in, 3), 8);
  Raster out(in.width, in.height, palette_size, depth);
  for (int r = 0; r < in.height; ++r)
    for (int c = 0; c < in.width; ++c) {
      const int R = rgb.at(r, c, 0), G = rgb.at(r, c, 1), B = rgb.at(r, c, 2);
      int best = 0;
      long best_d = -1;
      for (std::size_t i = 0; i < pal.size(); ++i) {
        const long dr = R - pal[i].rgb[0], dg = G - pal[i].rgb[1], db = B - pal[i].rgb[2];
        const long dist = dr * dr + dg * dg + db * db;
        if (best_d < 0 || dist < best_d) {
          best_d = dist;
          best = static_cast<int>(i);
        }
      }
      out.at(r, c, best) = rescale(static_cast<std::uint32_t>(std::max({R, G, B})), 8, depth);
    }
  return out;
}

Raster render_palette(const Raster& pal_raster) {
  const auto pal = palette(pal_raster.channels);
  Raster out(pal_raster.width, pal_raster.height, 3, 8);
  for (int r = 0; r < pal_raster.height; ++r)
    for (int c = 0; c < pal_raster.width; ++c) {
      int best = 0;
      for (int ch = 1; ch < pal_raster.channels; ++ch)
        if (pal_raster.at(r, c, ch) > pal_raster.at(r, c, best)) best = ch;
      const std::uint32_t level = rescale(pal_raster.at(r, c, best), pal_raster.depth, 8);
      for (int k = 0; k < 3; ++k)
        out.at(r, c, k) = static_cast<std::uint16_t>((pal[static_cast<std::size_t>(best)].rgb[static_cast<std::size_t>(k)] * level + 127) / 255);
    }
  return out;
}

}  // namespace qcrypt
