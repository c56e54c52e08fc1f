#include "qcrypt/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>

#include "qcrypt/error.hpp"

namespace qcrypt::io {

namespace {

using FilePtr = std::unique_ptr<std::FILE, int (*)(std::FILE*)>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode), &std::fclose);
  if (!f) throw DataError("cannot open " + path.string());
  return f;
}

Raster read_png(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw DataError("libpng: out of memory");
  png_infop info = png_create_info_struct(png);
  Raster out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError("malformed PNG: " + path.string());
  }
  png_init_io(png, f.get());
  png_read_info(png, info);
  const int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (depth == 16) png_set_swap(png);
  png_read_update_info(png, info);

  depth = png_get_bit_depth(png, info);
  const int channels = png_get_channels(png, info);
  const auto width = static_cast<int>(png_get_image_width(png, info));
  const auto height = static_cast<int>(png_get_image_height(png, info));
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  std::vector<png_byte> buf(rowbytes * static_cast<std::size_t>(height));
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int r = 0; r < height; ++r) rows[static_cast<std::size_t>(r)] = buf.data() + rowbytes * static_cast<std::size_t>(r);
  png_read_image(png, rows.data());
  png_destroy_read_struct(&png, &info, nullptr);

  const int keep = (channels == 2 || channels == 4) ? channels - 1 : channels;
  out = Raster(width, height, keep, depth);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      for (int ch = 0; ch < keep; ++ch) {
        const std::size_t i = static_cast<std::size_t>(c) * channels + ch;
        const png_bytep row = rows[static_cast<std::size_t>(r)];
        out.at(r, c, ch) = depth == 16 ? static_cast<std::uint16_t>(row[2 * i] | (row[2 * i + 1] << 8))
                                       : row[i];
      }
  return out;
}

void write_png(const std::filesystem::path& path, const Raster& img) {
  if (img.channels != 1 && img.channels != 3)
    throw std::invalid_argument("write_png: only gray or RGB rasters");
  const Raster r8 = img.depth == 8 || img.depth == 16 ? img : convert_depth(img, img.depth < 8 ? 8 : 16);
  FilePtr f = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw DataError("libpng: out of memory");
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw DataError("failed writing PNG: " + path.string());
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(r8.width), static_cast<png_uint_32>(r8.height), r8.depth,
               r8.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const int bytes = r8.depth == 16 ? 2 : 1;
  std::vector<png_byte> row(static_cast<std::size_t>(r8.width) * r8.channels * bytes);
  for (int r = 0; r < r8.height; ++r) {
    for (int c = 0; c < r8.width; ++c)
      for (int ch = 0; ch < r8.channels; ++ch) {
        const std::size_t i = static_cast<std::size_t>(c) * r8.channels + ch;
        const std::uint16_t v = r8.at(r, c, ch);
        if (bytes == 2) {
          row[2 * i] = static_cast<png_byte>(v >> 8);
          row[2 * i + 1] = static_cast<png_byte>(v & 0xff);
        } else {
          row[i] = static_cast<png_byte>(v);
        }
      }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

std::string next_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

Raster read_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  const std::string magic = next_token(in);
  int channels;
  if (magic == "P5") channels = 1;
  else if (magic == "P6") channels = 3;
  else throw DataError("unsupported PNM variant in " + path.string());
  int width, height;
  long maxval;
  try {
    width = std::stoi(next_token(in));
    height = std::stoi(next_token(in));
    maxval = std::stol(next_token(in));
  } catch (const std::exception&) {
    throw DataError("malformed PNM header in " + path.string());
  }
  if (width <= 0 || height <= 0 || (maxval != 255 && maxval != 65535))
    throw DataError("PNM must have positive size and maxval 255 or 65535: " + path.string());
  const int depth = maxval == 255 ? 8 : 16;
  Raster out(width, height, channels, depth);
  const int bytes = depth == 16 ? 2 : 1;
  std::vector<unsigned char> buf(out.samples.size() * bytes);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size())) throw DataError("truncated PNM " + path.string());
  for (std::size_t i = 0; i < out.samples.size(); ++i)
    out.samples[i] = bytes == 2 ? static_cast<std::uint16_t>((buf[2 * i] << 8) | buf[2 * i + 1]) : buf[i];
  return out;
}

void write_pnm(const std::filesystem::path& path, const Raster& img) {
  if (img.channels != 1 && img.channels != 3)
    throw std::invalid_argument("write_pnm: only gray or RGB rasters");
  const Raster r = img.depth == 8 || img.depth == 16 ? img : convert_depth(img, img.depth < 8 ? 8 : 16);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << (r.channels == 3 ? "P6" : "P5") << '\n' << r.width << ' ' << r.height << '\n'
      << (r.depth == 16 ? 65535 : 255) << '\n';
  for (const std::uint16_t v : r.samples) {
    if (r.depth == 16) out.put(static_cast<char>(v >> 8));
    out.put(static_cast<char>(v & 0xff));
  }
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace

Raster read_image(const std::filesystem::path& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw DataError("cannot open " + path.string());
  unsigned char sig[8] = {};
  probe.read(reinterpret_cast<char*>(sig), 8);
  probe.close();
  if (png_sig_cmp(sig, 0, 8) == 0) return read_png(path);
  if (sig[0] == 'P') return read_pnm(path);
  throw DataError("unrecognized image format: " + path.string());
}

void write_image(const std::filesystem::path& path, const Raster& image) {
  const std::string ext = path.extension().string();
  if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") write_pnm(path, image);
  else write_png(path, image);
}

std::vector<std::filesystem::path> read_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw DataError("cannot open manifest " + manifest.string());
  std::vector<std::filesystem::path> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
    if (start == line.size()) continue;
    std::filesystem::path p(line.substr(start));
    if (p.is_relative()) p = manifest.parent_path() / p;
    out.push_back(p);
  }
  return out;
}

}  // namespace qcrypt::io
