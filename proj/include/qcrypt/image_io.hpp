#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qcrypt/raster.hpp"

namespace qcrypt::io {

/// Reads PNG (any color type, 8/16 bit; alpha dropped, palettes expanded) or
/// binary PPM/PGM (maxval 255 or 65535). Format is sniffed from the magic.
Raster read_image(const std::filesystem::path& path);

/// Writes PNG, or PPM/PGM when the extension is .ppm/.pgm/.pnm. Depths other
/// than 8 and 16 are rescaled to 8 (<= 8) or 16 bits.
void write_image(const std::filesystem::path& path, const Raster& image);

/// One image path per line, blank lines skipped. Relative paths resolve
/// against the manifest's directory.
std::vector<std::filesystem::path> read_manifest(const std::filesystem::path& manifest);

}  // namespace qcrypt::io
