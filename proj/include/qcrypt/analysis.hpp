#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "qcrypt/raster.hpp"

namespace qcrypt::analysis {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct AnalysisReport {
  unsigned radix = 4;
  double entropy = 0;                         // bits per digit
  std::array<double, 3> correlation{kNaN, kNaN, kNaN};  // horizontal, vertical, diagonal
  double npcr = kNaN;
  double uaci = kNaN;
};

/// Shannon entropy of the digit histogram, in bits.
double entropy(std::span<const std::uint8_t> digits, unsigned radix);

/// Base-4 digits of every sample, least significant first. Odd depths get a
/// zero top bit.
std::vector<std::uint8_t> image_quarts(std::span<const Raster> images);

/// Pearson correlation of `samples` random adjacent pairs per direction,
/// pooled over images and channels.
std::array<double, 3> adjacent_correlation(std::span<const Raster> images, std::mt19937_64& rng,
                                           std::size_t samples = 10'000);

/// Fraction of differing digits. Throws std::invalid_argument on size mismatch.
double npcr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
/// Mean |a - b| / (radix - 1).
double uaci(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, unsigned radix);

}  // namespace qcrypt::analysis
