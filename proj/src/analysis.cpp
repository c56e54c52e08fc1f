#include "qcrypt/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace qcrypt::analysis {

double entropy(std::span<const std::uint8_t> digits, unsigned radix) {
  if (digits.empty()) return 0;
  std::vector<std::uint64_t> hist(radix, 0);
  for (const auto v : digits) {
    if (v >= radix) throw std::invalid_argument("entropy: digit out of range");
    ++hist[v];
  }
  double h = 0;
  const auto n = static_cast<double>(digits.size());
  for (const auto c : hist)
    if (c) {
      const double p = static_cast<double>(c) / n;
      h -= p * std::log2(p);
    }
  return h;
}

std::vector<std::uint8_t> image_quarts(std::span<const Raster> images) {
  std::vector<std::uint8_t> out;
  for (const auto& img : images) {
    const int quarts = (img.depth + 1) / 2;
    for (const auto s : img.samples)
      for (int q = 0; q < quarts; ++q) out.push_back(static_cast<std::uint8_t>((s >> (2 * q)) & 3u));
  }
  return out;
}

namespace {

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const auto n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0 || sbb == 0) return kNaN;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

std::array<double, 3> adjacent_correlation(std::span<const Raster> images, std::mt19937_64& rng, std::size_t samples) {
  std::array<double, 3> out{kNaN, kNaN, kNaN};
  if (images.empty()) return out;
  constexpr int dr[3] = {0, 1, 1}, dc[3] = {1, 0, 1};
  std::uniform_int_distribution<std::size_t> pick(0, images.size() - 1);
  for (int dir = 0; dir < 3; ++dir) {
    std::vector<double> a, b;
    a.reserve(samples);
    b.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
      const Raster& img = images[pick(rng)];
      if (img.width < 1 + dc[dir] || img.height < 1 + dr[dir]) continue;
      const int r = std::uniform_int_distribution<int>(0, img.height - 1 - dr[dir])(rng);
      const int c = std::uniform_int_distribution<int>(0, img.width - 1 - dc[dir])(rng);
      const int ch = std::uniform_int_distribution<int>(0, img.channels - 1)(rng);
      a.push_back(img.at(r, c, ch));
      b.push_back(img.at(r + dr[dir], c + dc[dir], ch));
    }
    if (a.size() > 1) out[static_cast<std::size_t>(dir)] = pearson(a, b);
  }
  return out;
}

double npcr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("npcr: size mismatch");
  if (a.empty()) return 0;
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i];
  return static_cast<double>(diff) / static_cast<double>(a.size());
}

double uaci(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, unsigned radix) {
  if (a.size() != b.size()) throw std::invalid_argument("uaci: size mismatch");
  if (a.empty() || radix < 2) return 0;
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(int{a[i]} - int{b[i]});
  return sum / (static_cast<double>(a.size()) * (radix - 1));
}

}  // namespace qcrypt::analysis
