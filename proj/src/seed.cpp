#include <stdexcept>

#include "qcrypt/chaos.hpp"

namespace qcrypt::chaos {

namespace {

// Per value-slot sums over every address.
std::vector<std::uint64_t> slot_sums(const MultiImageState& st) {
  const auto V = static_cast<std::size_t>(st.layout.value_digits());
  std::vector<std::uint64_t> sums(V, 0);
  for (std::size_t i = 0; i < st.cells.size(); ++i) sums[i % V] += st.cells[i];
  return sums;
}

std::uint64_t pixels(const AxisLayout& l) {
  return std::uint64_t{1} << (l.field_bits(Field::row) + l.field_bits(Field::col));
}

}  // namespace

std::vector<double> seed_ququart(const MultiImageState& st) {
  const AxisLayout& l = st.layout;
  if (l.d != 2 || l.palette || (l.channels != 3 && l.channels != 1))
    throw std::invalid_argument("seed_ququart: not a ququart plane layout");
  // Per channel; value-plane layouts keep a channel's planes in adjacent slots.
  const auto slots = slot_sums(st);
  const std::size_t group = l.value_planes > 0 ? static_cast<std::size_t>(l.value_planes) : 1;
  std::vector<std::uint64_t> sums(slots.size() / group, 0);
  for (std::size_t i = 0; i < slots.size(); ++i) sums[i / group] += slots[i];
  const auto channel = [&](int c) { return sums[static_cast<std::size_t>(l.channels == 3 ? c : 0)]; };
  const std::uint64_t total = l.channels == 3 ? sums[0] + sums[1] + sums[2] : sums[0];
  const std::uint64_t P = pixels(l);
  const std::uint64_t images = l.images_per_block() * l.blocks();

  const double x1 = static_cast<double>(total) / static_cast<double>(P * images);
  std::vector<double> seed{x1};
  for (int c = 0; c < 3; ++c) seed.push_back(cheb(channel(c) / P, x1));
  for (int c = 0; c < 3; ++c) seed.push_back(cheb(channel(c) / images, x1));
  return seed;
}

std::vector<double> seed_quoctit(const MultiImageState& st) {
  const AxisLayout& l = st.layout;
  std::uint64_t S = 0;
  for (const auto v : st.cells) S += v;
  const std::uint64_t A = l.address_count();
  const std::uint64_t P = pixels(l);
  const double x = static_cast<double>(S) / static_cast<double>(A);
  return {x, cheb(S, x), cheb(S / P, x), cheb(S / (A / P), x)};
}

std::vector<double> seed_per_color(const MultiImageState& st, int color) {
  const AxisLayout& l = st.layout;
  if (l.palette || color < 0 || color >= l.value_digits())
    throw std::invalid_argument("seed_per_color: color outside the value channels");
  const auto sums = slot_sums(st);
  std::uint64_t S = 0;
  for (const auto s : sums) S += s;
  const std::uint64_t SC = sums[static_cast<std::size_t>(color)];
  const double A = static_cast<double>(l.address_count());
  const double x = static_cast<double>(S) / A;
  const double y = static_cast<double>(SC) / A;
  const std::uint64_t s1 = SC / (pixels(l) * l.blocks());
  const std::uint64_t s2 = SC / l.images_per_block();
  return {x, y, cheb(s1, x), cheb(s2, x)};
}

}  // namespace qcrypt::chaos
