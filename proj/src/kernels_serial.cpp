#include <algorithm>
#include <stdexcept>

#include "qcrypt/kernels.hpp"

namespace qcrypt::kernels {

namespace {

void check_positions(const AxisLayout& layout, std::span<const int> pos, std::vector<bool>& used) {
  for (const int p : pos) {
    if (p < 0 || p >= layout.address_digits()) throw std::invalid_argument("kernel: digit position out of range");
    if (used[static_cast<std::size_t>(p)]) throw std::invalid_argument("kernel: digit selections overlap");
    used[static_cast<std::size_t>(p)] = true;
  }
}

std::vector<std::uint32_t> serial_table(const BakerPartition& p) {
  const BakerMap map(p);
  const std::uint64_t side = map.side();
  std::vector<std::uint32_t> table(side * side);
  for (std::uint64_t y = 0; y < side; ++y)
    for (std::uint64_t x = 0; x < side; ++x) {
      const auto [u, v] = map.apply(x, y);
      table[x + y * side] = static_cast<std::uint32_t>(u + v * side);
    }
  return table;
}

}  // namespace

void check_spec(const AxisLayout& layout, const ScrambleSpec& spec) {
  std::vector<bool> used(static_cast<std::size_t>(layout.address_digits()), false);
  check_positions(layout, spec.left, used);
  check_positions(layout, spec.right, used);
  check_positions(layout, spec.controls, used);
  if (spec.left.size() != spec.right.size() || spec.left.empty())
    throw std::invalid_argument("kernel: scramble selections must be non-empty and of equal length");
  const std::uint64_t entries = std::uint64_t{1} << (layout.d * static_cast<int>(spec.controls.size()));
  if (spec.partitions.size() != entries || spec.iterations.size() != entries)
    throw std::invalid_argument("kernel: one partition and iteration count per control value required");
  // Tables are indexed x + y*side in 32 bits.
  if (layout.d * static_cast<int>(spec.left.size()) > 16)
    throw std::invalid_argument("kernel: scramble square too large for a permutation table");
  for (const auto& p : spec.partitions) {
    if (p.base != layout.radix() || p.n != static_cast<int>(spec.left.size()))
      throw std::invalid_argument("kernel: partition does not match the selection");
    if (!is_admissible(p)) throw std::invalid_argument("kernel: inadmissible partition");
  }
}

void check_spec(const AxisLayout& layout, const DiffusionSpec& spec) {
  std::vector<bool> used(static_cast<std::size_t>(layout.address_digits()), false);
  check_positions(layout, spec.key_digits, used);
  check_positions(layout, spec.plane_digits, used);
  const std::uint64_t want = std::uint64_t{1} << (layout.d * static_cast<int>(spec.key_digits.size()));
  if (spec.words.size() != want) throw std::invalid_argument("kernel: key table does not cover the key digits");
}

void scramble_serial(const AxisLayout& layout, std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                     const ScrambleSpec& spec, bool inverse) {
  check_spec(layout, spec);
  if (in.size() != layout.cell_count() || out.size() != in.size())
    throw std::invalid_argument("scramble: cell buffer size mismatch");
  std::vector<std::vector<std::uint32_t>> tables;
  for (std::size_t e = 0; e < spec.partitions.size(); ++e)
    tables.push_back(power_permutation(serial_table(spec.partitions[e]), spec.iterations[e]));

  const int d = layout.d;
  const std::uint64_t side = std::uint64_t{1} << (d * static_cast<int>(spec.left.size()));
  const auto V = static_cast<std::size_t>(layout.value_digits());
  for (std::uint64_t a = 0; a < layout.address_count(); ++a) {
    const auto& table = tables[gather_digits(a, spec.controls, d)];
    const std::uint64_t x = gather_digits(a, spec.left, d), y = gather_digits(a, spec.right, d);
    const std::uint32_t img = table[x + y * side];
    std::uint64_t b = scatter_digits(a, spec.left, d, img % side);
    b = scatter_digits(b, spec.right, d, img / side);
    const std::size_t src = (inverse ? b : a) * V, dst = (inverse ? a : b) * V;
    std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(src), V, out.begin() + static_cast<std::ptrdiff_t>(dst));
  }
}

void diffuse_serial(const AxisLayout& layout, std::span<std::uint8_t> cells, const DiffusionSpec& spec, bool inverse) {
  check_spec(layout, spec);
  if (cells.size() != layout.cell_count()) throw std::invalid_argument("diffuse: cell buffer size mismatch");
  const int d = layout.d;
  const auto mask = static_cast<std::uint8_t>((1u << layout.bits_per_plane) - 1u);
  const int V = layout.value_digits();
  for (std::uint64_t a = 0; a < layout.address_count(); ++a) {
    const std::uint32_t w = spec.words[gather_digits(a, spec.key_digits, d)];
    const std::uint64_t plane = gather_digits(a, spec.plane_digits, d);
    for (int s = 0; s < V; ++s) {
      auto& v = cells[a * static_cast<std::uint64_t>(V) + static_cast<std::uint64_t>(s)];
      const std::uint8_t k = key_delta(layout, w, s, plane);
      v = static_cast<std::uint8_t>((inverse ? v - k : v + k) & mask);
    }
  }
}

}  // namespace qcrypt::kernels
