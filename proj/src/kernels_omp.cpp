#include <algorithm>
#include <stdexcept>

#include "qcrypt/kernels.hpp"

namespace qcrypt::kernels {

void scramble_omp(const AxisLayout& layout, std::span<const std::uint8_t> in, std::span<std::uint8_t> out,
                  const ScrambleSpec& spec, bool inverse) {
  check_spec(layout, spec);
  if (in.size() != layout.cell_count() || out.size() != in.size())
    throw std::invalid_argument("scramble: cell buffer size mismatch");
  const auto entries = static_cast<std::int64_t>(spec.partitions.size());
  std::vector<std::vector<std::uint32_t>> tables(spec.partitions.size());
  for (std::int64_t e = 0; e < entries; ++e) {
    const auto i = static_cast<std::size_t>(e);
    tables[i] = power_permutation(baker_table(spec.partitions[i]), spec.iterations[i]);
  }

  const int d = layout.d;
  const std::uint64_t side = std::uint64_t{1} << (d * static_cast<int>(spec.left.size()));
  const auto V = static_cast<std::size_t>(layout.value_digits());
  const auto count = static_cast<std::int64_t>(layout.address_count());
#pragma omp parallel for schedule(static)
  for (std::int64_t ai = 0; ai < count; ++ai) {
    const auto a = static_cast<std::uint64_t>(ai);
    const auto& table = tables[gather_digits(a, spec.controls, d)];
    const std::uint64_t x = gather_digits(a, spec.left, d), y = gather_digits(a, spec.right, d);
    const std::uint32_t img = table[x + y * side];
    std::uint64_t b = scatter_digits(a, spec.left, d, img % side);
    b = scatter_digits(b, spec.right, d, img / side);
    const std::size_t src = (inverse ? b : a) * V, dst = (inverse ? a : b) * V;
    std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(src), V, out.begin() + static_cast<std::ptrdiff_t>(dst));
  }
}

void diffuse_omp(const AxisLayout& layout, std::span<std::uint8_t> cells, const DiffusionSpec& spec, bool inverse) {
  check_spec(layout, spec);
  if (cells.size() != layout.cell_count()) throw std::invalid_argument("diffuse: cell buffer size mismatch");
  const int d = layout.d;
  const auto mask = static_cast<std::uint8_t>((1u << layout.bits_per_plane) - 1u);
  const int V = layout.value_digits();
  const auto count = static_cast<std::int64_t>(layout.address_count());
#pragma omp parallel for schedule(static)
  for (std::int64_t ai = 0; ai < count; ++ai) {
    const auto a = static_cast<std::uint64_t>(ai);
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
