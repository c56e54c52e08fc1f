#include <doctest.h>

#include <algorithm>
#include <random>

#include "qcrypt/cipher.hpp"
#include "qcrypt/kernels.hpp"
#include "qcrypt/keyfile.hpp"

using namespace qcrypt;
using namespace qcrypt::kernels;

namespace {

std::vector<std::uint8_t> random_cells(const AxisLayout& l, std::mt19937_64& rng) {
  std::vector<std::uint8_t> c(l.cell_count());
  const unsigned mask = (1u << l.bits_per_plane) - 1u;
  for (auto& v : c) v = static_cast<std::uint8_t>(rng() & mask);
  return c;
}

std::vector<std::uint32_t> random_words(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> w(n);
  for (auto& v : w) v = static_cast<std::uint32_t>(rng() & 0xFFFFFFu);
  return w;
}

}  // namespace

TEST_CASE("serial and omp kernels agree on every preset") {
  std::mt19937_64 rng(11);
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const SchemePlan plan = preset(name);
    const AxisLayout& l = plan.layout;
    const KeyFile key = generate_key(plan, {}, rng, {1000});
    const auto in = random_cells(l, rng);
    for (std::size_t s = 0; s < plan.stages.size(); ++s) {
      const auto spec = scramble_spec(plan, key, s);
      for (const bool inv : {false, true}) {
        std::vector<std::uint8_t> a(in.size()), b(in.size()), back(in.size());
        scramble_serial(l, in, a, spec, inv);
        scramble_omp(l, in, b, spec, inv);
        CHECK(a == b);
        scramble_omp(l, a, back, spec, !inv);
        CHECK(back == in);
        auto sa = a, si = in;
        std::sort(sa.begin(), sa.end());
        std::sort(si.begin(), si.end());
        CHECK(sa == si);
      }
    }
    DiffusionSpec ds{plan.diffusion.key_digits(), plan.diffusion.plane_digits, {}};
    ds.words = random_words(std::size_t{1} << (l.d * ds.key_digits.size()), rng);
    auto a = in, b = in;
    diffuse_serial(l, a, ds, false);
    diffuse_omp(l, b, ds, false);
    CHECK(a == b);
    diffuse_omp(l, b, ds, true);
    CHECK(b == in);
  }
}

TEST_CASE("scramble matches the iterated map on gathered digits") {
  std::mt19937_64 rng(12);
  for (const auto& name : {"ququart", "scheme1", "scheme2", "scheme7"}) {
    CAPTURE(name);
    const SchemePlan plan = preset(name);
    const AxisLayout& l = plan.layout;
    const KeyFile key = generate_key(plan, {}, rng, {20});
    const auto in = random_cells(l, rng);
    const auto V = static_cast<std::size_t>(l.value_digits());
    for (std::size_t s = 0; s < plan.stages.size(); ++s) {
      const auto spec = scramble_spec(plan, key, s);
      std::vector<std::uint8_t> out(in.size());
      scramble_serial(l, in, out, spec, false);
      std::uniform_int_distribution<std::uint64_t> A(0, l.address_count() - 1);
      for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t a = A(rng);
        const auto e = gather_digits(a, spec.controls, l.d);
        std::uint64_t x = gather_digits(a, spec.left, l.d), y = gather_digits(a, spec.right, l.d);
        for (std::uint64_t r = 0; r < spec.iterations[e]; ++r) std::tie(x, y) = baker_apply(spec.partitions[e], x, y);
        const std::uint64_t b = scatter_digits(scatter_digits(a, spec.left, l.d, x), spec.right, l.d, y);
        for (std::size_t k = 0; k < V; ++k) REQUIRE(out[b * V + k] == in[a * V + k]);
      }
    }
  }
}

TEST_CASE("single-part partition leaves the cells in place") {
  const SchemePlan plan = preset("ququart");
  const AxisLayout& l = plan.layout;
  std::mt19937_64 rng(13);
  const KeyFile key = generate_key(plan, {}, rng);
  auto spec = scramble_spec(plan, key, 0);
  for (auto& p : spec.partitions) p.parts = {p.n};
  const auto in = random_cells(l, rng);
  std::vector<std::uint8_t> out(in.size());
  scramble_serial(l, in, out, spec, false);
  CHECK(out == in);
  scramble_omp(l, in, out, spec, true);
  CHECK(out == in);
}

TEST_CASE("one-cell diffusion by hand") {
  const SchemePlan plan = preset("ququart");
  const AxisLayout& l = plan.layout;
  DiffusionSpec ds{plan.diffusion.key_digits(), plan.diffusion.plane_digits, {}};
  ds.words.assign(std::size_t{1} << (l.d * ds.key_digits.size()), 0);
  std::vector<std::uint8_t> cells(l.cell_count(), 3);
  const std::uint64_t a = l.address_count() / 3 + 5;
  const auto k = gather_digits(a, ds.key_digits, l.d);
  const auto p = gather_digits(a, ds.plane_digits, l.d);
  // one quart per channel at the address's plane: 1, 2, 3 for R, G, B
  ds.words[k] = (1u << (2 * p)) | (2u << (8 + 2 * p)) | (3u << (16 + 2 * p));
  auto c = cells;
  diffuse_serial(l, c, ds, false);
  const auto V = static_cast<std::uint64_t>(l.value_digits());
  REQUIRE(V == 3);
  CHECK(c[a * V + 0] == 0);
  CHECK(c[a * V + 1] == 1);
  CHECK(c[a * V + 2] == 2);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < c.size(); ++i) changed += c[i] != cells[i];
  // every address sharing the key digits and plane moves the same way
  std::size_t expect = 0;
  for (std::uint64_t b = 0; b < l.address_count(); ++b)
    expect += 3 * (gather_digits(b, ds.key_digits, l.d) == k && gather_digits(b, ds.plane_digits, l.d) == p);
  CHECK(changed == expect);
}

TEST_CASE("key_delta for value-plane layouts") {
  const SchemePlan plan = preset("ququart-neqr");
  const AxisLayout& l = plan.layout;
  REQUIRE(l.value_planes == 4);
  const std::uint32_t w = 0xE4u;  // quarts 0,1,2,3
  for (int slot = 0; slot < 4; ++slot) CHECK(key_delta(l, w, slot, 99) == slot);
}

TEST_CASE("spec validation") {
  const SchemePlan plan = preset("scheme1");
  const AxisLayout& l = plan.layout;
  std::mt19937_64 rng(14);
  const KeyFile key = generate_key(plan, {}, rng);
  const auto good = scramble_spec(plan, key, 0);
  std::vector<std::uint8_t> in(l.cell_count()), out(l.cell_count());
  auto bad = good;
  bad.right = bad.left;
  CHECK_THROWS_AS(scramble_serial(l, in, out, bad, false), std::invalid_argument);
  bad = good;
  bad.right.pop_back();
  CHECK_THROWS_AS(scramble_omp(l, in, out, bad, false), std::invalid_argument);
  bad = good;
  bad.iterations.push_back(1);
  CHECK_THROWS_AS(check_spec(l, bad), std::invalid_argument);
  bad = good;
  bad.partitions[0].parts = {bad.partitions[0].n - 1};
  CHECK_THROWS_AS(check_spec(l, bad), std::invalid_argument);
  bad = good;
  bad.left[0] = l.address_digits();
  CHECK_THROWS_AS(check_spec(l, bad), std::invalid_argument);
  std::vector<std::uint8_t> small(3);
  CHECK_THROWS_AS(scramble_serial(l, small, small, good, false), std::invalid_argument);
  DiffusionSpec ds{plan.diffusion.key_digits(), plan.diffusion.plane_digits, {1, 2, 3}};
  CHECK_THROWS_AS(diffuse_omp(l, in, ds, false), std::invalid_argument);
}
