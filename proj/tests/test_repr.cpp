#include <doctest.h>

#include <random>

#include "qcrypt/plan.hpp"
#include "qcrypt/repr.hpp"
#include "qcrypt/sfc.hpp"

using namespace qcrypt;

namespace {

std::vector<Raster> random_images(const AxisLayout& l, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> s(0, (1 << l.sample_depth()) - 1);
  std::vector<Raster> out;
  for (std::size_t i = 0; i < count; ++i) {
    Raster r(l.side(), l.side(), l.channels, l.sample_depth());
    for (auto& v : r.samples) v = static_cast<std::uint16_t>(s(rng));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

TEST_CASE("quart planes of a byte") {
  CHECK(quart_planes_from_byte(0) == std::array<std::uint8_t, 4>{0, 0, 0, 0});
  CHECK(quart_planes_from_byte(255) == std::array<std::uint8_t, 4>{3, 3, 3, 3});
  CHECK(quart_planes_from_byte(201) == std::array<std::uint8_t, 4>{1, 2, 0, 3});
  CHECK_THROWS(quart_planes_from_byte(256));
  CHECK_THROWS(quart_planes_from_byte(-1));
  CHECK(byte_from_quart_planes(std::array<std::uint8_t, 4>{0, 0, 0, 0}) == 0);
  CHECK(byte_from_quart_planes(std::array<std::uint8_t, 4>{3, 3, 3, 3}) == 255);
  CHECK(byte_from_quart_planes(std::array<std::uint8_t, 4>{1, 2, 0, 3}) == 201);
  for (int b = 0; b < 256; ++b) {
    const auto q = quart_planes_from_byte(b);
    for (int i = 0; i < 4; ++i) CHECK(q[static_cast<std::size_t>(i)] == (((b >> (2 * i + 1)) & 1) * 2 + ((b >> (2 * i)) & 1)));
    CHECK(byte_from_quart_planes(q) == b);
  }
}

TEST_CASE("pack: block padding") {
  const AxisLayout l = preset("ququart").layout;
  SUBCASE("one black image") {
    const std::vector<Raster> imgs{Raster(4, 4, 3, 8)};
    const auto st = pack(imgs, l);
    CHECK(std::all_of(st.cells.begin(), st.cells.end(), [](auto v) { return v == 0; }));
    CHECK(std::count(st.blank.begin(), st.blank.end(), true) == 15);
  }
  SUBCASE("sixteen images fill one block") {
    const auto st = pack(random_images(l, 16, 1), l);
    CHECK(l.blocks() == 1);
    CHECK(std::count(st.blank.begin(), st.blank.end(), true) == 0);
  }
  SUBCASE("seventeen images need four blocks") {
    const AxisLayout l17 = preset("ququart", {false, 17, 0}).layout;
    CHECK(l17.blocks() == 4);
    const auto imgs = random_images(l17, 17, 2);
    const auto st = pack(imgs, l17);
    CHECK(std::count(st.blank.begin(), st.blank.end(), true) == 47);
    CHECK(unpack(st) == imgs);
    CHECK(unpack(st, true).size() == 64);
  }
  SUBCASE("errors") {
    CHECK_THROWS(pack(std::vector<Raster>{Raster(8, 8, 3, 8)}, l));
    CHECK_THROWS(pack(std::vector<Raster>{Raster(4, 4, 1, 8)}, l));
    CHECK_THROWS(pack(std::vector<Raster>{Raster(4, 4, 3, 16)}, l));
    CHECK_THROWS(pack(random_images(l, 17, 3), l));
  }
}

TEST_CASE("pack places a pixel at its curve address") {
  const AxisLayout l = preset("ququart").layout;
  std::vector<Raster> imgs(16, Raster(4, 4, 3, 8));
  // image 5, row 2, col 1, G = 201
  imgs[5].at(2, 1, 1) = 201;
  const auto st = pack(imgs, l);
  const auto z = sfc::encode_point(std::vector<std::uint32_t>{2, 1}, 2);
  const std::uint64_t zv = z.digits[0] | (z.digits[1] << 2);
  const auto q = quart_planes_from_byte(201);
  for (std::uint64_t plane = 0; plane < 4; ++plane) {
    // z digits 0-1, m digits 2-3, q digit 4
    const std::uint64_t addr = zv | (5u << 4) | (plane << 8);
    CHECK(st.cells[addr * 3 + 1] == q[plane]);
  }
  std::uint64_t nonzero = 0;
  for (const auto v : st.cells) nonzero += v != 0;
  CHECK(nonzero == 3);  // quarts 1, 2, 3 of 201; plane 2 is zero
}

TEST_CASE("pack/unpack round trip for every desk preset") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const AxisLayout l = preset(name).layout;
    const auto imgs = random_images(l, static_cast<std::size_t>(l.capacity() > 3 ? l.capacity() - 3 : l.capacity()), 9);
    const auto st = pack(imgs, l);
    CHECK(st.cells.size() == l.cell_count());
    CHECK(std::all_of(st.cells.begin(), st.cells.end(), [&](auto v) { return v < l.radix(); }));
    CHECK(unpack(st) == imgs);
  }
}

TEST_CASE("address digits cover every field bit exactly once") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const AxisLayout l = preset(name).layout;
    std::vector<int> hit(static_cast<std::size_t>(l.d * l.address_digits()), 0);
    for (const Field f : {Field::block, Field::image, Field::row, Field::col, Field::plane, Field::color})
      for (int b = 0; b < l.field_bits(f); ++b) {
        const int a = l.address_bit(f, b);
        REQUIRE(a >= 0);
        ++hit[static_cast<std::size_t>(a)];
      }
    CHECK(std::all_of(hit.begin(), hit.end(), [](int v) { return v == 1; }));
  }
}

TEST_CASE("qudit counts of the full-scale layouts") {
  CHECK(qudit_count(preset("ququart-gray", {true, 2024, 0}).layout) == 18);
  CHECK(qudit_count(preset("ququart-neqr", {true, 2024, 0}).layout) == 20);
  CHECK(qudit_count(preset("ququart", {true, 2024, 0}).layout) == 20);
  CHECK(qudit_count(preset("scheme1", {true, 512, 0}).layout) == 12);
  CHECK(qudit_count(preset("scheme5", {true, 0, 0}).layout) == 16);
  CHECK(qudit_count(preset("monster", {true, 0, 0}).layout) == 20);
}

TEST_CASE("digit gather/scatter") {
  const std::vector<int> pos{3, 0, 5};
  const std::uint64_t a = 0b101'100'011'010'001'000;  // digits 0..5 = 0,1,2,3,4,5 (d=3)
  CHECK(gather_digits(a, pos, 3) == (3u | (0u << 3) | (5u << 6)));
  const std::uint64_t b = scatter_digits(a, pos, 3, 7u | (6u << 3) | (1u << 6));
  CHECK(gather_digits(b, pos, 3) == (7u | (6u << 3) | (1u << 6)));
  CHECK(gather_digits(b, std::vector<int>{1, 2, 4}, 3) == gather_digits(a, std::vector<int>{1, 2, 4}, 3));
}
