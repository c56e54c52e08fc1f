#include <doctest.h>

#include <random>

#include "qcrypt/sfc.hpp"

using namespace qcrypt::sfc;

namespace {

// Straight bit interleaving: digit k gets bit k of every coordinate,
// coordinate 0 in the top bit of the digit.
std::vector<std::uint8_t> interleave(const std::vector<std::uint32_t>& c, int n) {
  const int d = static_cast<int>(c.size());
  std::vector<std::uint8_t> out(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(k)] |= static_cast<std::uint8_t>(((c[static_cast<std::size_t>(i)] >> k) & 1u) << (d - 1 - i));
  return out;
}

double to_double(const Rational& r) { return static_cast<double>(r); }

}  // namespace

TEST_CASE("step functions: plateaus, ramps and period") {
  const CurveSpec plat{2, CurveKind::plateau, 4};
  CHECK(step_function_eval(plat, 1, 1.0 / 16) == 0.0);
  CHECK(step_function_eval(plat, 2, 5.0 / 16) == 1.0);
  CHECK(step_function_eval(plat, 1, 7.0 / 16) == doctest::Approx(0.5));
  CHECK(step_function_eval(plat, 1, 1.0 + 1.0 / 16) == 0.0);
  CHECK_THROWS_AS(step_function_eval(plat, 3, 0.1), std::out_of_range);
  CHECK_THROWS_AS(step_function_eval(plat, 0, 0.1), std::out_of_range);

  for (int d = 1; d <= 4; ++d) {
    const CurveSpec s{d, CurveKind::plateau, 4};
    const double w = 1.0 / (1 << (d + 1));
    for (int j = 0; j < (1 << d); ++j)
      for (const double frac : {0.0, 0.25, 0.5, 1.0}) {
        const double u = (2 * j + frac) * w;
        for (int axis = 1; axis <= d; ++axis)
          CHECK(step_function_eval(s, axis, u) == static_cast<double>((j >> (d - axis)) & 1));
      }
  }

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double u = U(rng);
    for (int axis = 1; axis <= 3; ++axis) {
      const CurveSpec s{3, CurveKind::plateau, 4};
      CHECK(step_function_eval(s, axis, u + 1) == doctest::Approx(step_function_eval(s, axis, u)).epsilon(1e-12));
    }
  }
}

TEST_CASE("schoenberg step function") {
  const CurveSpec s{2, CurveKind::schoenberg, 4};
  CHECK(step_function_eval(s, 1, 0.2) == 0.0);
  CHECK(step_function_eval(s, 1, 0.8) == 1.0);
  CHECK(step_function_eval(s, 1, 0.5) == doctest::Approx(0.5));
  CHECK(step_function_eval(s, 1, -0.8) == 1.0);  // even
  CHECK(step_function_eval(s, 1, 2.2) == 0.0);   // period 2
  CHECK_THROWS_AS((CurveSpec{3, CurveKind::schoenberg, 4}.validate()), std::invalid_argument);
}

TEST_CASE("curve_eval examples") {
  const CurveSpec s{2, CurveKind::plateau, 2};
  const auto origin = curve_eval(s, 0.0);
  CHECK(origin == std::vector<double>{0.0, 0.0});

  const std::vector<std::uint32_t> p{2, 1};
  CHECK(preimage_param(p, 2) == Rational(17, 32));
  const auto c = curve_eval(s, to_double(preimage_param(p, 2)));
  CHECK(c[0] == 0.5);
  CHECK(c[1] == 0.25);

  // Schoenberg: (1/2, 1/2) has a_0 = a_1 = 1 and zeros after.
  const CurveSpec sch{2, CurveKind::schoenberg, 20};
  const double t0 = to_double(schoenberg_preimage(1, 1, 1));
  const auto h = curve_eval(sch, t0);
  CHECK(std::abs(h[0] - 0.5) <= std::ldexp(1.0, -20));
  CHECK(std::abs(h[1] - 0.5) <= std::ldexp(1.0, -20));
}

TEST_CASE("adding a term moves each coordinate by at most 2^-(n+1)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int d = 1; d <= 3; ++d)
    for (int n = 1; n <= 10; ++n)
      for (int i = 0; i < 50; ++i) {
        const double u = U(rng);
        const auto a = curve_eval({d, CurveKind::plateau, n}, u);
        const auto b = curve_eval({d, CurveKind::plateau, n + 1}, u);
        for (int k = 0; k < d; ++k) {
          CHECK(std::abs(a[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)]) <= std::ldexp(1.0, -(n + 1)));
          CHECK(a[static_cast<std::size_t>(k)] <= 1.0 - std::ldexp(1.0, -n) + 1e-15);
        }
      }
}

TEST_CASE("encode/decode examples") {
  CHECK(encode_point(std::vector<std::uint32_t>{0, 0}, 2).digits == std::vector<std::uint8_t>{0, 0});
  const auto e = encode_point(std::vector<std::uint32_t>{2, 1}, 2);
  CHECK(e.radix == 4);
  CHECK(e.digits == std::vector<std::uint8_t>{1, 2});
  CHECK(encode_point(std::vector<std::uint32_t>{1, 1, 1}, 1).digits == std::vector<std::uint8_t>{7});

  CHECK(decode_point({4, {0, 0}}, 2, 2) == std::vector<std::uint32_t>{0, 0});
  CHECK(decode_point({4, {1, 2}}, 2, 2) == std::vector<std::uint32_t>{2, 1});
  CHECK(decode_point({8, {7}}, 3, 1) == std::vector<std::uint32_t>{1, 1, 1});
  CHECK_THROWS(decode_point({8, {1, 2}}, 2, 2));
  CHECK_THROWS(encode_point(std::vector<std::uint32_t>{4, 0}, 2));

  CHECK(preimage_param(std::vector<std::uint32_t>{0, 0}, 2) == 0);
  CHECK(preimage_param(std::vector<std::uint32_t>{1, 1, 1}, 1) == Rational(7, 8));
}

TEST_CASE("round trip and exact preimages over whole grids") {
  for (int d = 2; d <= 4; ++d)
    for (int n = 1; n <= 4; ++n) {
      if (d * n > 12) continue;
      const std::uint32_t side = 1u << n;
      std::vector<std::uint32_t> p(static_cast<std::size_t>(d), 0);
      const std::uint64_t total = std::uint64_t{1} << (d * n);
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t v = idx;
        for (auto& c : p) {
          c = static_cast<std::uint32_t>(v % side);
          v /= side;
        }
        const auto e = encode_point(p, n);
        REQUIRE(e.digits == interleave(p, n));
        REQUIRE(decode_point(e, d, n) == p);
        if (d <= 3) {
          const auto c = curve_eval({d, CurveKind::plateau, n}, to_double(preimage_param(p, n)));
          for (int k = 0; k < d; ++k)
            REQUIRE(std::abs(c[static_cast<std::size_t>(k)] - static_cast<double>(p[static_cast<std::size_t>(k)]) / side) < 1e-12);
        }
      }
    }
}
