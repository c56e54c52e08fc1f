#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "qcrypt/chaos.hpp"
#include "qcrypt/error.hpp"
#include "qcrypt/plan.hpp"

using namespace qcrypt;
using namespace qcrypt::chaos;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> yan_oracle(const std::vector<double>& L, const std::vector<double>& x, double f = 7.2) {
  return {std::sin(pi * L[0] * (10 * (x[1] - x[0]) + x[3] + x[5])),
          std::sin(pi * L[1] * (28 * x[0] - x[1] - x[0] * x[2] + x[4])),
          std::sin(pi * L[2] * (-(8.0 / 3.0) * x[2] + x[0] * x[1])),
          std::sin(pi * L[3] * (2 * x[3] - x[0] * x[2])),
          std::sin(pi * L[4] * (-f * x[1] + x[5])),
          std::sin(pi * L[5] * (x[0] + 2 * x[1])),
          std::sin(pi * L[6] * (x[6] + x[3]))};
}

std::vector<double> wang_oracle(const std::vector<double>& M, const std::vector<double>& s) {
  const double x = s[0], y = s[1], z = s[2], w = s[3];
  return {std::sin(pi * M[0] * (10 * (y - x) + w)), std::sin(pi * M[1] * (28 * x - y - x * z)),
          std::sin(pi * M[2] * (x * y - (8.0 / 3.0) * z)), std::sin(pi * M[3] * (-y * z - 1.1 * w))};
}

// floor(v * 10^p) mod 2^bits from the exact rational value of v.
std::uint64_t floor_mod_oracle(double v, int p, int bits) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  int e = 0;
  const double m = std::frexp(v, &e);
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  cpp_rational r(mant);
  cpp_int p10 = 1;
  for (int i = 0; i < p; ++i) p10 *= 10;
  r *= p10;
  const int shift = e - 53;
  if (shift >= 0) r *= cpp_rational(cpp_int(1) << shift);
  else r /= cpp_rational(cpp_int(1) << -shift);
  cpp_int fl = numerator(r) / denominator(r);
  if (r < 0 && fl * denominator(r) != numerator(r)) fl -= 1;
  const cpp_int M = cpp_int(1) << bits;
  cpp_int md = fl % M;
  if (md < 0) md += M;
  return static_cast<std::uint64_t>(md);
}

std::vector<std::uint32_t> rank_oracle(const std::vector<double>& s) {
  std::vector<std::uint32_t> r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) r[i] += s[j] < s[i];
  return r;
}

// Degree <= 64 by the three-term recurrence, higher degrees by cos(k acos x).
// The 24-bit secret scales by 1e20, so the evaluation rule has to match bit for bit.
double T(std::uint64_t k, double x) {
  if (k > 64) return std::cos(static_cast<double>(k) * std::acos(x));
  double a = 1.0, b = x;
  if (k == 0) return a;
  for (std::uint64_t i = 1; i < k; ++i) {
    const double c = 2.0 * x * b - a;
    a = b;
    b = c;
  }
  return b;
}

const std::vector<double> kAppendix{2, 1.5, 1, 7, 0.5, 6, 1};

}  // namespace

TEST_CASE("chebyshev") {
  for (const double x : {-1.0, -0.3, 0.0, 0.7, 1.0}) CHECK(chebyshev(0, x) == 1.0);
  CHECK(chebyshev(2, 0.5) == doctest::Approx(-0.5));
  CHECK(chebyshev(5, std::cos(0.3)) == doctest::Approx(std::cos(1.5)).epsilon(1e-12));
  CHECK(chebyshev(200, std::cos(0.01)) == doctest::Approx(std::cos(2.0)).epsilon(1e-9));
  CHECK_THROWS(chebyshev(3, 1.5));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double x = U(rng);
    for (std::uint64_t k : {0ull, 1ull, 3ull, 17ull, 64ull, 65ull, 500ull, 1000ull}) {
      CHECK(std::abs(chebyshev_recursive(k, x) - chebyshev_closed(k, x)) < 1e-9);
      CHECK(std::abs(chebyshev(k, x)) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("fold_unit") {
  CHECK(fold_unit(0.5) == 0.5);
  CHECK(fold_unit(1.5) == 0.5);
  CHECK(fold_unit(-3.0) == 1.0);
  CHECK(fold_unit(1.0) == 1.0);
  CHECK(fold_unit(-1.0) == -1.0);
  CHECK(fold_unit(2.5) == -0.5);
  CHECK(fold_unit(4.5) == 0.5);
  CHECK_THROWS(fold_unit(std::numeric_limits<double>::infinity()));
  CHECK_THROWS(fold_unit(std::nan("")));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-100.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = U(rng);
    CHECK(std::abs(fold_unit(x)) <= 1.0);
    CHECK(fold_unit(x + 4.0) == doctest::Approx(fold_unit(x)).epsilon(1e-9));
  }
}

TEST_CASE("step against the written-out systems") {
  const auto yan = ChaoticParams::yan7d(kAppendix);
  CHECK(step(yan, std::vector<double>(7, 0.0)) == std::vector<double>(7, 0.0));
  const std::vector<double> x0(7, 0.1);
  const auto got = step(yan, x0);
  const auto want = yan_oracle(kAppendix, x0);
  for (std::size_t i = 0; i < 7; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0), G(0.5, 7.5), F(6.4, 15.2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> L(7), s(7), M(4), w(4);
    for (auto& v : L) v = G(rng);
    for (auto& v : s) v = U(rng);
    for (auto& v : M) v = G(rng);
    for (auto& v : w) v = U(rng);
    const double f = F(rng);
    const auto a = step(ChaoticParams::yan7d(L, f), s), b = yan_oracle(L, s, f);
    for (std::size_t i = 0; i < 7; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    const auto c = step(ChaoticParams::wang4d(M), w), d = wang_oracle(M, w);
    for (std::size_t i = 0; i < 4; ++i) CHECK(c[i] == doctest::Approx(d[i]).epsilon(1e-12));
  }
  CHECK_THROWS(step(yan, std::vector<double>(4, 0.1)));
}

TEST_CASE("orbits stay in the cube") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(-5.0, 5.0), G(0.5, 7.5);
  for (const auto sys : {System::yan7d, System::wang4d}) {
    const int dim = sys == System::yan7d ? 7 : 4;
    std::vector<double> L(static_cast<std::size_t>(dim)), s(static_cast<std::size_t>(dim));
    for (auto& v : L) v = G(rng);
    for (auto& v : s) v = fold_unit(U(rng));
    const auto p = sys == System::yan7d ? ChaoticParams::yan7d(L) : ChaoticParams::wang4d(L);
    for (int i = 0; i < 100000; ++i) {
      s = step(p, s);
      for (const double v : s) REQUIRE(std::abs(v) <= 1.0);
    }
  }
}

TEST_CASE("generate_sequences: burn-in, distinctness, errors") {
  const auto p = ChaoticParams::yan7d(kAppendix);
  const std::vector<double> seed{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 1.7};
  std::vector<double> s(seed);
  for (auto& v : s) v = fold_unit(v);
  for (int i = 0; i < 100; ++i) s = yan_oracle(kAppendix, s);
  const std::vector<std::size_t> one(7, 1);
  const auto first = generate_sequences(p, seed, one);
  for (std::size_t i = 0; i < 7; ++i) CHECK(first[i][0] == doctest::Approx(s[i]).epsilon(1e-9));

  const std::vector<std::size_t> zero(7, 0);
  for (const auto& q : generate_sequences(p, seed, zero)) CHECK(q.empty());

  const std::vector<std::size_t> counts{500, 1000, 0, 20, 4096};
  const auto seqs = generate_sequences(p, seed, counts);
  REQUIRE(seqs.size() == counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    CHECK(seqs[i].size() == counts[i]);
    CHECK(std::set<double>(seqs[i].begin(), seqs[i].end()).size() == counts[i]);
  }
  // identical inputs give identical output
  CHECK(generate_sequences(p, seed, counts) == seqs);

  // the origin is a fixed point: no second distinct value ever appears
  const std::vector<std::size_t> two(7, 2);
  CHECK_THROWS_AS(generate_sequences(p, std::vector<double>(7, 0.0), two), DataError);
  CHECK_THROWS(generate_sequences(p, std::vector<double>(4, 0.1), two));
}

TEST_CASE("seed sensitivity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  int diverged = 0;
  const auto p = ChaoticParams::yan7d(kAppendix);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(7);
    for (auto& v : a) v = U(rng);
    auto b = a;
    b[static_cast<std::size_t>(trial % 7)] += 1e-10;
    for (int it = 0; it < 200; ++it) {
      a = step(p, a);
      b = step(p, b);
      double sup = 0;
      for (std::size_t i = 0; i < 7; ++i) sup = std::max(sup, std::abs(a[i] - b[i]));
      if (sup > 0.1) {
        ++diverged;
        break;
      }
    }
  }
  CHECK(diverged >= 95);
}

TEST_CASE("rank_permutation") {
  CHECK(rank_permutation(std::vector<double>{0.3, 0.1, 0.2}) == std::vector<std::uint32_t>{2, 0, 1});
  CHECK(rank_permutation(std::vector<double>{0.1, 0.2, 0.3}) == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(rank_permutation(std::vector<double>{0.3, 0.2, 0.1}) == std::vector<std::uint32_t>{2, 1, 0});
  CHECK_THROWS(rank_permutation(std::vector<double>{0.3, 0.3}));
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> s(300);
  for (auto& v : s) v = U(rng);
  CHECK(rank_permutation(s) == rank_oracle(s));
}

TEST_CASE("floor_scale_mod is exact") {
  CHECK(floor_scale_mod(1.0, 10, 8) == 0);
  CHECK(floor_scale_mod(1.0, 5, 1) == 0);
  CHECK(floor_scale_mod(0.0, 20, 24) == 0);
  CHECK(floor_scale_mod(-0.5, 1, 8) == 251);
  CHECK(floor_scale_mod(0.123, 1, 8) == 1);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = U(rng) * (i % 3 == 0 ? 1e-6 : 1.0);
    for (const auto& [p, b] : std::vector<std::pair<int, int>>{{5, 1}, {10, 8}, {20, 24}, {10, 1}, {20, 64}})
      REQUIRE(floor_scale_mod(v, p, b) == floor_mod_oracle(v, p, b));
  }
}

TEST_CASE("ququart key bytes against a scalar re-evaluation") {
  const auto p = ChaoticParams::yan7d({1.3, 2.1, 3.3, 0.9, 4.4, 5.5, 6.1});
  const std::vector<double> seed{0.2, -0.1, 0.33, 0.5, -0.7, 0.1, 0.05};
  const std::size_t N = 64;
  auto seq = generate_sequences(p, seed, std::vector<std::size_t>{0, N, N, N, N, N, N});
  seq.erase(seq.begin());
  const auto ks = KeyStream::from(seq);
  const auto& xi = seq[0];
  const auto& iota = seq[1];
  const auto& zeta = seq[2];
  const auto& alpha = seq[3];
  const auto& beta = seq[4];
  const auto& gamma = seq[5];
  const auto s_r = rank_oracle(xi), t_r = rank_oracle(alpha);
  const auto s_g = rank_oracle(zeta), t_g = rank_oracle(gamma);
  const auto s_b = rank_oracle(iota), t_b = rank_oracle(beta);
  for (std::uint64_t m = 0; m < N; m += 5)
    for (std::uint64_t z = 0; z < N; z += 3) {
      const double R = T(s_r[z], beta[N - 1 - z]) * T(t_r[m], zeta[N - 1 - m]);
      const double G = T(s_g[z], gamma[N - 1 - z]) * T(t_g[m], xi[N - 1 - m]);
      const double B = T(s_b[z], alpha[N - 1 - z]) * T(t_b[m], iota[N - 1 - m]);
      const auto got = key_bytes_ququart(ks, m, z);
      CHECK(got[0] == floor_mod_oracle(R, 10, 8));
      CHECK(got[1] == floor_mod_oracle(G, 10, 8));
      CHECK(got[2] == floor_mod_oracle(B, 10, 8));
      const auto q = key_quarts_ququart(ks, m, z);
      for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t k = 0; k < 4; ++k) CHECK(q[c][k] == ((got[c] >> (2 * k)) & 3));
    }
  CHECK_THROWS(key_bytes_ququart(ks, N, 0));
}

TEST_CASE("secret values against scalar re-evaluation") {
  const auto p = ChaoticParams::wang4d({1.7, 2.9, 3.1, 4.3});
  const std::vector<double> seed{0.3, -0.2, 0.6, 0.1};
  const std::size_t L = 512;
  const auto seq = generate_sequences(p, seed, std::vector<std::size_t>{L, L, L});
  const auto ks = KeyStream::from(seq);
  const auto& x = seq[0];
  const auto& y = seq[1];
  const auto& z = seq[2];
  const auto n = rank_oracle(x), m = rank_oracle(y), k = rank_oracle(z);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint64_t> I(0, L - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto i = I(rng), j = I(rng), l = I(rng);
    const double tb = T(n[i], y[j]) * T(m[j], z[l]) * T(k[l], x[i]);
    CHECK(secret_value(Secret::triple_bit, ks, i, j, l) == floor_mod_oracle(tb, 5, 1));
    const double tk = T(n[i], y[i]) * T(m[i], z[i]) * T(k[i], x[i]);
    CHECK(secret_value(Secret::triple_rgb24, ks, i, 0, 0) == floor_mod_oracle(tk, 20, 24));
    CHECK(secret_value(Secret::triple_byte, ks, i, 0, 0) == floor_mod_oracle(tk, 10, 8));
    const double pr = T(n[i], y[L - 1 - i]) * T(m[j], x[L - 1 - j]);
    CHECK(secret_value(Secret::pair_byte, ks, i, j, 0) == floor_mod_oracle(pr, 10, 8));
    CHECK(secret_value(Secret::pair_bit, ks, i, j, 0) == floor_mod_oracle(pr, 10, 1));
  }
  CHECK(secret_bits_width(Secret::triple_rgb24) == 24);
  CHECK_THROWS(secret_value(Secret::triple_bit, ks, L, 0, 0));
}

TEST_CASE("plaintext seeds") {
  const auto plan = preset("ququart");
  const AxisLayout& l = plan.layout;
  MultiImageState st{l, std::vector<std::uint8_t>(l.cell_count(), 0), std::vector<bool>(l.capacity(), false), 16};
  auto s = seed_ququart(st);
  CHECK(s == std::vector<double>{0, 1, 1, 1, 1, 1, 1});
  st.cells[123] = 1;
  s = seed_ququart(st);
  CHECK(s[0] == 1.0 / 256.0);
  const auto before = s[0];
  st.cells[77] = 2;
  CHECK(seed_ququart(st)[0] != before);

  const auto q = preset("scheme1");
  MultiImageState qs{q.layout, std::vector<std::uint8_t>(q.layout.cell_count(), 0), std::vector<bool>(q.layout.capacity(), false), 1};
  CHECK(seed_quoctit(qs) == std::vector<double>{0, 1, 1, 1});
  qs.cells[5] = 1;
  CHECK(seed_quoctit(qs)[0] == std::ldexp(1.0, -18));  // 8^6 addresses

  const auto mo = preset("monster");
  MultiImageState ms{mo.layout, std::vector<std::uint8_t>(mo.layout.cell_count(), 0), std::vector<bool>(mo.layout.capacity(), false), 1};
  CHECK(seed_per_color(ms, 2) == std::vector<double>{0, 0, 1, 1});
  ms.cells[3 * 10 + 1] = 1;
  const auto sc = seed_per_color(ms, 1);
  CHECK(sc[0] == sc[1]);
  CHECK(seed_per_color(ms, 0)[1] == 0.0);
  CHECK_THROWS(seed_per_color(ms, 3));
  CHECK_THROWS(seed_ququart(qs));
}

TEST_CASE("orbit export") {
  const auto p = ChaoticParams::yan7d(kAppendix);
  const std::vector<double> seed(7, 0.1);
  for (const auto c : {std::array<int, 3>{0, 1, 2}, std::array<int, 3>{2, 3, 4}, std::array<int, 3>{4, 5, 6}}) {
    const auto pts = orbit_export(p, seed, 10000, c);
    CHECK(pts.size() == 10000);
    for (const auto& q : pts)
      for (const double v : q) REQUIRE((std::isfinite(v) && std::abs(v) <= 1.0));
  }
  CHECK_THROWS(orbit_export(p, seed, 10, {0, 1, 7}));
}
