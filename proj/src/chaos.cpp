#include "qcrypt/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "qcrypt/error.hpp"

namespace qcrypt::chaos {

void ChaoticParams::validate() const {
  const auto dim = static_cast<std::size_t>(dimension());
  if (lambda.size() != dim) throw std::invalid_argument("chaotic params: need one gain per coordinate");
  const std::size_t nb = system == System::yan7d ? 10 : 4;
  if (base.size() != nb) throw std::invalid_argument("chaotic params: wrong number of base parameters");
}

ChaoticParams ChaoticParams::yan7d(std::vector<double> lambda, double f) {
  return {System::yan7d, true, std::move(lambda), {10.0, 1.0, 28.0, 8.0 / 3.0, 2.0, f, 1.0, 2.0, 1.0, 1.0}};
}

ChaoticParams ChaoticParams::wang4d(std::vector<double> mu) {
  return {System::wang4d, true, std::move(mu), {10.0, 8.0 / 3.0, 28.0, -1.1}};
}

double chebyshev_recursive(std::uint64_t k, double x) {
  if (k == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (std::uint64_t i = 1; i < k; ++i) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double chebyshev_closed(std::uint64_t k, double x) {
  return std::cos(static_cast<double>(k) * std::acos(x));
}

double chebyshev(std::uint64_t k, double x) {
  if (!(std::fabs(x) <= 1.0)) throw std::domain_error("chebyshev: argument outside [-1,1]");
  return k <= 64 ? chebyshev_recursive(k, x) : chebyshev_closed(k, x);
}

double fold_unit(double x) {
  if (!std::isfinite(x)) throw std::domain_error("fold_unit: non-finite input");
  if (x >= -1.0 && x <= 1.0) return x;
  double r = std::fmod(x + 1.0, 4.0);
  if (r < 0) r += 4.0;
  return r <= 2.0 ? r - 1.0 : 3.0 - r;
}

std::vector<double> step(const ChaoticParams& p, std::span<const double> s) {
  if (s.size() != static_cast<std::size_t>(p.dimension())) throw std::invalid_argument("step: state dimension mismatch");
  std::vector<double> rhs(s.size());
  const auto& k = p.base;
  if (p.system == System::yan7d) {
    rhs[0] = k[0] * (s[1] - s[0]) + s[3] + k[1] * s[5];
    rhs[1] = k[2] * s[0] - s[1] - s[0] * s[2] + s[4];
    rhs[2] = -k[3] * s[2] + s[0] * s[1];
    rhs[3] = k[4] * s[3] - s[0] * s[2];
    rhs[4] = -k[5] * s[1] + s[5];
    rhs[5] = k[6] * s[0] + k[7] * s[1];
    rhs[6] = k[8] * s[6] + k[9] * s[3];
  } else {
    rhs[0] = k[0] * (s[1] - s[0]) + s[3];
    rhs[1] = k[2] * s[0] - s[1] - s[0] * s[2];
    rhs[2] = s[0] * s[1] - k[1] * s[2];
    rhs[3] = -s[1] * s[2] + k[3] * s[3];
  }
  if (!p.chaotified) return rhs;
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = std::sin(std::numbers::pi * p.lambda[i] * rhs[i]);
  return rhs;
}

std::vector<std::vector<double>> generate_sequences(const ChaoticParams& params, std::span<const double> seed,
                                                    std::span<const std::size_t> counts) {
  params.validate();
  const auto dim = static_cast<std::size_t>(params.dimension());
  if (seed.size() != dim) throw std::invalid_argument("generate_sequences: seed dimension mismatch");
  if (counts.size() > dim) throw std::invalid_argument("generate_sequences: more sequences than coordinates");

  std::vector<std::vector<double>> out(counts.size());
  std::vector<std::unordered_set<double>> seen(counts.size());
  std::size_t longest = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[i].reserve(counts[i]);
    seen[i].reserve(counts[i]);
    longest = std::max(longest, counts[i]);
  }
  if (longest == 0) return out;

  std::vector<double> state(seed.begin(), seed.end());
  for (auto& v : state) v = fold_unit(v);
  for (int i = 0; i < kBurnIn; ++i) state = step(params, state);

  const std::size_t limit = 1000 * longest;
  for (std::size_t it = 0; it < limit; ++it) {
    bool done = true;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (out[i].size() < counts[i] && seen[i].insert(state[i]).second) out[i].push_back(state[i]);
      done = done && out[i].size() == counts[i];
    }
    if (done) return out;
    state = step(params, state);
  }
  throw DataError("generate_sequences: degenerate orbit, not enough distinct values");
}

std::vector<std::uint32_t> rank_permutation(std::span<const double> seq) {
  std::vector<std::uint32_t> idx(seq.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) { return seq[a] < seq[b]; });
  std::vector<std::uint32_t> rank(seq.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k > 0 && seq[idx[k]] == seq[idx[k - 1]]) throw std::invalid_argument("rank_permutation: duplicate values");
    rank[idx[k]] = static_cast<std::uint32_t>(k);
  }
  return rank;
}

std::vector<std::array<double, 3>> orbit_export(const ChaoticParams& params, std::span<const double> seed,
                                                std::size_t n_points, std::array<int, 3> coords) {
  params.validate();
  const int dim = params.dimension();
  for (const int c : coords)
    if (c < 0 || c >= dim) throw std::invalid_argument("orbit_export: coordinate index out of range");
  if (seed.size() != static_cast<std::size_t>(dim)) throw std::invalid_argument("orbit_export: seed dimension mismatch");
  std::vector<double> state(seed.begin(), seed.end());
  for (auto& v : state) v = fold_unit(v);
  for (int i = 0; i < kBurnIn; ++i) state = step(params, state);
  std::vector<std::array<double, 3>> out;
  out.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    out.push_back({state[static_cast<std::size_t>(coords[0])], state[static_cast<std::size_t>(coords[1])],
                   state[static_cast<std::size_t>(coords[2])]});
    state = step(params, state);
  }
  return out;
}

std::uint64_t floor_scale_mod(double v, int pow10, int bits) {
  if (!std::isfinite(v)) throw std::domain_error("floor_scale_mod: non-finite value");
  if (pow10 < 0 || pow10 > 20) throw std::invalid_argument("floor_scale_mod: scale exponent outside [0,20]");
  if (bits < 1 || bits > 64) throw std::invalid_argument("floor_scale_mod: modulus bits outside [1,64]");
  using u128 = unsigned __int128;
  if (v == 0.0) return 0;
  int e = 0;
  const double frac = std::frexp(std::fabs(v), &e);  // |v| = frac * 2^e, frac in [0.5,1)
  const auto mant = static_cast<std::uint64_t>(std::ldexp(frac, 53));
  e -= 53;
  u128 scale = 1;
  for (int i = 0; i < pow10; ++i) scale *= 10;
  const u128 M = static_cast<u128>(mant) * scale;  // < 2^120
  const u128 mod_mask = bits == 64 ? ~u128{0} >> 64 : (u128{1} << bits) - 1;

  u128 q = 0;
  bool inexact = false;
  if (e >= 0) {
    if (e >= bits) return 0;
    q = (M & mod_mask) << e;
  } else if (-e >= 128) {
    inexact = M != 0;
  } else {
    const int k = -e;
    q = M >> k;
    inexact = (M & ((u128{1} << k) - 1)) != 0;
  }
  q &= mod_mask;
  if (v > 0) return static_cast<std::uint64_t>(q);
  // floor of a negative value: -(q + inexact), reduced mod 2^bits.
  const u128 neg = (q + (inexact ? 1 : 0)) & mod_mask;
  return static_cast<std::uint64_t>((mod_mask + 1 - neg) & mod_mask);
}

KeyStream KeyStream::from(std::vector<std::vector<double>> seq) {
  KeyStream ks;
  ks.rank.reserve(seq.size());
  for (const auto& s : seq) ks.rank.push_back(rank_permutation(s));
  ks.seq = std::move(seq);
  return ks;
}

namespace {

enum Q { XI, IOTA, ZETA, ALPHA, BETA, GAMMA };

std::uint8_t ququart_byte(const KeyStream& ks, int sigma_src, int tau_src, int z_arg, int m_arg, std::uint64_t m,
                          std::uint64_t z) {
  const auto& zs = ks.seq[static_cast<std::size_t>(z_arg)];
  const auto& ms = ks.seq[static_cast<std::size_t>(m_arg)];
  const std::uint64_t N = zs.size();
  const double a = cheb(ks.rank[static_cast<std::size_t>(sigma_src)][z], zs[N - 1 - z]);
  const double b = cheb(ks.rank[static_cast<std::size_t>(tau_src)][m], ms[N - 1 - m]);
  return static_cast<std::uint8_t>(floor_scale_mod(a * b, 10, 8));
}

}  // namespace

std::array<std::uint8_t, 3> key_bytes_ququart(const KeyStream& ks, std::uint64_t m, std::uint64_t z) {
  if (ks.seq.size() < 6) throw std::invalid_argument("key_quarts_ququart: need six sequences");
  const std::uint64_t N = ks.seq[0].size();
  if (m >= N || z >= N) throw std::out_of_range("key_quarts_ququart: index out of range");
  return {ququart_byte(ks, XI, ALPHA, BETA, ZETA, m, z), ququart_byte(ks, ZETA, GAMMA, GAMMA, XI, m, z),
          ququart_byte(ks, IOTA, BETA, ALPHA, IOTA, m, z)};
}

std::array<std::array<std::uint8_t, 4>, 3> key_quarts_ququart(const KeyStream& ks, std::uint64_t m,
                                                              std::uint64_t z) {
  const auto bytes = key_bytes_ququart(ks, m, z);
  std::array<std::array<std::uint8_t, 4>, 3> out{};
  for (std::size_t c = 0; c < 3; ++c) out[c] = quart_planes_from_byte(bytes[c]);
  return out;
}

int secret_bits_width(Secret s) {
  switch (s) {
    case Secret::triple_bit:
    case Secret::pair_bit: return 1;
    case Secret::triple_rgb24: return 24;
    case Secret::triple_byte:
    case Secret::pair_byte: return 8;
  }
  throw std::invalid_argument("unknown secret formula");
}

std::uint64_t secret_value(Secret s, const KeyStream& ks, std::uint64_t i, std::uint64_t j, std::uint64_t l) {
  const bool pair = s == Secret::pair_bit || s == Secret::pair_byte;
  if (ks.seq.size() < (pair ? 2u : 3u)) throw std::invalid_argument("secret_value: missing sequences");
  const auto& x = ks.seq[0];
  const auto& y = ks.seq[1];
  const auto& rx = ks.rank[0];
  const auto& ry = ks.rank[1];
  auto at = [](const auto& v, std::uint64_t k) {
    if (k >= v.size()) throw std::out_of_range("secret_value: index out of range");
    return v[k];
  };
  switch (s) {
    case Secret::triple_bit: {
      const auto& z = ks.seq[2];
      const auto& rz = ks.rank[2];
      const double v = cheb(at(rx, i), at(y, j)) * cheb(at(ry, j), at(z, l)) * cheb(at(rz, l), at(x, i));
      return floor_scale_mod(v, 5, 1);
    }
    case Secret::triple_rgb24:
    case Secret::triple_byte: {
      const auto& z = ks.seq[2];
      const auto& rz = ks.rank[2];
      const double v = cheb(at(rx, i), at(y, i)) * cheb(at(ry, i), at(z, i)) * cheb(at(rz, i), at(x, i));
      return s == Secret::triple_rgb24 ? floor_scale_mod(v, 20, 24) : floor_scale_mod(v, 10, 8);
    }
    case Secret::pair_byte:
    case Secret::pair_bit: {
      const std::uint64_t L = x.size();
      if (i >= L || j >= L || y.size() != L) throw std::out_of_range("secret_value: index out of range");
      const double v = cheb(rx[i], y[L - 1 - i]) * cheb(ry[j], x[L - 1 - j]);
      return floor_scale_mod(v, 10, s == Secret::pair_byte ? 8 : 1);
    }
  }
  throw std::invalid_argument("secret_value: unknown formula");
}

}  // namespace qcrypt::chaos
