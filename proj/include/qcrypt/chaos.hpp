#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qcrypt/repr.hpp"

namespace qcrypt::chaos {

enum class System { yan7d, wang4d };

struct ChaoticParams {
  System system = System::yan7d;
  bool chaotified = true;
  std::vector<double> lambda;  // one sine gain per coordinate
  std::vector<double> base;    // yan7d: a,b,c,d,e,f,g,h,l,m   wang4d: a,b,c,r

  int dimension() const { return system == System::yan7d ? 7 : 4; }
  void validate() const;

  static ChaoticParams yan7d(std::vector<double> lambda, double f = 7.2);
  static ChaoticParams wang4d(std::vector<double> mu);
};

inline constexpr int kBurnIn = 100;

/// T_k(x) for |x| <= 1: three-term recursion for k <= 64, cos(k acos x) above.
double chebyshev(std::uint64_t k, double x);
double chebyshev_recursive(std::uint64_t k, double x);
double chebyshev_closed(std::uint64_t k, double x);

/// Triangle wave of period 4 onto [-1,1]; identity on [-1,1].
double fold_unit(double x);

/// chebyshev(k, fold_unit(x)).
inline double cheb(std::uint64_t k, double x) { return chebyshev(k, fold_unit(x)); }

/// One iteration of the (sine-chaotified) map.
std::vector<double> step(const ChaoticParams& params, std::span<const double> state);

/// Folds the seed into [-1,1]^dim, discards kBurnIn iterations, then collects
/// coordinate i of each state into sequence i, skipping exact repeats, until
/// sequence i holds counts[i] values. Coordinates past counts.size() are not
/// collected. Throws qcrypt::DataError after 1000 * max(count) iterations.
std::vector<std::vector<double>> generate_sequences(const ChaoticParams& params, std::span<const double> seed,
                                                    std::span<const std::size_t> counts);

/// rank[i] = position of seq[i] in ascending order. Throws on duplicates.
std::vector<std::uint32_t> rank_permutation(std::span<const double> seq);

/// States after burn-in projected onto three coordinates (0-based).
std::vector<std::array<double, 3>> orbit_export(const ChaoticParams& params, std::span<const double> seed,
                                                std::size_t n_points, std::array<int, 3> coords);

/// floor(v * 10^pow10) mod 2^bits, evaluated exactly from the binary64 value.
std::uint64_t floor_scale_mod(double v, int pow10, int bits);

/// Sequences plus their rank permutations.
struct KeyStream {
  std::vector<std::vector<double>> seq;
  std::vector<std::vector<std::uint32_t>> rank;

  static KeyStream from(std::vector<std::vector<double>> seq);
};

/// Ququart stream: seq 0..5 are xi, iota, zeta, alpha, beta, gamma from
/// coordinates 1..6. Returns the R, G, B key bytes for image m, pixel z.
std::array<std::uint8_t, 3> key_bytes_ququart(const KeyStream& ks, std::uint64_t m, std::uint64_t z);
/// Key bytes split into quarts, least significant first (K_0 .. K_3).
std::array<std::array<std::uint8_t, 4>, 3> key_quarts_ququart(const KeyStream& ks, std::uint64_t m,
                                                              std::uint64_t z);

enum class Secret {
  triple_bit,    // floor(T_{n_i}(y_j) T_{m_j}(z_l) T_{k_l}(x_i) 1e5) mod 2
  triple_rgb24,  // floor(T_{n_k}(y_k) T_{m_k}(z_k) T_{r_k}(x_k) 1e20) mod 2^24
  triple_byte,   // same product, 1e10, mod 2^8
  pair_byte,     // floor(T_{n_a}(y_{L-1-a}) T_{r_b}(x_{L-1-b}) 1e10) mod 2^8
  pair_bit,      // same product, mod 2
};

int secret_bits_width(Secret s);

/// Quoctit secret values; ks.seq holds x, y, z (pair formulas use x, y).
/// `i` is the x index (pixel column, fused index k, or first control group),
/// `j` the y index, `l` the z index; formulas use what they need.
std::uint64_t secret_value(Secret s, const KeyStream& ks, std::uint64_t i, std::uint64_t j, std::uint64_t l);

/// Plaintext-dependent seeds.
/// Ququart: x1 = sum of all quarts / (pixels * images * blocks), then
/// x2..x7 = T_r, T_g, T_b, T_r', T_g', T_b' of x1.
std::vector<double> seed_ququart(const MultiImageState& state);
/// Quoctit: x = sum / address count, y = T_s(x), z = T_s'(x), w = T_s''(x).
std::vector<double> seed_quoctit(const MultiImageState& state);
/// Per-color seed of the pair-keyed RGB layouts.
std::vector<double> seed_per_color(const MultiImageState& state, int color);

}  // namespace qcrypt::chaos
