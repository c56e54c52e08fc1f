#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qcrypt/sfc.hpp"

namespace qcrypt {

using BigInt = boost::multiprecision::cpp_int;

/// Exponent list (q_1..q_k) of a generalized baker map on a t^n x t^n grid.
struct BakerPartition {
  unsigned base = 4;
  int n = 1;
  std::vector<int> parts;

  /// Throws std::invalid_argument unless sum t^{q_i} = t^n.
  void check_sum() const;
  friend bool operator==(const BakerPartition&, const BakerPartition&) = default;
  friend auto operator<=>(const BakerPartition& a, const BakerPartition& b) { return a.parts <=> b.parts; }
};

/// True iff t^{q_i} divides q_1 + ... + q_{i-1} segment lengths for all i >= 2.
bool is_admissible(const BakerPartition& p);

/// T_n = T_{n-1}^t + 1, T_0 = 1.
BigInt count_admissible(unsigned t, int n);

/// All admissible partitions in lexicographic order. Throws std::length_error
/// when the count exceeds `cap`.
std::vector<BakerPartition> enumerate_admissible(unsigned t, int n, std::size_t cap = 1'000'000);

/// Uniform sample from the admissible set. Recursion: the single part (n)
/// with probability 1/T_n, else t independent samples of size n-1 glued.
BakerPartition sample_admissible(unsigned t, int n, std::mt19937_64& rng);

/// Segment-indexed evaluator of one partition.
class BakerMap {
 public:
  explicit BakerMap(BakerPartition p);

  std::pair<std::uint64_t, std::uint64_t> apply(std::uint64_t x, std::uint64_t y) const;
  std::pair<std::uint64_t, std::uint64_t> inverse(std::uint64_t x, std::uint64_t y) const;
  std::uint64_t side() const { return side_; }
  const BakerPartition& partition() const { return p_; }

 private:
  std::size_t segment(std::uint64_t v) const;

  BakerPartition p_;
  std::uint64_t side_ = 1;
  std::vector<std::uint64_t> start_;  // N_{i-1}
  std::vector<int> shift_;            // log2 t^{n-q_i}
};

std::pair<std::uint64_t, std::uint64_t> baker_apply(const BakerPartition& p, std::uint64_t x, std::uint64_t y);
std::pair<std::uint64_t, std::uint64_t> baker_inverse(const BakerPartition& p, std::uint64_t x, std::uint64_t y);

/// Swap-network form of one aligned segment: x' = x_{s-1..0} y_{n-s-1..0},
/// y' = x_{n-1..s} y_{n-1..n-s}. Digit strings are least significant first.
std::pair<sfc::QuditDigits, sfc::QuditDigits> digit_shuffle(int s, const sfc::QuditDigits& x,
                                                            const sfc::QuditDigits& y);

/// Baker map iterated r times on the pair of registers.
std::pair<sfc::QuditDigits, sfc::QuditDigits> scramble_pair(const BakerPartition& p, std::uint64_t r,
                                                            const sfc::QuditDigits& a,
                                                            const sfc::QuditDigits& b);

/// Forward permutation over the grid, indexed by x + y * side.
std::vector<std::uint32_t> baker_table(const BakerPartition& p);

/// perm^r via cycle decomposition.
std::vector<std::uint32_t> power_permutation(std::span<const std::uint32_t> perm, std::uint64_t r);

}  // namespace qcrypt
