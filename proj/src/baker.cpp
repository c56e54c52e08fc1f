#include "qcrypt/baker.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <optional>
#include <stdexcept>

namespace qcrypt {

namespace {

int log2_base(unsigned t) {
  if (t < 2 || !std::has_single_bit(t)) throw std::invalid_argument("baker: base must be a power of two >= 2");
  return std::countr_zero(t);
}

void check_grid(unsigned t, int n) {
  const int lt = log2_base(t);
  if (n < 0 || lt * n > 62) throw std::invalid_argument("baker: grid exponent out of range");
}

std::uint64_t to_int(const sfc::QuditDigits& q, int lt) {
  std::uint64_t v = 0;
  for (std::size_t k = q.digits.size(); k-- > 0;) v = (v << lt) | q.digits[k];
  return v;
}

sfc::QuditDigits to_digits(std::uint64_t v, unsigned t, std::size_t n) {
  const int lt = std::countr_zero(t);
  sfc::QuditDigits q{t, std::vector<std::uint8_t>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    q.digits[k] = static_cast<std::uint8_t>(v & (t - 1));
    v >>= lt;
  }
  return q;
}

void check_register(const sfc::QuditDigits& q, unsigned t) {
  if (q.radix != t) throw std::invalid_argument("baker: register radix does not match the partition base");
  for (const auto dgt : q.digits)
    if (dgt >= t) throw std::out_of_range("baker: digit exceeds radix");
}

// T_k for k = 0.. while it fits in 64 bits.
std::vector<std::uint64_t> small_counts(unsigned t, int n) {
  std::vector<std::uint64_t> out{1};
  for (int k = 1; k <= n; ++k) {
    const BigInt v = count_admissible(t, k);
    if (v > std::numeric_limits<std::uint64_t>::max()) break;
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

void sample_into(unsigned t, int k, const std::vector<std::uint64_t>& counts, std::mt19937_64& rng,
                 std::vector<int>& parts) {
  if (k == 0) {
    parts.push_back(0);
    return;
  }
  // Beyond 64 bits the single-part outcome has probability below 2^-64.
  if (static_cast<std::size_t>(k) < counts.size()) {
    std::uniform_int_distribution<std::uint64_t> pick(0, counts[static_cast<std::size_t>(k)] - 1);
    if (pick(rng) == 0) {
      parts.push_back(k);
      return;
    }
  }
  for (unsigned i = 0; i < t; ++i) sample_into(t, k - 1, counts, rng, parts);
}

}  // namespace

void BakerPartition::check_sum() const {
  check_grid(base, n);
  const int lt = std::countr_zero(base);
  const std::uint64_t total = std::uint64_t{1} << (lt * n);
  std::uint64_t sum = 0;
  for (const int q : parts) {
    if (q < 0 || q > n) throw std::invalid_argument("baker partition: part outside [0,n]");
    sum += std::uint64_t{1} << (lt * q);
    if (sum > total) break;
  }
  if (sum != total) throw std::invalid_argument("baker partition: parts do not sum to t^n");
}

bool is_admissible(const BakerPartition& p) {
  p.check_sum();
  const int lt = std::countr_zero(p.base);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    const std::uint64_t len = std::uint64_t{1} << (lt * p.parts[i]);
    if (i > 0 && acc % len != 0) return false;
    acc += len;
  }
  return true;
}

BigInt count_admissible(unsigned t, int n) {
  log2_base(t);
  if (n < 0) throw std::invalid_argument("count_admissible: n must be >= 0");
  BigInt v = 1;
  for (int k = 1; k <= n; ++k) v = boost::multiprecision::pow(v, t) + 1;
  return v;
}

std::vector<BakerPartition> enumerate_admissible(unsigned t, int n, std::size_t cap) {
  check_grid(t, n);
  if (count_admissible(t, n) > cap)
    throw std::length_error("enumerate_admissible: count exceeds the enumeration cap");

  std::vector<std::vector<int>> level{{0}};
  for (int k = 1; k <= n; ++k) {
    std::vector<std::vector<int>> next{{k}};
    // Glue t independent partitions of the t segments of length t^{k-1}.
    std::vector<std::size_t> idx(t, 0);
    while (true) {
      std::vector<int> parts;
      for (unsigned i = 0; i < t; ++i) {
        const auto& sub = level[idx[i]];
        parts.insert(parts.end(), sub.begin(), sub.end());
      }
      next.push_back(std::move(parts));
      unsigned pos = t;
      while (pos > 0 && ++idx[pos - 1] == level.size()) idx[--pos] = 0;
      if (pos == 0) break;
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());
  std::vector<BakerPartition> out;
  out.reserve(level.size());
  for (auto& parts : level) out.push_back(BakerPartition{t, n, std::move(parts)});
  return out;
}

BakerPartition sample_admissible(unsigned t, int n, std::mt19937_64& rng) {
  check_grid(t, n);
  const auto counts = small_counts(t, n);
  BakerPartition p{t, n, {}};
  sample_into(t, n, counts, rng, p.parts);
  return p;
}

BakerMap::BakerMap(BakerPartition p) : p_(std::move(p)) {
  if (!is_admissible(p_)) throw std::invalid_argument("BakerMap: partition is not admissible");
  const int lt = std::countr_zero(p_.base);
  side_ = std::uint64_t{1} << (lt * p_.n);
  std::uint64_t acc = 0;
  start_.reserve(p_.parts.size());
  shift_.reserve(p_.parts.size());
  for (const int q : p_.parts) {
    start_.push_back(acc);
    shift_.push_back(lt * (p_.n - q));
    acc += std::uint64_t{1} << (lt * q);
  }
}

std::size_t BakerMap::segment(std::uint64_t v) const {
  const auto it = std::upper_bound(start_.begin(), start_.end(), v);
  return static_cast<std::size_t>(it - start_.begin()) - 1;
}

std::pair<std::uint64_t, std::uint64_t> BakerMap::apply(std::uint64_t x, std::uint64_t y) const {
  if (x >= side_ || y >= side_) throw std::out_of_range("baker_apply: point outside the grid");
  const std::size_t i = segment(x);
  const std::uint64_t N = start_[i];
  const int s = shift_[i];
  const std::uint64_t mask = (std::uint64_t{1} << s) - 1;
  return {((x - N) << s) + (y & mask), N + (y >> s)};
}

std::pair<std::uint64_t, std::uint64_t> BakerMap::inverse(std::uint64_t x, std::uint64_t y) const {
  if (x >= side_ || y >= side_) throw std::out_of_range("baker_inverse: point outside the grid");
  const std::size_t i = segment(y);
  const std::uint64_t N = start_[i];
  const int s = shift_[i];
  const std::uint64_t mask = (std::uint64_t{1} << s) - 1;
  return {N + (x >> s), ((y - N) << s) | (x & mask)};
}

std::pair<std::uint64_t, std::uint64_t> baker_apply(const BakerPartition& p, std::uint64_t x, std::uint64_t y) {
  return BakerMap(p).apply(x, y);
}

std::pair<std::uint64_t, std::uint64_t> baker_inverse(const BakerPartition& p, std::uint64_t x, std::uint64_t y) {
  return BakerMap(p).inverse(x, y);
}

std::pair<sfc::QuditDigits, sfc::QuditDigits> digit_shuffle(int s, const sfc::QuditDigits& x,
                                                            const sfc::QuditDigits& y) {
  const unsigned t = x.radix;
  const int lt = log2_base(t);
  check_register(x, t);
  check_register(y, t);
  const auto n = static_cast<int>(x.digits.size());
  if (y.digits.size() != x.digits.size()) throw std::invalid_argument("digit_shuffle: length mismatch");
  if (s < 0 || s > n) throw std::invalid_argument("digit_shuffle: s outside [0,n]");
  if (lt * n > 62) throw std::invalid_argument("digit_shuffle: register too long");
  const std::uint64_t xv = to_int(x, lt), yv = to_int(y, lt);
  const int keep = lt * s, rest = lt * (n - s);
  const std::uint64_t xs = ((xv & ((std::uint64_t{1} << keep) - 1)) << rest) | (yv & ((std::uint64_t{1} << rest) - 1));
  const std::uint64_t ys = ((xv >> keep) << keep) | (yv >> rest);
  return {to_digits(xs, t, x.digits.size()), to_digits(ys, t, x.digits.size())};
}

std::pair<sfc::QuditDigits, sfc::QuditDigits> scramble_pair(const BakerPartition& p, std::uint64_t r,
                                                            const sfc::QuditDigits& a,
                                                            const sfc::QuditDigits& b) {
  check_register(a, p.base);
  check_register(b, p.base);
  if (a.digits.size() != static_cast<std::size_t>(p.n) || b.digits.size() != static_cast<std::size_t>(p.n))
    throw std::invalid_argument("scramble_pair: register length must equal the partition size");
  const BakerMap map(p);
  const int lt = std::countr_zero(p.base);
  std::uint64_t x = to_int(a, lt), y = to_int(b, lt);
  for (std::uint64_t i = 0; i < r; ++i) std::tie(x, y) = map.apply(x, y);
  return {to_digits(x, p.base, a.digits.size()), to_digits(y, p.base, b.digits.size())};
}

std::vector<std::uint32_t> baker_table(const BakerPartition& p) {
  const BakerMap map(p);
  const std::uint64_t side = map.side();
  if (side > (std::uint64_t{1} << 16)) throw std::length_error("baker_table: grid too large for a table");
  std::vector<std::uint32_t> table(side * side);
  const auto rows = static_cast<std::int64_t>(side);
#pragma omp parallel for schedule(static)
  for (std::int64_t y = 0; y < rows; ++y)
    for (std::uint64_t x = 0; x < side; ++x) {
      const auto [xs, ys] = map.apply(x, static_cast<std::uint64_t>(y));
      table[x + static_cast<std::uint64_t>(y) * side] = static_cast<std::uint32_t>(xs + ys * side);
    }
  return table;
}

std::vector<std::uint32_t> power_permutation(std::span<const std::uint32_t> perm, std::uint64_t r) {
  std::vector<std::uint32_t> out(perm.size());
  std::vector<bool> seen(perm.size(), false);
  std::vector<std::uint32_t> cycle;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    cycle.clear();
    for (auto i = static_cast<std::uint32_t>(start); !seen[i]; i = perm[i]) {
      seen[i] = true;
      cycle.push_back(i);
    }
    const std::size_t L = cycle.size();
    const auto shift = static_cast<std::size_t>(r % L);
    for (std::size_t j = 0; j < L; ++j) out[cycle[j]] = cycle[(j + shift) % L];
  }
  return out;
}

}  // namespace qcrypt
