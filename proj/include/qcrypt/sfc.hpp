#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qcrypt::sfc {

using Rational = boost::multiprecision::cpp_rational;

enum class CurveKind { schoenberg, plateau };

struct CurveSpec {
  int dimension = 2;
  CurveKind kind = CurveKind::plateau;
  int n_terms = 16;

  // Throws std::invalid_argument on dimension < 1, n_terms < 1, or a
  // Schoenberg curve outside the plane.
  void validate() const;
};

/// Fixed-length base-2^d digit string. Index 0 is the least significant digit.
struct QuditDigits {
  unsigned radix = 4;
  std::vector<std::uint8_t> digits;

  friend bool operator==(const QuditDigits&, const QuditDigits&) = default;
};

/// Value of the axis-th coordinate function (axis is 1-based) at u.
///
/// Plateau curve: 1-periodic, plateau j on [2j/2^(d+1), (2j+1)/2^(d+1)] carries
/// the binary expansion of j (axis 1 is the most significant bit), linear in
/// between. Schoenberg curve: even, 2-periodic, 0 on [0,1/3], 1 on [2/3,1].
double step_function_eval(const CurveSpec& spec, int axis, double u);

/// Truncated partial sums of the curve at u in [0,1].
std::vector<double> curve_eval(const CurveSpec& spec, double u);

/// Interleaves the bits of d coordinates in [0,2^n) into n base-2^d digits.
/// Digit k holds bit k of every coordinate, coordinate 1 most significant.
QuditDigits encode_point(std::span<const std::uint32_t> coords, int n);

std::vector<std::uint32_t> decode_point(const QuditDigits& digits, int d, int n);

/// Exact curve parameter whose n-term truncation lands on coords / 2^n.
Rational preimage_param(std::span<const std::uint32_t> coords, int n);

/// Schoenberg pre-image of the pixel (x, y) of a 2^n x 2^n image, built by
/// ternary interleaving of the bits. Needs 2n ternary digits, which is why
/// this curve does not save any storage.
Rational schoenberg_preimage(std::uint32_t x, std::uint32_t y, int n);

}  // namespace qcrypt::sfc
