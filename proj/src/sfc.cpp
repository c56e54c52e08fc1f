#include "qcrypt/sfc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcrypt::sfc {

namespace {

double schoenberg_f(double u) {
  double v = std::fmod(std::fabs(u), 2.0);
  if (v > 1.0) v = 2.0 - v;
  if (v <= 1.0 / 3.0) return 0.0;
  if (v >= 2.0 / 3.0) return 1.0;
  return 3.0 * v - 1.0;
}

double plateau_bit(unsigned plateau, int d, int axis) {
  return static_cast<double>((plateau >> (d - axis)) & 1u);
}

void check_dims(int d, int n) {
  if (d < 1 || d > 8) throw std::invalid_argument("sfc: dimension must be in [1,8]");
  if (n < 0 || n > 32) throw std::invalid_argument("sfc: n must be in [0,32]");
}

}  // namespace

void CurveSpec::validate() const {
  if (dimension < 1) throw std::invalid_argument("curve: dimension must be >= 1");
  if (n_terms < 1) throw std::invalid_argument("curve: n_terms must be >= 1");
  if (kind == CurveKind::schoenberg && dimension != 2)
    throw std::invalid_argument("curve: the Schoenberg curve is planar");
  if (kind == CurveKind::plateau && dimension > 16)
    throw std::invalid_argument("curve: dimension too large");
}

double step_function_eval(const CurveSpec& spec, int axis, double u) {
  spec.validate();
  const int d = spec.dimension;
  if (axis < 1 || axis > d)
    throw std::out_of_range("step_function_eval: axis " + std::to_string(axis) +
                            " outside [1," + std::to_string(d) + "]");
  if (spec.kind == CurveKind::schoenberg) return schoenberg_f(u);

  const double frac = u - std::floor(u);
  const double scaled = std::ldexp(frac, d + 1);  // in [0, 2^(d+1))
  const double seg_f = std::floor(scaled);
  const auto seg = static_cast<unsigned>(seg_f);
  const unsigned plateaus = 1u << d;
  const unsigned j = seg / 2;
  if (seg % 2 == 0) return plateau_bit(j, d, axis);
  const double w = scaled - seg_f;
  const double from = plateau_bit(j, d, axis);
  const double to = plateau_bit((j + 1) % plateaus, d, axis);
  return (1.0 - w) * from + w * to;
}

std::vector<double> curve_eval(const CurveSpec& spec, double u) {
  spec.validate();
  const int d = spec.dimension;
  std::vector<double> out(static_cast<std::size_t>(d), 0.0);
  if (spec.kind == CurveKind::schoenberg) {
    for (int k = 1; k <= spec.n_terms; ++k) {
      const double w = std::ldexp(1.0, -k);
      out[0] += schoenberg_f(std::pow(3.0, 2 * k - 2) * u) * w;
      out[1] += schoenberg_f(std::pow(3.0, 2 * k - 1) * u) * w;
    }
    return out;
  }
  for (int k = 1; k <= spec.n_terms; ++k) {
    const double arg = std::ldexp(u, (d + 1) * (k - 1));
    const double w = std::ldexp(1.0, -k);
    for (int axis = 1; axis <= d; ++axis)
      out[static_cast<std::size_t>(axis - 1)] += step_function_eval(spec, axis, arg) * w;
  }
  return out;
}

QuditDigits encode_point(std::span<const std::uint32_t> coords, int n) {
  const int d = static_cast<int>(coords.size());
  check_dims(d, n);
  QuditDigits out;
  out.radix = 1u << d;
  out.digits.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < d; ++i) {
    const std::uint64_t c = coords[static_cast<std::size_t>(i)];
    if (c >> n)
      throw std::out_of_range("encode_point: coordinate " + std::to_string(c) +
                              " outside [0,2^" + std::to_string(n) + ")");
    for (int k = 0; k < n; ++k)
      out.digits[static_cast<std::size_t>(k)] |=
          static_cast<std::uint8_t>(((c >> k) & 1u) << (d - 1 - i));
  }
  return out;
}

std::vector<std::uint32_t> decode_point(const QuditDigits& digits, int d, int n) {
  check_dims(d, n);
  if (digits.radix != (1u << d))
    throw std::invalid_argument("decode_point: radix " + std::to_string(digits.radix) +
                                " does not match dimension " + std::to_string(d));
  if (digits.digits.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("decode_point: expected " + std::to_string(n) + " digits");
  std::vector<std::uint32_t> out(static_cast<std::size_t>(d), 0);
  for (int k = 0; k < n; ++k) {
    const unsigned level = digits.digits[static_cast<std::size_t>(k)];
    if (level >= digits.radix) throw std::out_of_range("decode_point: digit exceeds radix");
    for (int i = 0; i < d; ++i)
      out[static_cast<std::size_t>(i)] |= ((level >> (d - 1 - i)) & 1u) << k;
  }
  return out;
}

Rational preimage_param(std::span<const std::uint32_t> coords, int n) {
  const int d = static_cast<int>(coords.size());
  const QuditDigits q = encode_point(coords, n);
  using boost::multiprecision::cpp_int;
  // u = sum_{k=1..n} 2*level_{n-k} / 2^{(d+1)k}; the plateau index is 2 * level.
  cpp_int num = 0;
  for (int k = 1; k <= n; ++k) {
    const cpp_int plateau_index = 2 * static_cast<unsigned>(q.digits[static_cast<std::size_t>(n - k)]);
    num += plateau_index << ((d + 1) * (n - k));
  }
  const cpp_int den = cpp_int(1) << ((d + 1) * n);
  return Rational(num, den);
}

Rational schoenberg_preimage(std::uint32_t x, std::uint32_t y, int n) {
  check_dims(2, n);
  if ((static_cast<std::uint64_t>(x) >> n) || (static_cast<std::uint64_t>(y) >> n))
    throw std::out_of_range("schoenberg_preimage: pixel outside the image");
  using boost::multiprecision::cpp_int;
  Rational u = 0;
  cpp_int pow3 = 1;
  for (int k = 1; k <= n; ++k) {
    const unsigned a = (x >> (n - k)) & 1u;
    const unsigned b = (y >> (n - k)) & 1u;
    pow3 *= 3;
    u += Rational(cpp_int(2 * a), pow3);
    pow3 *= 3;
    u += Rational(cpp_int(2 * b), pow3);
  }
  return u;
}

}  // namespace qcrypt::sfc
