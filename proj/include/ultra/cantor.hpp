#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "ultra/error.hpp"

namespace ultra {

/// Number of ternary digits read after the first nonzero one.
inline constexpr int kCantorDigits = 64;

/// How much coarser than the rounding interval a ternary boundary must be
/// before the interval is read as sitting on it (see cantor_hat).
inline constexpr unsigned kCantorSnapBits = 20;

namespace detail {

/// t = mantissa / 2^shift. The reals that round to t form [lo, hi]. If lo and
/// hi first differ in ternary digit j, the interval touches the closure of the
/// middle-third gap at depth j, where the Cantor function is constant. Returns
/// that constant when 3^-j exceeds 2^kCantorSnapBits times the interval width,
/// so that decimal inputs such as 1/3 or 7/9 land on their plateau.
inline std::optional<double> cantor_coarse_plateau(std::uint64_t mantissa, unsigned shift) {
  using boost::multiprecision::cpp_int;
  const unsigned scale = shift + 2;
  const bool power_of_two = (mantissa & (mantissa - 1)) == 0;
  cpp_int lo = cpp_int(mantissa) * 4 - (power_of_two ? 1 : 2);
  cpp_int hi = cpp_int(mantissa) * 4 + 2;
  const cpp_int one = cpp_int(1) << scale;
  cpp_int reach = (hi - lo) << kCantorSnapBits;  // width * 2^snap * 3^j, scaled
  double value = 0.0;
  for (int pos = 1;; ++pos) {
    reach *= 3;
    if (reach >= one) return std::nullopt;
    lo *= 3;
    hi *= 3;
    const unsigned dl = static_cast<unsigned>(lo >> scale);
    const unsigned dh = static_cast<unsigned>(hi >> scale);
    if (dl != dh) return value + std::ldexp(1.0, -pos);
    if (dl == 1) return std::nullopt;  // t lies inside a plateau already
    if (dl == 2) value += std::ldexp(1.0, -pos);
    lo -= cpp_int(dl) << scale;
    hi -= cpp_int(dh) << scale;
  }
}

}  // namespace detail

/// Extended Cantor function: the Cantor ternary function on [0,1] and 1 on
/// (1, inf).
///
/// The double t is an exact dyadic rational m / 2^s, so its ternary digits are
/// extracted exactly with big-integer arithmetic. Ternary digit 0 or 2 becomes
/// binary digit 0 or 1; the first ternary 1 emits a final binary 1 and stops.
/// Leading zero digits are skipped without counting against the 64-digit cap,
/// which keeps the result positive for every positive input; the truncation
/// error is below 2^-64 relative to the leading binary digit.
///
/// A double stands for every real that rounds to it. When that set straddles
/// a ternary boundary far coarser than its width, the plateau value there is
/// returned instead (detail::cantor_coarse_plateau); otherwise the value is
/// the exact one at the dyadic t. Both readings are nondecreasing in t.
inline double cantor_hat(double t) {
  if (std::isnan(t) || t < 0.0) throw Error(ErrorCode::NegativeInput, "cantor_hat needs t >= 0");
  if (t == 0.0) return 0.0;
  if (t >= 1.0) return 1.0;

  using boost::multiprecision::cpp_int;
  int exp2 = 0;
  const double frac = std::frexp(t, &exp2);  // t = frac * 2^exp2, frac in [0.5, 1)
  const auto mantissa = static_cast<std::uint64_t>(std::ldexp(frac, 53));
  const unsigned shift = static_cast<unsigned>(53 - exp2);  // t = mantissa / 2^shift

  if (const auto plateau = detail::cantor_coarse_plateau(mantissa, shift)) return *plateau;

  cpp_int rem = mantissa;
  std::uint64_t bits = 0;  // binary digits from the first nonzero ternary digit on
  int first = 0;           // 1-based position of the first nonzero ternary digit
  int taken = 0;
  for (int pos = 1; taken < kCantorDigits; ++pos) {
    rem *= 3;
    const unsigned digit = static_cast<unsigned>(rem >> shift);
    rem -= cpp_int(digit) << shift;
    if (first == 0) {
      if (digit == 0) continue;
      first = pos;
    }
    ++taken;
    bits <<= 1;
    if (digit != 0) bits |= 1;
    if (digit == 1 || rem == 0) break;
  }
  // bits holds binary positions first .. first+taken-1
  return std::ldexp(static_cast<double>(bits), -(first + taken - 1));
}

}  // namespace ultra
