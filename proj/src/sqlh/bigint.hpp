#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sqlh {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const BigRat& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const BigRat& q) { return boost::multiprecision::denominator(q); }

inline int sign_of(const BigInt& x) { return x.sign(); }
inline int sign_of(const BigRat& x) { return x.sign(); }

// Number of bits needed for the magnitude (0 -> 0 bits).
inline unsigned bit_width(const BigInt& x) {
  if (x == 0) return 0;
  return static_cast<unsigned>(boost::multiprecision::msb(boost::multiprecision::abs(x)) + 1);
}

BigInt isqrt_floor(const BigInt& x);

// Splits x = s^2 * m with m squarefree; returns {s, m}. Intended for the
// small radicands that arise from subset sizes and clock lengths.
std::pair<BigInt, BigInt> squarefree_split(const BigInt& x);

}  // namespace sqlh
