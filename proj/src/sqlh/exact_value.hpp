#pragma once

#include <complex>
#include <optional>
#include <string>

#include "sqlh/bigint.hpp"
#include "sqlh/error.hpp"
#include "sqlh/qsqrt2.hpp"

namespace sqlh {

// Rational with the numerator and denominator signs kept separately and the
// magnitudes left unreduced, mirroring the binary layouts (-6/3 stays -6/3).
struct SignedRational {
  bool neg_num = false;
  bool neg_den = false;
  BigInt num = 0;  // magnitude
  BigInt den = 1;  // magnitude, nonzero

  SignedRational() = default;
  SignedRational(BigInt n, BigInt d);  // from signed pair
  static SignedRational from_parts(bool nn, BigInt n, bool nd, BigInt d);
  static SignedRational from_rat(const BigRat& q);

  BigRat value() const;
  bool operator==(const SignedRational& o) const = default;
  std::string str() const;
};

// A number of the form
//
//     omega^s * (1/sqrt2)^h * ( [sqrt]re + i*[sqrt]im ) * sqrt(r)
//
// kept in two layers: an optional codec-faithful surface (the tags and raw
// components exactly as they appear in a binary encoding) and a canonical
// core sqrt(mre)*re + i*sqrt(mim)*im with re,im in Q(sqrt2) and odd squarefree
// radicands, on which all arithmetic and comparisons run.
class ExactValue {
 public:
  struct Surface {
    std::optional<int> omega;        // power of the 8th root of unity
    std::optional<unsigned> half;    // power of 1/sqrt2
    bool sqrt_re = false, sqrt_im = false;  // componentwise sqrt of |payload|
    SignedRational re, im;
    std::optional<SignedRational> sym_root;  // global sqrt(r) payload, r > 0

    bool operator==(const Surface& o) const = default;
  };

  ExactValue() = default;  // zero

  // --- factories -----------------------------------------------------------
  static ExactValue integer(BigInt v);
  static ExactValue rational(BigRat v);
  static ExactValue complex_rational(BigRat re, BigRat im);
  static ExactValue from_qsqrt2(QSqrt2 re, QSqrt2 im = QSqrt2());
  // omega^s expanded per the eight-entry table; carries the omega tag.
  static ExactValue omega(int s);
  // (1/sqrt2)^h; carries the half tag.
  static ExactValue inv_sqrt2_pow(unsigned h);
  // sqrt(r) for rational r > 0; carries the sym_root surface payload.
  static ExactValue sqrt_rational(const BigRat& r);
  // Codec entry point: value reconstructed from a decoded surface.
  static ExactValue from_surface(Surface s);

  // --- core accessors ------------------------------------------------------
  const BigInt& rad_re() const { return rad_re_; }
  const BigInt& rad_im() const { return rad_im_; }
  const QSqrt2& core_re() const { return re_; }
  const QSqrt2& core_im() const { return im_; }
  const std::optional<Surface>& surface() const { return surf_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  // true when the value is a plain rational (no i, no radicals)
  bool is_rational() const { return is_real() && rad_re_ == 1 && re_.is_rational(); }
  bool is_integer() const;
  BigRat as_rational() const;  // requires is_rational()

  // --- arithmetic (canonical results; IncompatibleRadicals may be thrown) ---
  ExactValue operator+(const ExactValue& o) const;
  ExactValue operator-(const ExactValue& o) const;
  ExactValue operator-() const;
  ExactValue operator*(const ExactValue& o) const;
  ExactValue operator/(const ExactValue& o) const;
  bool operator==(const ExactValue& o) const;

  ExactValue conj() const;
  ExactValue real_part() const;
  ExactValue imag_part() const;  // as a real value
  QSqrt2 abs_squared_qs2() const;
  // Exact sign of a real value (Errc::ComplexEntries if im != 0).
  int sign_real() const;

  // Re-tag helpers used by the query combinators (value is multiplied by the
  // factor and the surface tag is accumulated when the payload stays simple).
  ExactValue times_omega_pow(int s) const;
  ExactValue times_inv_sqrt2_pow(unsigned h) const;

  double to_double() const;  // requires is_real()
  std::complex<double> to_complex() const;

  std::string str() const;                 // canonical (or surface) text
  static ExactValue parse(const std::string& text);

 private:
  BigInt rad_re_{1}, rad_im_{1};
  QSqrt2 re_, im_;
  std::optional<Surface> surf_;

  static void norm_component(BigInt& rad, QSqrt2& z);
  friend struct Radical;
};

}  // namespace sqlh
