#pragma once

#include <string>

#include "sqlh/bigint.hpp"
#include "sqlh/error.hpp"

namespace sqlh {

// Element of Q(sqrt 2): a + b*sqrt(2).
class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(BigRat a, BigRat b) : a_(std::move(a)), b_(std::move(b)) {}
  explicit QSqrt2(BigRat a) : a_(std::move(a)) {}
  static QSqrt2 sqrt2() { return QSqrt2(BigRat(0), BigRat(1)); }

  const BigRat& a() const { return a_; }
  const BigRat& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QSqrt2 operator+(const QSqrt2& o) const { return {a_ + o.a_, b_ + o.b_}; }
  QSqrt2 operator-(const QSqrt2& o) const { return {a_ - o.a_, b_ - o.b_}; }
  QSqrt2 operator-() const { return {-a_, -b_}; }
  QSqrt2 operator*(const QSqrt2& o) const {
    return {a_ * o.a_ + 2 * b_ * o.b_, a_ * o.b_ + b_ * o.a_};
  }
  QSqrt2 operator*(const BigRat& r) const { return {a_ * r, b_ * r}; }
  bool operator==(const QSqrt2& o) const { return a_ == o.a_ && b_ == o.b_; }

  // (a + b√2)^-1 = (a - b√2) / (a² - 2b²); the norm vanishes only at 0.
  QSqrt2 inverse() const {
    BigRat n = a_ * a_ - 2 * b_ * b_;
    if (n == 0) fail(Errc::DivideByZero, "inverse of zero in Q(sqrt2)");
    return {a_ / n, -b_ / n};
  }

  // Exact sign: decided by comparing a² against 2b² when signs disagree.
  int sign() const {
    int sa = sign_of(a_), sb = sign_of(b_);
    if (sa == 0) return sb;
    if (sb == 0) return sa;
    if (sa == sb) return sa;
    BigRat aa = a_ * a_, bb = 2 * b_ * b_;
    if (aa == bb) return 0;  // cannot happen for rational a,b unless both 0
    return aa > bb ? sa : sb;
  }

  double to_double() const;
  std::string str() const;

 private:
  BigRat a_{0}, b_{0};
};

std::string rat_str(const BigRat& q);

}  // namespace sqlh
