#include "sqlh/exact_value.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace sqlh {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::FlagMismatch: return "FlagMismatch";
    case Errc::BadWidth: return "BadWidth";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::DivideByZero: return "DivideByZero";
    case Errc::IncompatibleRadicals: return "IncompatibleRadicals";
    case Errc::CardinalityUnknown: return "CardinalityUnknown";
    case Errc::NonClassicalGate: return "NonClassicalGate";
    case Errc::NonToffoliGate: return "NonToffoliGate";
    case Errc::BadClockWord: return "BadClockWord";
    case Errc::HadamardBudgetExceeded: return "HadamardBudgetExceeded";
    case Errc::CostExceeded: return "CostExceeded";
    case Errc::ZeroDenominatorAmplitude: return "ZeroDenominatorAmplitude";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::InconsistentScale: return "InconsistentScale";
    case Errc::RowSupportMismatch: return "RowSupportMismatch";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::ComplexEntries: return "ComplexEntries";
    case Errc::ZeroAmplitudeVisited: return "ZeroAmplitudeVisited";
    case Errc::BadManifest: return "BadManifest";
    case Errc::Io: return "Io";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

BigInt isqrt_floor(const BigInt& x) { return boost::multiprecision::sqrt(x); }

std::pair<BigInt, BigInt> squarefree_split(const BigInt& x) {
  if (x < 0) fail(Errc::Internal, "squarefree_split of negative");
  BigInt n = x, s = 1, m = 1;
  if (n == 0) return {BigInt(0), BigInt(1)};
  for (BigInt d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      unsigned e = 0;
      while (n % d == 0) { n /= d; ++e; }
      for (unsigned i = 0; i + 1 < e; i += 2) s *= d;
      if (e % 2 == 1) m *= d;
    }
  }
  if (n > 1) m *= n;
  return {s, m};
}

std::string rat_str(const BigRat& q) {
  std::ostringstream os;
  os << rat_num(q);
  if (rat_den(q) != 1) os << "/" << rat_den(q);
  return os.str();
}

double QSqrt2::to_double() const {
  return static_cast<double>(a_) + static_cast<double>(b_) * std::sqrt(2.0);
}

std::string QSqrt2::str() const {
  if (b_ == 0) return rat_str(a_);
  std::ostringstream os;
  if (a_ != 0) os << rat_str(a_) << (b_ > 0 ? "+" : "");
  if (b_ == 1) os << "rt2";
  else if (b_ == -1) os << "-rt2";
  else os << rat_str(b_) << "*rt2";
  return os.str();
}

// ---------------------------------------------------------------------------

SignedRational::SignedRational(BigInt n, BigInt d) {
  if (d == 0) fail(Errc::ZeroDenominator, "SignedRational with zero denominator");
  neg_num = n < 0;
  neg_den = d < 0;
  num = boost::multiprecision::abs(n);
  den = boost::multiprecision::abs(d);
}

SignedRational SignedRational::from_parts(bool nn, BigInt n, bool nd, BigInt d) {
  if (d == 0) fail(Errc::ZeroDenominator, "SignedRational with zero denominator");
  SignedRational r;
  r.neg_num = nn;
  r.neg_den = nd;
  r.num = std::move(n);
  r.den = std::move(d);
  return r;
}

SignedRational SignedRational::from_rat(const BigRat& q) {
  SignedRational r;
  r.neg_num = q < 0;
  r.num = boost::multiprecision::abs(rat_num(q));
  r.den = rat_den(q);
  return r;
}

BigRat SignedRational::value() const {
  BigInt n = (neg_num != neg_den) ? BigInt(-num) : num;
  return BigRat(n, den);
}

std::string SignedRational::str() const {
  std::ostringstream os;
  if (neg_num) os << "-";
  os << num << "/";
  if (neg_den) os << "-";
  os << den;
  return os.str();
}

// ---------------------------------------------------------------------------
// Radical component helpers: sqrt(rad) * z with odd squarefree rad.

struct Radical {
  BigInt rad{1};
  QSqrt2 z;

  static Radical normd(BigInt rad, QSqrt2 z) {
    Radical r{std::move(rad), std::move(z)};
    ExactValue::norm_component(r.rad, r.z);
    return r;
  }
  Radical operator*(const Radical& o) const {
    BigInt g = boost::multiprecision::gcd(rad, o.rad);
    return normd((rad / g) * (o.rad / g), z * o.z * BigRat(g));
  }
  Radical operator+(const Radical& o) const {
    if (z.is_zero()) return o;
    if (o.z.is_zero()) return *this;
    if (rad != o.rad)
      fail(Errc::IncompatibleRadicals,
           "cannot add sqrt(" + rad.str() + ") and sqrt(" + o.rad.str() + ") terms");
    return normd(rad, z + o.z);
  }
  Radical operator-() const { return {rad, -z}; }
  Radical scaled(const QSqrt2& s) const { return normd(rad, z * s); }
};

void ExactValue::norm_component(BigInt& rad, QSqrt2& z) {
  if (z.is_zero()) { rad = 1; return; }
  auto [s, m] = squarefree_split(rad);
  rad = m;
  if (s != 1) z = z * BigRat(s);
  if (rad % 2 == 0) {
    rad /= 2;
    z = z * QSqrt2::sqrt2();  // sqrt(2m) = sqrt(m)*sqrt2
  }
}

ExactValue ExactValue::integer(BigInt v) { return rational(BigRat(std::move(v))); }

ExactValue ExactValue::rational(BigRat v) {
  ExactValue x;
  x.re_ = QSqrt2(std::move(v));
  return x;
}

ExactValue ExactValue::complex_rational(BigRat re, BigRat im) {
  ExactValue x;
  x.re_ = QSqrt2(std::move(re));
  x.im_ = QSqrt2(std::move(im));
  return x;
}

ExactValue ExactValue::from_qsqrt2(QSqrt2 re, QSqrt2 im) {
  ExactValue x;
  x.re_ = std::move(re);
  x.im_ = std::move(im);
  return x;
}

ExactValue ExactValue::omega(int s) {
  s = ((s % 8) + 8) % 8;
  ExactValue x;
  const BigRat half(1, 2);
  switch (s) {
    case 0: x.re_ = QSqrt2(BigRat(1)); break;
    case 1: x.re_ = QSqrt2(0, half); x.im_ = QSqrt2(0, half); break;
    case 2: x.im_ = QSqrt2(BigRat(1)); break;
    case 3: x.re_ = QSqrt2(0, -half); x.im_ = QSqrt2(0, half); break;
    case 4: x.re_ = QSqrt2(BigRat(-1)); break;
    case 5: x.re_ = QSqrt2(0, -half); x.im_ = QSqrt2(0, -half); break;
    case 6: x.im_ = QSqrt2(BigRat(-1)); break;
    case 7: x.re_ = QSqrt2(0, half); x.im_ = QSqrt2(0, -half); break;
  }
  Surface sf;
  sf.omega = s;
  sf.re = SignedRational(BigInt(1), BigInt(1));
  sf.im = SignedRational(BigInt(0), BigInt(1));
  x.surf_ = std::move(sf);
  return x;
}

ExactValue ExactValue::inv_sqrt2_pow(unsigned h) {
  ExactValue x;
  BigInt pow2 = BigInt(1) << (h / 2);
  if (h % 2 == 0) {
    x.re_ = QSqrt2(BigRat(1, pow2));
  } else {
    x.re_ = QSqrt2(0, BigRat(1, 2 * pow2));  // (1/sqrt2)^h = sqrt2 / 2^{(h+1)/2}
  }
  Surface sf;
  sf.half = h;
  sf.re = SignedRational(BigInt(1), BigInt(1));
  sf.im = SignedRational(BigInt(0), BigInt(1));
  x.surf_ = std::move(sf);
  return x;
}

ExactValue ExactValue::sqrt_rational(const BigRat& r) {
  if (r <= 0) fail(Errc::OutOfRange, "sqrt of nonpositive rational");
  BigInt n = rat_num(r), d = rat_den(r);
  // sqrt(n/d) = sqrt(n*d)/d
  auto [s, m] = squarefree_split(n * d);
  ExactValue x;
  x.rad_re_ = m;
  x.re_ = QSqrt2(BigRat(s, d));
  norm_component(x.rad_re_, x.re_);
  Surface sf;
  sf.sym_root = SignedRational::from_rat(r);
  sf.re = SignedRational(BigInt(1), BigInt(1));
  sf.im = SignedRational(BigInt(0), BigInt(1));
  x.surf_ = std::move(sf);
  return x;
}

ExactValue ExactValue::from_surface(Surface s) {
  auto comp = [](const SignedRational& raw, bool sq) -> ExactValue {
    BigRat v = raw.value();
    if (!sq) return rational(v);
    if (v == 0) return ExactValue();
    int sgn = sign_of(v);
    ExactValue root = sqrt_rational(boost::multiprecision::abs(v));
    return sgn < 0 ? -root : root;
  };
  ExactValue payload = comp(s.re, s.sqrt_re) + comp(s.im, s.sqrt_im) * complex_rational(0, 1);
  ExactValue v = payload;
  if (s.sym_root) {
    BigRat r = s.sym_root->value();
    if (r <= 0) fail(Errc::OutOfRange, "symbolic sqrt payload must be positive");
    v = v * sqrt_rational(r);
  }
  if (s.half) v = v * inv_sqrt2_pow(*s.half);
  if (s.omega) v = v * omega(*s.omega);
  v.surf_ = std::move(s);
  return v;
}

bool ExactValue::is_integer() const { return is_rational() && rat_den(re_.a()) == 1; }

BigRat ExactValue::as_rational() const {
  if (!is_rational()) fail(Errc::Internal, "value is not a plain rational: " + str());
  return re_.a();
}

ExactValue ExactValue::operator+(const ExactValue& o) const {
  Radical re = Radical{rad_re_, re_} + Radical{o.rad_re_, o.re_};
  Radical im = Radical{rad_im_, im_} + Radical{o.rad_im_, o.im_};
  ExactValue x;
  x.rad_re_ = std::move(re.rad); x.re_ = std::move(re.z);
  x.rad_im_ = std::move(im.rad); x.im_ = std::move(im.z);
  return x;
}

ExactValue ExactValue::operator-() const {
  ExactValue x = *this;
  x.re_ = -x.re_;
  x.im_ = -x.im_;
  x.surf_.reset();
  if (x.is_zero()) { x.rad_re_ = 1; x.rad_im_ = 1; }
  return x;
}

ExactValue ExactValue::operator-(const ExactValue& o) const { return *this + (-o); }

ExactValue ExactValue::operator*(const ExactValue& o) const {
  Radical ar{rad_re_, re_}, ai{rad_im_, im_};
  Radical br{o.rad_re_, o.re_}, bi{o.rad_im_, o.im_};
  Radical re = (ar * br) + (-(ai * bi));
  Radical im = (ar * bi) + (ai * br);
  ExactValue x;
  x.rad_re_ = std::move(re.rad); x.re_ = std::move(re.z);
  x.rad_im_ = std::move(im.rad); x.im_ = std::move(im.z);
  return x;
}

ExactValue ExactValue::operator/(const ExactValue& o) const {
  if (o.is_zero()) fail(Errc::DivideByZero, "division by exact zero");
  QSqrt2 n2 = o.abs_squared_qs2();
  QSqrt2 inv = n2.inverse();
  // 1/o = conj(o) / |o|^2
  ExactValue c = o.conj();
  Radical re = Radical{c.rad_re_, c.re_}.scaled(inv);
  Radical im = Radical{c.rad_im_, c.im_}.scaled(inv);
  ExactValue oinv;
  oinv.rad_re_ = std::move(re.rad); oinv.re_ = std::move(re.z);
  oinv.rad_im_ = std::move(im.rad); oinv.im_ = std::move(im.z);
  return *this * oinv;
}

bool ExactValue::operator==(const ExactValue& o) const {
  return rad_re_ == o.rad_re_ && rad_im_ == o.rad_im_ && re_ == o.re_ && im_ == o.im_;
}

ExactValue ExactValue::conj() const {
  ExactValue x = *this;
  x.im_ = -x.im_;
  x.surf_.reset();
  return x;
}

ExactValue ExactValue::real_part() const {
  ExactValue x;
  x.rad_re_ = rad_re_;
  x.re_ = re_;
  return x;
}

ExactValue ExactValue::imag_part() const {
  ExactValue x;
  x.rad_re_ = rad_im_;
  x.re_ = im_;
  return x;
}

QSqrt2 ExactValue::abs_squared_qs2() const {
  return re_ * re_ * BigRat(rad_re_) + im_ * im_ * BigRat(rad_im_);
}

int ExactValue::sign_real() const {
  if (!is_real()) fail(Errc::ComplexEntries, "sign of a non-real value: " + str());
  return re_.sign();
}

ExactValue ExactValue::times_omega_pow(int s) const {
  ExactValue x = *this * omega(s);
  if (surf_) {
    Surface sf = *surf_;
    sf.omega = ((sf.omega.value_or(0) + s) % 8 + 8) % 8;
    x.surf_ = std::move(sf);
  }
  return x;
}

ExactValue ExactValue::times_inv_sqrt2_pow(unsigned h) const {
  ExactValue x = *this * inv_sqrt2_pow(h);
  if (surf_) {
    Surface sf = *surf_;
    sf.half = sf.half.value_or(0) + h;
    x.surf_ = std::move(sf);
  }
  return x;
}

double ExactValue::to_double() const {
  if (!is_real()) fail(Errc::ComplexEntries, "to_double of non-real value");
  return std::sqrt(static_cast<double>(rad_re_)) * re_.to_double();
}

std::complex<double> ExactValue::to_complex() const {
  return {std::sqrt(static_cast<double>(rad_re_)) * re_.to_double(),
          std::sqrt(static_cast<double>(rad_im_)) * im_.to_double()};
}

// --- text ------------------------------------------------------------------

static std::string comp_str(const BigInt& rad, const QSqrt2& z) {
  if (rad == 1) return z.str();
  return "rt(" + rad.str() + ")*(" + z.str() + ")";
}

std::string ExactValue::str() const {
  if (surf_) {
    std::ostringstream os;
    if (surf_->omega) os << "w^" << *surf_->omega << "*";
    if (surf_->half) os << "(1/rt2)^" << *surf_->half << "*";
    if (surf_->sym_root) os << "rt(" << surf_->sym_root->str() << ")*";
    auto part = [&](const SignedRational& r, bool sq) {
      return sq ? "rt[" + r.str() + "]" : r.str();
    };
    os << part(surf_->re, surf_->sqrt_re);
    if (!(surf_->im.num == 0 && !surf_->sqrt_im)) os << "+" << part(surf_->im, surf_->sqrt_im) << "*i";
    return os.str();
  }
  if (is_zero()) return "0";
  std::ostringstream os;
  bool hasre = !re_.is_zero(), hasim = !im_.is_zero();
  if (hasre) os << comp_str(rad_re_, re_);
  if (hasim) {
    if (hasre) os << " + ";
    os << "(" << comp_str(rad_im_, im_) << ")*i";
  }
  return os.str();
}

// Parser for the input grammar used on the command line and in fixture files:
//   [w^S*] [(1/rt2)^H*] [rt(N/M)*] RE [(+|-) IM i]
// where RE and IM are rationals with optional signs on numerator and
// denominator ("-6/3", "2/-7"). "sqrt" is accepted as a synonym of "rt".
namespace {
struct Cursor {
  const std::string& s;
  size_t i = 0;
  void ws() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
  bool eat(const std::string& tok) {
    ws();
    if (s.compare(i, tok.size(), tok) == 0) { i += tok.size(); return true; }
    return false;
  }
  bool peek_digit_or_sign() {
    ws();
    return i < s.size() && (std::isdigit((unsigned char)s[i]) || s[i] == '+' || s[i] == '-');
  }
  BigInt read_int() {
    ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i >= s.size() || !std::isdigit((unsigned char)s[i]))
      fail(Errc::SyntaxError, "expected integer at position " + std::to_string(start) + " in '" + s + "'");
    while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
    return BigInt(s.substr(start, i - start));
  }
  SignedRational read_signed_rat() {
    BigInt n = read_int();
    BigInt d = 1;
    bool neg_d = false;
    ws();
    if (i < s.size() && s[i] == '/') {
      ++i;
      d = read_int();
      neg_d = d < 0;
      d = boost::multiprecision::abs(d);
      if (d == 0) fail(Errc::ZeroDenominator, "zero denominator in '" + s + "'");
    }
    return SignedRational::from_parts(n < 0, boost::multiprecision::abs(n), neg_d, d);
  }
};
}  // namespace

ExactValue ExactValue::parse(const std::string& text) {
  Cursor c{text};
  Surface sf;
  for (;;) {
    if (c.eat("w^")) {
      BigInt s = c.read_int();
      sf.omega = static_cast<int>(((s % 8) + 8) % 8);
      c.eat("*");
    } else if (c.eat("(1/rt2)^") || c.eat("(1/sqrt2)^")) {
      BigInt h = c.read_int();
      if (h < 0) fail(Errc::SyntaxError, "negative 1/sqrt2 power");
      sf.half = static_cast<unsigned>(h);
      c.eat("*");
    } else if (c.eat("rt(") || c.eat("sqrt(")) {
      sf.sym_root = c.read_signed_rat();
      if (!c.eat(")")) fail(Errc::SyntaxError, "missing ')' in sqrt prefix");
      c.eat("*");
    } else {
      break;
    }
  }
  sf.re = c.read_signed_rat();
  sf.im = SignedRational(BigInt(0), BigInt(1));
  c.ws();
  if (c.i < text.size() && (text[c.i] == '+' || text[c.i] == '-')) {
    bool neg = text[c.i] == '-';
    ++c.i;
    SignedRational im = c.read_signed_rat();
    if (neg) im.neg_num = !im.neg_num;
    if (!c.eat("*i") && !c.eat("i")) fail(Errc::SyntaxError, "expected imaginary suffix 'i'");
    sf.im = im;
  } else if (c.eat("*i") || (c.i < text.size() && c.eat("i"))) {
    sf.im = sf.re;
    sf.re = SignedRational(BigInt(0), BigInt(1));
  }
  c.ws();
  if (c.i != text.size())
    fail(Errc::SyntaxError, "trailing characters in value '" + text + "'");
  return from_surface(sf);
}

}  // namespace sqlh
