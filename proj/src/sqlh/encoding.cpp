#include "sqlh/encoding.hpp"

#include <sstream>

namespace sqlh {

size_t ClassDescriptor::payload_width() const {
  switch (family) {
    case Family::N: return p;
    case Family::Qplus: return 2 * (size_t)p;
    case Family::Q: return 2 * (size_t)p + 2;
    case Family::C: return 4 * (size_t)p + 4;
  }
  return 0;
}

size_t ClassDescriptor::flag_width() const {
  size_t w = 0;
  for (const Flag& f : flags) w += f.width;
  return w;
}

std::vector<size_t> ClassDescriptor::group_widths() const {
  std::vector<size_t> g;
  for (const Flag& f : flags) g.push_back(f.width);
  auto q_payload = [&](std::vector<size_t>& v) {
    v.push_back(1); v.push_back(1); v.push_back(p); v.push_back(p);
  };
  switch (family) {
    case Family::N: g.push_back(p); break;
    case Family::Qplus: g.push_back(p); g.push_back(p); break;
    case Family::Q: q_payload(g); break;
    case Family::C: q_payload(g); q_payload(g); break;
  }
  return g;
}

std::string ClassDescriptor::str() const {
  std::ostringstream os;
  switch (family) {
    case Family::N: os << "N"; break;
    case Family::Qplus: os << "Q+"; break;
    case Family::Q: os << "Q"; break;
    case Family::C: os << "C"; break;
  }
  os << "_" << p;
  if (!flags.empty()) {
    os << "[";
    for (size_t i = 0; i < flags.size(); ++i) {
      if (i) os << ",";
      switch (flags[i].kind) {
        case FlagKind::Sqrt: os << "sqrt"; break;
        case FlagKind::Omega: os << "omega"; break;
        case FlagKind::Half: os << "half:" << flags[i].width; break;
      }
    }
    os << "]";
  }
  return os.str();
}

ClassDescriptor ClassDescriptor::parse(const std::string& family, unsigned p,
                                       const std::string& flags_csv) {
  ClassDescriptor c;
  if (family == "N") c.family = Family::N;
  else if (family == "Q+" || family == "Qplus" || family == "Qp") c.family = Family::Qplus;
  else if (family == "Q") c.family = Family::Q;
  else if (family == "C") c.family = Family::C;
  else fail(Errc::SyntaxError, "unknown family '" + family + "' (expected N, Q+, Q or C)");
  c.p = p;
  if (p == 0) fail(Errc::OutOfRange, "precision parameter p must be positive");
  std::string tok;
  std::istringstream is(flags_csv);
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    if (tok == "sqrt") c.flags.push_back({FlagKind::Sqrt, 1});
    else if (tok == "omega") c.flags.push_back({FlagKind::Omega, 3});
    else if (tok.rfind("half", 0) == 0) {
      unsigned w = p;
      auto colon = tok.find(':');
      if (colon != std::string::npos) w = static_cast<unsigned>(std::stoul(tok.substr(colon + 1)));
      c.flags.push_back({FlagKind::Half, w});
    } else {
      fail(Errc::SyntaxError, "unknown flag '" + tok + "' (expected sqrt, omega or half[:q])");
    }
  }
  return c;
}

// --- encoding helpers --------------------------------------------------------

namespace {

BitString encode_nat(const BigInt& n, unsigned p) {
  if (bit_width(n) > p)
    fail(Errc::OutOfRange, "component " + n.str() + " exceeds the 2^" + std::to_string(p) +
                               "-1 capacity of a " + std::to_string(p) + "-bit block");
  return BitString::from_uint(n, p);
}

void append_q_payload(BitString& out, const SignedRational& r, unsigned p) {
  out.push_back(r.neg_num);
  out.push_back(r.neg_den);
  out.append(encode_nat(r.num, p));
  out.append(encode_nat(r.den, p));
}

// Family payload from the canonical (reduced) components of a value.
SignedRational reduced_component(const BigRat& q) { return SignedRational::from_rat(q); }

bool is_plain_complex(const ExactValue& v) {
  return v.rad_re() == 1 && v.rad_im() == 1 && v.core_re().is_rational() &&
         v.core_im().is_rational();
}

// payload encoders operating on a canonical value (no flags left)
BitString encode_family(const ExactValue& v, Family fam, unsigned p) {
  BitString out;
  switch (fam) {
    case Family::N: {
      if (!v.is_integer() || v.sign_real() < 0)
        fail(Errc::FlagMismatch, "value " + v.str() + " is not an unsigned integer");
      out.append(encode_nat(rat_num(v.as_rational()), p));
      break;
    }
    case Family::Qplus: {
      if (!v.is_rational() || v.sign_real() < 0)
        fail(Errc::FlagMismatch, "value " + v.str() + " is not a nonnegative rational");
      BigRat q = v.as_rational();
      out.append(encode_nat(rat_num(q), p));
      out.append(encode_nat(rat_den(q), p));
      break;
    }
    case Family::Q: {
      if (!v.is_rational())
        fail(Errc::FlagMismatch, "value " + v.str() + " is not rational");
      append_q_payload(out, reduced_component(v.as_rational()), p);
      break;
    }
    case Family::C: {
      if (!is_plain_complex(v))
        fail(Errc::FlagMismatch, "value " + v.str() + " is not a complex rational");
      append_q_payload(out, reduced_component(v.core_re().a()), p);
      append_q_payload(out, reduced_component(v.core_im().a()), p);
      break;
    }
  }
  return out;
}

ExactValue pow_sqrt2(unsigned h) {
  BigRat c(BigInt(1) << (h / 2));
  return h % 2 == 0 ? ExactValue::from_qsqrt2(QSqrt2(c))
                    : ExactValue::from_qsqrt2(QSqrt2(0, c));
}

// componentwise sqrt stripping: value must be (+-)sqrt(q_re) + i(+-)sqrt(q_im)
std::optional<ExactValue> strip_componentwise_sqrt(const ExactValue& v) {
  auto square_comp = [](const ExactValue& comp) -> std::optional<BigRat> {
    // comp = sqrt(m) * (a + b*rt2); rational square requires b == 0
    if (!comp.core_re().is_rational()) return std::nullopt;
    BigRat a = comp.core_re().a();
    BigRat sq = a * a * BigRat(comp.rad_re());
    return comp.sign_real() < 0 ? -sq : sq;
  };
  auto re = square_comp(v.real_part());
  auto im = square_comp(v.imag_part());
  if (!re || !im) return std::nullopt;
  return ExactValue::complex_rational(*re, *im);
}

// Recursive extraction in flag order: value = flag1(flag2(...(payload))).
std::optional<BitString> encode_extract(const ExactValue& v, const ClassDescriptor& cls,
                                        size_t fi) {
  if (fi == cls.flags.size()) {
    try {
      return encode_family(v, cls.family, cls.p);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  const Flag& f = cls.flags[fi];
  switch (f.kind) {
    case FlagKind::Omega: {
      unsigned smax = f.width >= 3 ? 8u : (1u << f.width);
      for (unsigned s = 0; s < smax; ++s) {
        ExactValue stripped = v * ExactValue::omega((8 - (int)s) % 8);
        if (auto rest = encode_extract(stripped, cls, fi + 1)) {
          BitString out = BitString::from_uint(BigInt(s), f.width);
          out.append(*rest);
          return out;
        }
      }
      return std::nullopt;
    }
    case FlagKind::Half: {
      uint64_t hmax = f.width >= 10 ? 1024u : (1ull << f.width);
      for (uint64_t h = 0; h < hmax; ++h) {
        ExactValue stripped = v * pow_sqrt2(static_cast<unsigned>(h));
        if (auto rest = encode_extract(stripped, cls, fi + 1)) {
          BitString out = BitString::from_uint(BigInt(h), f.width);
          out.append(*rest);
          return out;
        }
      }
      return std::nullopt;
    }
    case FlagKind::Sqrt: {
      if (auto rest = encode_extract(v, cls, fi + 1)) {
        BitString out;
        out.push_back(0);
        out.append(*rest);
        return out;
      }
      if (auto payload = strip_componentwise_sqrt(v)) {
        if (auto rest = encode_extract(*payload, cls, fi + 1)) {
          BitString out;
          out.push_back(1);
          out.append(*rest);
          return out;
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// Fast path: reuse the codec surface carried by the value when it matches the
// class layout, so that decode/encode round-trips are bit-identical.
std::optional<BitString> encode_surface(const ExactValue& v, const ClassDescriptor& cls) {
  if (!v.surface()) return std::nullopt;
  const auto& sf = *v.surface();
  bool has_sqrt = false, has_omega = false, has_half = false;
  for (const Flag& f : cls.flags) {
    if (f.kind == FlagKind::Sqrt) has_sqrt = true;
    if (f.kind == FlagKind::Omega) has_omega = true;
    if (f.kind == FlagKind::Half) has_half = true;
  }
  bool wants_sqrt = sf.sqrt_re || sf.sqrt_im || sf.sym_root.has_value();
  if ((sf.omega && *sf.omega != 0 && !has_omega) || (sf.half && *sf.half != 0 && !has_half) ||
      (wants_sqrt && !has_sqrt))
    return std::nullopt;
  try {
    BitString out;
    for (const Flag& f : cls.flags) {
      switch (f.kind) {
        case FlagKind::Omega:
          out.append(BitString::from_uint(BigInt(sf.omega.value_or(0)), f.width));
          break;
        case FlagKind::Half:
          out.append(BitString::from_uint(BigInt(sf.half.value_or(0)), f.width));
          break;
        case FlagKind::Sqrt:
          out.push_back(wants_sqrt ? 1 : 0);
          break;
      }
    }
    const SignedRational* re = &sf.re;
    SignedRational root_payload;
    if (sf.sym_root) {
      root_payload = *sf.sym_root;
      re = &root_payload;  // global sqrt payload doubles as the single component
    }
    switch (cls.family) {
      case Family::N:
        if (re->neg_num || re->neg_den || re->den != 1 || sf.im.num != 0) return std::nullopt;
        out.append(encode_nat(re->num, cls.p));
        break;
      case Family::Qplus:
        if (re->neg_num || re->neg_den || sf.im.num != 0) return std::nullopt;
        out.append(encode_nat(re->num, cls.p));
        out.append(encode_nat(re->den, cls.p));
        break;
      case Family::Q:
        if (sf.im.num != 0) return std::nullopt;
        append_q_payload(out, *re, cls.p);
        break;
      case Family::C:
        append_q_payload(out, *re, cls.p);
        append_q_payload(out, sf.im, cls.p);
        break;
    }
    return out;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

BitString encode(const ExactValue& value, const ClassDescriptor& cls) {
  if (auto fast = encode_surface(value, cls)) return *fast;
  if (auto bits = encode_extract(value, cls, 0)) return *bits;
  // Distinguish range failures from flag failures for the common plain case.
  if (cls.flags.empty()) encode_family(value, cls.family, cls.p);  // throws with detail
  fail(Errc::FlagMismatch,
       "value " + value.str() + " is not representable in class " + cls.str());
}

ExactValue decode(const BitString& bits, const ClassDescriptor& cls) {
  if (bits.size() != cls.total_width())
    fail(Errc::BadWidth, "class " + cls.str() + " needs " + std::to_string(cls.total_width()) +
                             " bits, got " + std::to_string(bits.size()));
  ExactValue::Surface sf;
  size_t pos = 0;
  bool sqrt_flag = false;
  for (const Flag& f : cls.flags) {
    BitString field = bits.slice(pos, f.width);
    pos += f.width;
    switch (f.kind) {
      case FlagKind::Omega:
        sf.omega = static_cast<int>(field.to_uint() % 8);
        break;
      case FlagKind::Half:
        sf.half = static_cast<unsigned>(field.to_uint());
        break;
      case FlagKind::Sqrt:
        sqrt_flag = field.bit(0) != 0;
        break;
    }
  }
  auto read_nat = [&](unsigned w) {
    BigInt v = bits.slice(pos, w).to_uint();
    pos += w;
    return v;
  };
  auto read_q = [&]() {
    bool nn = bits.bit(pos++) != 0;
    bool nd = bits.bit(pos++) != 0;
    BigInt n = read_nat(cls.p);
    BigInt d = read_nat(cls.p);
    if (d == 0) fail(Errc::ZeroDenominator, "denominator block decodes to 0");
    return SignedRational::from_parts(nn, n, nd, d);
  };
  switch (cls.family) {
    case Family::N:
      sf.re = SignedRational::from_parts(false, read_nat(cls.p), false, 1);
      break;
    case Family::Qplus: {
      BigInt n = read_nat(cls.p);
      BigInt d = read_nat(cls.p);
      if (d == 0) fail(Errc::ZeroDenominator, "denominator block decodes to 0");
      sf.re = SignedRational::from_parts(false, n, false, d);
      break;
    }
    case Family::Q:
      sf.re = read_q();
      break;
    case Family::C:
      sf.re = read_q();
      sf.im = read_q();
      break;
  }
  if (sqrt_flag) {
    sf.sqrt_re = true;
    if (cls.family == Family::C) sf.sqrt_im = true;
  }
  return ExactValue::from_surface(std::move(sf));
}

// --- ratio -------------------------------------------------------------------

namespace {

SignedRational raw_or_reduced(const ExactValue& v, bool imag) {
  if (v.surface()) {
    const auto& sf = *v.surface();
    if (!sf.sqrt_re && !sf.sqrt_im && !sf.sym_root) return imag ? sf.im : sf.re;
  }
  if (imag) return SignedRational::from_rat(v.imag_part().as_rational());
  return SignedRational::from_rat(v.real_part().as_rational());
}

// signed integer view of a raw component numerator / denominator
BigInt snum(const SignedRational& r) { return r.neg_num ? BigInt(-r.num) : r.num; }
BigInt sden(const SignedRational& r) { return r.neg_den ? BigInt(-r.den) : r.den; }

std::pair<ExactValue, ClassDescriptor> ratio_complex(const ExactValue& x, const ExactValue& y,
                                                     const ClassDescriptor& cls) {
  // z/w = (ac+bd)/(c^2+d^2) + i (bc-ad)/(c^2+d^2), kept unreduced so the
  // widened class C_{8p+2} holds structurally.
  SignedRational a = raw_or_reduced(x, false), b = raw_or_reduced(x, true);
  SignedRational c = raw_or_reduced(y, false), d = raw_or_reduced(y, true);
  BigInt na = snum(a), ma = sden(a), nb = snum(b), mb = sden(b);
  BigInt nc = snum(c), mc = sden(c), nd = snum(d), md = sden(d);
  // ac+bd = (na*nc*mb*md + nb*nd*ma*mc) / (ma*mc*mb*md)
  BigInt num_re_top = na * nc * mb * md + nb * nd * ma * mc;
  // bc-ad = (nb*nc*ma*md - na*nd*ma... careful with denominators:
  // b*c = (nb*nc)/(mb*mc), a*d = (na*nd)/(ma*md); common den ma*mb*mc*md
  BigInt num_im_top = nb * nc * ma * md - na * nd * mb * mc;
  BigInt den_top = ma * mb * mc * md;
  // c^2 + d^2 = (nc^2*md^2 + nd^2*mc^2) / (mc^2*md^2)  (positive)
  BigInt cd_num = nc * nc * md * md + nd * nd * mc * mc;
  BigInt cd_den = mc * mc * md * md;
  if (cd_num == 0) fail(Errc::DivideByZero, "ratio with zero divisor amplitude");
  // (A/B) / (C/D) = (A*D)/(B*C)
  BigInt out_re_n = num_re_top * cd_den;
  BigInt out_im_n = num_im_top * cd_den;
  BigInt out_den = den_top * cd_num;
  ExactValue::Surface sf;
  sf.re = SignedRational(out_re_n, out_den);
  sf.im = SignedRational(out_im_n, out_den);
  ClassDescriptor out_cls = ClassDescriptor::plain(Family::C, 8 * cls.p + 2);
  return {ExactValue::from_surface(std::move(sf)), out_cls};
}

int omega_tag_of(const ExactValue& v) {
  if (v.surface() && v.surface()->omega) return *v.surface()->omega;
  for (int s = 0; s < 8; ++s) {
    ExactValue stripped = v * ExactValue::omega((8 - s) % 8);
    if (stripped.rad_re() == 1 && stripped.rad_im() == 1 && stripped.core_re().is_rational() &&
        stripped.core_im().is_rational())
      return s;
  }
  fail(Errc::FlagMismatch, "value " + v.str() + " carries no omega-power structure");
}

}  // namespace

std::pair<ExactValue, ClassDescriptor> ratio(const ExactValue& x, const ExactValue& y,
                                             const ClassDescriptor& cls) {
  if (y.is_zero()) fail(Errc::DivideByZero, "ratio with zero denominator value");
  bool has_omega = false;
  for (const Flag& f : cls.flags) has_omega |= f.kind == FlagKind::Omega;

  if (has_omega && cls.family == Family::C) {
    int sx = omega_tag_of(x), sy = omega_tag_of(y);
    ExactValue px = x * ExactValue::omega((8 - sx) % 8);
    ExactValue py = y * ExactValue::omega((8 - sy) % 8);
    auto [payload, pcls] = ratio_complex(px, py, ClassDescriptor::plain(Family::C, cls.p));
    int tag = ((sx - sy) % 8 + 8) % 8;
    ExactValue out = payload.times_omega_pow(tag);
    return {out, pcls.with_flag(FlagKind::Omega, 3)};
  }

  switch (cls.family) {
    case Family::N: {
      if (!x.is_integer() || !y.is_integer() || x.sign_real() < 0 || y.sign_real() < 0)
        fail(Errc::FlagMismatch, "ratio inputs are not N_p values");
      ExactValue::Surface sf;
      sf.re = SignedRational(rat_num(x.as_rational()), rat_num(y.as_rational()));
      sf.im = SignedRational(BigInt(0), BigInt(1));
      return {ExactValue::from_surface(std::move(sf)),
              ClassDescriptor::plain(Family::Qplus, cls.p)};
    }
    case Family::Qplus:
    case Family::Q: {
      SignedRational q = raw_or_reduced(x, false);
      SignedRational r = raw_or_reduced(y, false);
      // q/r = (n_q * m_r) / (m_q * n_r), signs xor-ed
      if (r.num == 0) fail(Errc::DivideByZero, "ratio with zero denominator value");
      SignedRational out = SignedRational::from_parts(
          q.neg_num != r.neg_den, q.num * r.den, q.neg_den != r.neg_num, q.den * r.num);
      ExactValue::Surface sf;
      sf.re = std::move(out);
      sf.im = SignedRational(BigInt(0), BigInt(1));
      Family fam = cls.family;
      return {ExactValue::from_surface(std::move(sf)),
              ClassDescriptor::plain(fam, 2 * cls.p)};
    }
    case Family::C:
      return ratio_complex(x, y, cls);
  }
  fail(Errc::Internal, "unreachable");
}

ExactValue omega_expand(int s) {
  if (s < 0 || s > 7) fail(Errc::OutOfRange, "omega power must lie in 0..7");
  return ExactValue::omega(s);
}

ExactValue arith(const ExactValue& a, const ExactValue& b, ArithOp op) {
  return op == ArithOp::Add ? a + b : a * b;
}

}  // namespace sqlh
