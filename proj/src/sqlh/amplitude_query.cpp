#include "sqlh/amplitude_query.hpp"

#include <algorithm>
#include <set>

namespace sqlh {

namespace {

unsigned clog2(const BigInt& v) {
  // bits needed to write v ( >= 1 )
  unsigned b = bit_width(v);
  return b ? b : 1;
}

}  // namespace

SubsetSpec subset_from_list(int n, std::vector<BitString> strings) {
  auto set = std::make_shared<std::set<BitString>>();
  for (auto& s : strings) {
    if ((int)s.size() != n) fail(Errc::BadWidth, "subset string width mismatch");
    set->insert(s);
  }
  SubsetSpec spec;
  spec.n = n;
  spec.cardinality = BigInt(set->size());
  spec.member = [set](const BitString& x) { return set->count(x) > 0; };
  return spec;
}

bool SubsetPattern::member(const BitString& s) const {
  if (s.size() != fixed.size()) return false;
  for (size_t i = 0; i < fixed.size(); ++i)
    if (!free_[i] && s.bit(i) != fixed.bit(i)) return false;
  return true;
}

BigInt SubsetPattern::cardinality() const {
  size_t f = 0;
  for (uint8_t b : free_) f += b;
  return BigInt(1) << f;
}

SubsetSpec SubsetPattern::as_spec() const {
  SubsetSpec s;
  s.n = n();
  SubsetPattern self = *this;
  s.member = [self](const BitString& x) { return self.member(x); };
  s.cardinality = cardinality();
  return s;
}

SubsetPattern initial_pattern(const CircuitDescriptor& c, const BitString& x,
                              const BitString& xi) {
  const Registers& r = c.regs;
  if ((int)x.size() != r.n) fail(Errc::BadWidth, "input string width != n");
  if ((int)xi.size() != r.w) fail(Errc::BadWidth, "proof string width != w");
  const int N = r.total();
  const int rows = c.layout ? c.layout->rows : 1;
  SubsetPattern pat;
  pat.fixed = BitString::zeros(static_cast<size_t>(N) * rows);
  pat.free_.assign(static_cast<size_t>(N) * rows, 0);
  for (int row = 0; row < rows; ++row) {
    size_t base = static_cast<size_t>(row) * N;
    if (row == 0) {
      for (int i = 0; i < r.n; ++i) pat.fixed.set(base + i, x.bit(i));
      for (int i = 0; i < r.w; ++i) pat.fixed.set(base + r.n + i, xi.bit(i));
    }
    // rows > 1: input and proof columns pinned to 0 (Q_0), ancillas 0, coins free
    for (int i = 0; i < r.p; ++i) pat.free_[base + r.n + r.w + r.m + i] = 1;
  }
  return pat;
}

AmplitudeQuery subset_query(const SubsetSpec& s, bool exact_amplitude) {
  AmplitudeQuery q;
  q.n = s.n;
  if (!exact_amplitude) {
    auto member = s.member;
    q.query = [member](const BitString& x) {
      return member(x) ? ExactValue::integer(1) : ExactValue();
    };
    q.codomain = ClassDescriptor::plain(Family::N, 1);
    if (s.cardinality) {
      q.scale.exact = ExactValue::sqrt_rational(BigRat(*s.cardinality));
      q.scale.bound_bits = (clog2(*s.cardinality) + 1) / 2 + 1;
    } else {
      q.scale.bound_bits = static_cast<unsigned>((s.n + 1) / 2 + 1);  // c = sqrt|S| <= 2^{n/2}
    }
    return q;
  }
  if (!s.cardinality)
    fail(Errc::CardinalityUnknown, "exact amplitude mode needs the subset cardinality");
  BigInt size = *s.cardinality;
  if (size == 0) fail(Errc::OutOfRange, "empty subset has no state");
  ExactValue amp = ExactValue::sqrt_rational(BigRat(1, size));
  auto member = s.member;
  q.query = [member, amp](const BitString& x) { return member(x) ? amp : ExactValue(); };
  q.scale.exact = ExactValue::integer(1);
  q.scale.bound_bits = 1;
  q.codomain = ClassDescriptor::plain(Family::Qplus, clog2(size)).with_flag(FlagKind::Sqrt, 1);
  return q;
}

AmplitudeQuery tensor(const AmplitudeQuery& a, const AmplitudeQuery& b) {
  AmplitudeQuery q;
  q.n = a.n + b.n;
  auto qa = a.query, qb = b.query;
  int na = a.n, nb = b.n;
  q.query = [qa, qb, na, nb](const BitString& x) {
    return arith(qa(x.slice(0, na)), qb(x.slice(na, nb)), ArithOp::Mul);
  };
  if (a.scale.exact && b.scale.exact) q.scale.exact = *a.scale.exact * *b.scale.exact;
  q.scale.bound_bits = a.scale.bound_bits + b.scale.bound_bits;
  // c_{psi phi} = c_psi * c_phi <= 2^{p+q}
  unsigned p = std::max(a.codomain.p, b.codomain.p);
  q.codomain = a.codomain;
  q.codomain.p = 2 * p + 1;
  return q;
}

AmplitudeQuery pushforward_reversible(const AmplitudeQuery& a, const CircuitDescriptor& gates,
                                      size_t k) {
  if (k > gates.gate_count()) fail(Errc::IndexOutOfRange, "step index beyond gate list");
  std::vector<Gate> prefix(gates.gates.begin(), gates.gates.begin() + k);
  for (const Gate& g : prefix)
    if (!gate_is_classical(g.kind))
      fail(Errc::NonClassicalGate,
           std::string(gate_name(g.kind)) + " is not a classical reversible gate");
  AmplitudeQuery q;
  q.n = a.n;
  q.scale = a.scale;
  q.codomain = a.codomain;
  auto qa = a.query;
  q.query = [qa, prefix](const BitString& x) {
    BitString img = x;
    // all gates here are self-inverse: the inverse image applies them k..1
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) apply_classical_gate(*it, img);
    return qa(img);
  };
  return q;
}

AmplitudeQuery pushforward_hadamard(const AmplitudeQuery& a, int qubit) {
  if (qubit < 1 || qubit > a.n) fail(Errc::IndexOutOfRange, "Hadamard qubit index");
  AmplitudeQuery q;
  q.n = a.n;
  q.scale = a.scale;
  q.codomain = a.codomain;
  bool has_half = false;
  for (auto& f : q.codomain.flags) {
    if (f.kind == FlagKind::Half) { f.width += 1; has_half = true; }
  }
  if (!has_half) q.codomain.flags.push_back({FlagKind::Half, 1});
  q.codomain.p += 1;  // sums of two payloads
  auto qa = a.query;
  q.query = [qa, qubit](const BitString& x) {
    BitString y = x, yb = x;
    y.set(qubit - 1, 0);
    yb.set(qubit - 1, 1);
    ExactValue hi = qa(yb);
    ExactValue sum = arith(qa(y), x.bit(qubit - 1) ? -hi : hi, ArithOp::Add);
    return sum.times_inv_sqrt2_pow(1);
  };
  return q;
}

AmplitudeQuery pushforward_phase(const AmplitudeQuery& a, int qubit, bool dagger) {
  if (qubit < 1 || qubit > a.n) fail(Errc::IndexOutOfRange, "phase qubit index");
  AmplitudeQuery q;
  q.n = a.n;
  q.scale = a.scale;
  q.codomain = a.codomain;
  bool has_omega = false;
  for (auto& f : q.codomain.flags) has_omega |= f.kind == FlagKind::Omega;
  if (!has_omega) q.codomain.flags.insert(q.codomain.flags.begin(), {FlagKind::Omega, 3});
  auto qa = a.query;
  q.query = [qa, qubit, dagger](const BitString& x) {
    ExactValue v = qa(x);
    if (!x.bit(qubit - 1) || v.is_zero()) return v;
    return v.times_omega_pow(dagger ? 7 : 1);
  };
  return q;
}

int classify_clock_word(const BitString& z) {
  size_t k = 0;
  while (k < z.size() && z.bit(k)) ++k;
  for (size_t i = k; i < z.size(); ++i)
    if (z.bit(i))
      fail(Errc::BadClockWord, "clock word " + z.str() + " is not of the unary form 1^k 0^(K-k)");
  return static_cast<int>(k);
}

namespace {

// Splits y||z, checks the unary clock word and returns k, or nullopt for
// amplitude-0 words (queries stay total).
std::optional<int> clock_step(const BitString& input, int n_state, int K) {
  if ((int)input.size() != n_state + K) fail(Errc::BadWidth, "query string width mismatch");
  BitString z = input.slice(n_state, K);
  size_t k = 0;
  while (k < z.size() && z.bit(k)) ++k;
  for (size_t i = k; i < z.size(); ++i)
    if (z.bit(i)) return std::nullopt;
  return static_cast<int>(k);
}

ExactValue history_exact_amp(const SubsetPattern& init, int K) {
  BigInt slots = init.cardinality() * (K + 1);
  return ExactValue::sqrt_rational(BigRat(1, slots));
}

}  // namespace

AmplitudeQuery history_query_classical(const HybridSpec& h, bool exact_amplitude) {
  for (const Gate& g : h.ops)
    if (!gate_is_classical(g.kind))
      fail(Errc::NonClassicalGate,
           std::string(gate_name(g.kind)) + " gate in a classical history state");
  const int K = h.steps();
  const int n_state = h.init.n();
  AmplitudeQuery q;
  q.n = n_state + K;
  SubsetPattern init = h.init;
  std::vector<Gate> ops = h.ops;
  ExactValue one = ExactValue::integer(1);
  ExactValue amp = exact_amplitude ? history_exact_amp(init, K) : one;
  q.query = [init, ops, n_state, K, amp](const BitString& x) {
    auto k = clock_step(x, n_state, K);
    if (!k) return ExactValue();
    BitString img = x.slice(0, n_state);
    for (int j = *k - 1; j >= 0; --j) apply_classical_gate(ops[j], img);
    return init.member(img) ? amp : ExactValue();
  };
  BigInt slots = init.cardinality() * (K + 1);
  if (exact_amplitude) {
    q.scale.exact = ExactValue::integer(1);
    q.scale.bound_bits = 1;
    q.codomain = ClassDescriptor::plain(Family::Qplus, clog2(slots)).with_flag(FlagKind::Sqrt, 1);
  } else {
    q.scale.exact = ExactValue::sqrt_rational(BigRat(slots));
    q.scale.bound_bits = (clog2(slots) + 1) / 2 + 1;
    q.codomain = ClassDescriptor::plain(Family::N, 1);
  }
  return q;
}

AmplitudeQuery history_query_stec(const HybridSpec& h, const StecQueryConfig& cfg,
                                  bool exact_amplitude) {
  const int K = h.steps();
  const int n_state = h.init.n();
  AmplitudeQuery q;
  q.n = n_state + K;
  SubsetPattern init = h.init;
  std::vector<Gate> ops = h.ops;
  ExactValue amp = exact_amplitude ? history_exact_amp(init, K) : ExactValue::integer(1);
  unsigned cap = cfg.hadamard_cap;
  q.query = [init, ops, n_state, K, amp, cap](const BitString& x) {
    auto kopt = clock_step(x, n_state, K);
    if (!kopt) return ExactValue();
    int k = *kopt;
    unsigned hadamards = 0;
    for (int j = 0; j < k; ++j)
      if (ops[j].kind == GateKind::H) ++hadamards;
    if (hadamards > cap)
      fail(Errc::HadamardBudgetExceeded,
           "prefix of " + std::to_string(k) + " gates holds " + std::to_string(hadamards) +
               " Hadamards, cap is " + std::to_string(cap));
    // Back-propagate <y| through U_k ... U_1 keeping (string, omega power,
    // sign) branches; every Hadamard doubles the branch count and adds one
    // global 1/sqrt2 factor.
    struct Branch {
      BitString s;
      int omega;  // mod 8
      int sign;   // +-1
    };
    std::vector<Branch> branches{{x.slice(0, n_state), 0, 1}};
    unsigned half = 0;
    for (int j = k - 1; j >= 0; --j) {
      const Gate& g = ops[j];
      switch (g.kind) {
        case GateKind::T:
          for (auto& br : branches)
            if (br.s.bit(g.qubits[0] - 1)) br.omega = (br.omega + 1) % 8;
          break;
        case GateKind::TDG:
          for (auto& br : branches)
            if (br.s.bit(g.qubits[0] - 1)) br.omega = (br.omega + 7) % 8;
          break;
        case GateKind::H: {
          ++half;
          std::vector<Branch> next;
          next.reserve(branches.size() * 2);
          for (const auto& br : branches) {
            int qb = g.qubits[0] - 1;
            Branch lo = br, hi = br;
            lo.s.set(qb, 0);
            hi.s.set(qb, 1);
            if (br.s.bit(qb)) hi.sign = -hi.sign;
            next.push_back(std::move(lo));
            next.push_back(std::move(hi));
          }
          branches = std::move(next);
          break;
        }
        default:
          for (auto& br : branches) apply_classical_gate(g, br.s);
      }
    }
    ExactValue sum;
    for (const auto& br : branches) {
      if (!init.member(br.s)) continue;
      ExactValue term = ExactValue::omega(br.omega);
      if (br.sign < 0) term = -term;
      sum = sum + term;
    }
    if (sum.is_zero()) return ExactValue();
    ExactValue out = sum.times_inv_sqrt2_pow(half);
    return arith(out, amp, ArithOp::Mul);
  };
  BigInt slots = init.cardinality() * (K + 1);
  if (exact_amplitude) {
    q.scale.exact = ExactValue::integer(1);
    q.scale.bound_bits = 1;
    q.codomain = ClassDescriptor::plain(Family::C, clog2(slots) + cap + 3)
                     .with_flag(FlagKind::Sqrt, 1);
  } else {
    q.scale.exact = ExactValue::sqrt_rational(BigRat(slots));
    q.scale.bound_bits = (clog2(slots) + 1) / 2 + 1;
    q.codomain = ClassDescriptor::plain(Family::C, cap + 3)
                     .with_flag(FlagKind::Omega, 3)
                     .with_flag(FlagKind::Half, std::max(4u, cap));
  }
  return q;
}

std::pair<AmplitudeQuery, AmplitudeQuery> split_real(const AmplitudeQuery& a) {
  auto make = [&](bool negate_imag_branch) {
    AmplitudeQuery q;
    q.n = a.n + 1;
    q.scale = a.scale;
    q.codomain = ClassDescriptor::plain(Family::Q, a.codomain.p);
    q.codomain.flags = a.codomain.flags;
    auto qa = a.query;
    int n = a.n;
    q.query = [qa, n, negate_imag_branch](const BitString& x) {
      BitString j = x.slice(0, n);
      ExactValue v = qa(j);
      if (!x.bit(n)) return v.real_part();
      ExactValue im = v.imag_part();
      return negate_imag_branch ? -im : im;
    };
    return q;
  };
  return {make(false), make(true)};
}

ExactValue overlap_product_state(const AmplitudeQuery& a,
                                 const std::vector<std::array<ExactValue, 2>>& sigma,
                                 uint64_t budget) {
  if ((int)sigma.size() != a.n) fail(Errc::BadWidth, "alphabet list size != qubit count");
  uint64_t n_sigma = 1;
  for (const auto& al : sigma) {
    unsigned nz = (!al[0].is_zero()) + (!al[1].is_zero());
    if (nz == 0) return ExactValue();
    n_sigma *= nz;
    if (n_sigma > budget)
      fail(Errc::CostExceeded, "product state touches more than " + std::to_string(budget) +
                                   " computational strings");
  }
  ExactValue total;
  BitString x(a.n);
  std::function<void(int, const ExactValue&)> walk = [&](int pos, const ExactValue& coeff) {
    if (pos == a.n) {
      total = total + arith(coeff, a.query(x), ArithOp::Mul);
      return;
    }
    for (int b = 0; b < 2; ++b) {
      const ExactValue& amp = sigma[pos][b];
      if (amp.is_zero()) continue;
      x.set(pos, b);
      walk(pos + 1, arith(coeff, amp.conj(), ArithOp::Mul));
    }
  };
  walk(0, ExactValue::integer(1));
  return total;
}

ExactValue amp_ratio(const AmplitudeQuery& a, const BitString& x, const BitString& y) {
  ExactValue vy = a.query(y);
  if (vy.is_zero())
    fail(Errc::ZeroDenominatorAmplitude, "amplitude at " + y.str() + " is zero");
  return a.query(x) / vy;
}

}  // namespace sqlh
