#include "doctest.h"
#include "sqlh/amplitude_query.hpp"
#include "sqlh/oracle.hpp"
#include "sqlh/rng.hpp"

using namespace sqlh;

namespace {

BitString bs(const std::string& s) { return BitString::parse(s); }

SubsetSpec demo_subset() { return subset_from_list(2, {bs("00"), bs("11")}); }

CircuitDescriptor circ(const std::string& body) { return CircuitDescriptor::parse(body); }

// random Toffoli-friendly circuit on n qubits
CircuitDescriptor random_classical(Rng& rng, int n, int gates) {
  CircuitDescriptor c;
  c.regs = {n, 0, 0, 0};
  for (int i = 0; i < gates; ++i) {
    int kind = rng.range(0, std::min(2, n - 1));
    std::vector<int> qs;
    while ((int)qs.size() < kind + 1) {
      int q = rng.range(1, n);
      if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
    }
    c.gates.push_back({kind == 0 ? GateKind::X : kind == 1 ? GateKind::CNOT : GateKind::TOF, qs});
  }
  return c;
}

SubsetSpec random_subset(Rng& rng, int n) {
  std::vector<BitString> strings;
  uint64_t dim = 1ull << n;
  for (uint64_t i = 0; i < dim; ++i)
    if (rng.coin()) strings.push_back(BitString::from_index(i, n));
  if (strings.empty()) strings.push_back(BitString::from_index(rng.below(dim), n));
  return subset_from_list(n, std::move(strings));
}

oracle::DenseState densify_subset(const SubsetSpec& s) {
  oracle::DenseState d;
  d.n = s.n;
  size_t dim = size_t(1) << s.n;
  ExactValue amp = ExactValue::sqrt_rational(BigRat(1, *s.cardinality));
  for (size_t i = 0; i < dim; ++i)
    d.amp.push_back(s.member(BitString::from_index(i, s.n)) ? amp : ExactValue());
  return d;
}

}  // namespace

TEST_CASE("subset membership query") {
  AmplitudeQuery q = subset_query(demo_subset(), false);
  CHECK(q.query(bs("00")) == ExactValue::integer(1));
  CHECK(q.query(bs("01")).is_zero());
  CHECK(q.codomain == ClassDescriptor::plain(Family::N, 1));
  REQUIRE(q.scale.exact.has_value());
  CHECK(*q.scale.exact == ExactValue::sqrt_rational(BigRat(2)));
}

TEST_CASE("subset exact amplitude carries the sqrt flag") {
  SubsetSpec s = subset_from_list(2, {bs("00"), bs("01"), bs("11")});
  AmplitudeQuery q = subset_query(s, true);
  ExactValue v = q.query(bs("00"));
  CHECK(v == ExactValue::sqrt_rational(BigRat(1, 3)));
  BitString enc = encode(v, q.codomain);
  CHECK(enc.bit(0) == 1);  // sqrt flag always set on the uniform amplitude
  SubsetSpec nocard = s;
  nocard.cardinality.reset();
  CHECK_THROWS_AS(subset_query(nocard, true), Error);
}

TEST_CASE("tensor of subset states is the membership product") {
  AmplitudeQuery a = subset_query(demo_subset(), false);
  AmplitudeQuery b = subset_query(subset_from_list(1, {bs("1")}), false);
  AmplitudeQuery t = tensor(a, b);
  CHECK(t.n == 3);
  CHECK(t.query(bs("111")) == ExactValue::integer(1));
  CHECK(t.query(bs("110")).is_zero());
  CHECK(t.query(bs("011")).is_zero());
}

TEST_CASE("tensor matches the dense Kronecker product on random states") {
  Rng rng(0xB0);
  for (int it = 0; it < 20; ++it) {
    SubsetSpec sa = random_subset(rng, 3), sb = random_subset(rng, 2);
    AmplitudeQuery a = subset_query(sa, true), b = subset_query(sb, true);
    AmplitudeQuery t = tensor(a, b);
    oracle::DenseState da = densify_subset(sa), db = densify_subset(sb);
    for (size_t i = 0; i < 32; ++i) {
      BitString x = BitString::from_index(i, 5);
      ExactValue want = da.amp[x.slice(0, 3).index()] * db.amp[x.slice(3, 2).index()];
      CHECK(t.query(x) == want);
    }
  }
}

TEST_CASE("zero padding is tensor with the singleton subset") {
  AmplitudeQuery a = subset_query(demo_subset(), false);
  AmplitudeQuery padded = tensor(a, subset_query(subset_from_list(2, {bs("00")}), false));
  CHECK(padded.query(bs("1100")) == a.query(bs("11")));
  CHECK(padded.query(bs("1101")).is_zero());
}

TEST_CASE("reversible pushforward golden cases") {
  AmplitudeQuery s = subset_query(demo_subset(), false);
  CircuitDescriptor c = circ("REG 2 0 0 0\nCNOT 1 2\n");
  AmplitudeQuery q = pushforward_reversible(s, c, 1);
  CHECK(q.query(bs("01")).is_zero());   // CNOT fixes 01, not in S
  CHECK(q.query(bs("10")) == ExactValue::integer(1));  // image 11 in S
  AmplitudeQuery x1 = pushforward_reversible(subset_query(subset_from_list(1, {bs("0")}), false),
                                             circ("REG 1 0 0 0\nX 1\n"), 1);
  CHECK(x1.query(bs("1")) == ExactValue::integer(1));
  CHECK_THROWS_AS(pushforward_reversible(s, circ("REG 2 0 0 0\nH 1\n"), 1), Error);
}

TEST_CASE("pushforwards agree with the exact statevector oracle") {
  Rng rng(0xC1);
  for (int it = 0; it < 60; ++it) {
    int n = rng.range(2, 5);
    SubsetSpec s = random_subset(rng, n);
    CircuitDescriptor c = random_classical(rng, n, rng.range(1, 8));
    size_t k = rng.range(1, (int)c.gate_count());
    AmplitudeQuery q = pushforward_reversible(subset_query(s, true), c, k);
    oracle::DenseState ref = oracle::simulate(c, densify_subset(s), k);
    for (int probe = 0; probe < 16; ++probe) {
      BitString x = BitString::from_index(rng.below(1ull << n), n);
      CHECK(q.query(x) == ref.at(x));
    }
  }
}

TEST_CASE("hadamard pushforward golden and oracle cases") {
  AmplitudeQuery z = subset_query(subset_from_list(1, {bs("0")}), true);
  AmplitudeQuery h = pushforward_hadamard(z, 1);
  CHECK(h.query(bs("0")) == ExactValue::inv_sqrt2_pow(1));
  CHECK(h.query(bs("1")) == ExactValue::inv_sqrt2_pow(1));
  AmplitudeQuery one = subset_query(subset_from_list(1, {bs("1")}), true);
  AmplitudeQuery h1 = pushforward_hadamard(one, 1);
  CHECK(h1.query(bs("1")) == -ExactValue::inv_sqrt2_pow(1));

  Rng rng(0xC2);
  for (int it = 0; it < 40; ++it) {
    int n = rng.range(2, 4);
    SubsetSpec s = random_subset(rng, n);
    AmplitudeQuery q = subset_query(s, true);
    CircuitDescriptor c;
    c.regs = {n, 0, 0, 0};
    int hads = rng.range(1, 3);
    std::vector<int> used;
    for (int i = 0; i < hads; ++i) {
      int qb = rng.range(1, n);
      if (std::find(used.begin(), used.end(), qb) != used.end()) continue;
      used.push_back(qb);
      c.gates.push_back({GateKind::H, {qb}});
      q = pushforward_hadamard(q, qb);
    }
    oracle::DenseState ref = oracle::simulate(c, densify_subset(s));
    for (size_t i = 0; i < (1ull << n); ++i) {
      BitString x = BitString::from_index(i, n);
      CHECK(q.query(x) == ref.at(x));
    }
  }
}

TEST_CASE("phase pushforward golden and oracle cases") {
  AmplitudeQuery s = subset_query(demo_subset(), true);
  AmplitudeQuery t = pushforward_phase(s, 1, false);
  CHECK(t.query(bs("00")) == s.query(bs("00")));  // phase on |0> is 1
  AmplitudeQuery tdg = pushforward_phase(t, 1, true);
  for (auto probe : {"00", "01", "11"})
    CHECK(tdg.query(bs(probe)) == s.query(bs(probe)));  // T then Tdg cancels

  Rng rng(0xC3);
  for (int it = 0; it < 40; ++it) {
    int n = rng.range(1, 4);
    SubsetSpec sub = random_subset(rng, n);
    AmplitudeQuery q = subset_query(sub, true);
    CircuitDescriptor c;
    c.regs = {n, 0, 0, 0};
    for (int i = rng.range(1, 8); i > 0; --i) {
      int qb = rng.range(1, n);
      bool dg = rng.coin();
      c.gates.push_back({dg ? GateKind::TDG : GateKind::T, {qb}});
      q = pushforward_phase(q, qb, dg);
    }
    oracle::DenseState ref = oracle::simulate(c, densify_subset(sub));
    for (size_t i = 0; i < (1ull << n); ++i) {
      BitString x = BitString::from_index(i, n);
      CHECK(q.query(x) == ref.at(x));
    }
  }
}

TEST_CASE("classical history state equals the dense history oracle") {
  Rng rng(0xD1);
  for (int it = 0; it < 15; ++it) {
    Registers regs{2, 1, 1, 2};
    CircuitDescriptor c;
    c.regs = regs;
    int M = regs.total();
    int K = rng.range(1, 6);
    for (int i = 0; i < K; ++i) {
      std::vector<int> qs;
      while ((int)qs.size() < 3) {
        int q = rng.range(1, M);
        if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
      }
      c.gates.push_back({GateKind::TOF, qs});
    }
    BitString x = BitString::from_index(rng.below(4), 2);
    BitString xi = BitString::from_index(rng.below(2), 1);
    HybridSpec spec{initial_pattern(c, x, xi), c.gates};
    AmplitudeQuery q = history_query_classical(spec, true);

    // dense oracle: sum_t |phi_t>|1^t 0^{K-t}> / sqrt(K+1)
    oracle::DenseState slice = oracle::initial_state(c, x, xi);
    ExactValue norm = ExactValue::sqrt_rational(BigRat(1, K + 1));
    for (int t = 0; t <= K; ++t) {
      if (t > 0) oracle::apply_gate(c.gates[t - 1], slice);
      BitString clock(K);
      for (int i = 0; i < t; ++i) clock.set(i, 1);
      for (size_t i = 0; i < slice.amp.size(); ++i) {
        BitString y = BitString::from_index(i, M).concat(clock);
        CHECK(q.query(y) == slice.amp[i] * norm);
      }
    }
    // illegal clock words give exact zero
    if (K >= 2) {
      BitString bad(M + K);
      bad.set(M + K - 1, 1);  // 0...01 suffix
      CHECK(q.query(bad).is_zero());
      CHECK_THROWS_AS(classify_clock_word(bad.slice(M, K)), Error);
    }
  }
}

TEST_CASE("empty circuit history is the t=0 slice") {
  CircuitDescriptor c = circ("REG 1 1 1 2\n");
  BitString x = bs("1"), xi = bs("0");
  HybridSpec spec{initial_pattern(c, x, xi), c.gates};
  AmplitudeQuery q = history_query_classical(spec, true);
  CHECK(q.query(bs("10000")) == ExactValue::sqrt_rational(BigRat(1, 4)));
  CHECK(q.query(bs("10011")) == ExactValue::sqrt_rational(BigRat(1, 4)));
  CHECK(q.query(bs("10100")).is_zero());  // ancilla must be 0
}

TEST_CASE("CEHSS support has cardinality (K+1)|S|") {
  CircuitDescriptor c = circ("REG 2 0 0 2\nTOF 1 2 3\nCNOT 1 4\nX 2\n");
  BitString x = bs("11");
  HybridSpec spec{initial_pattern(c, x, BitString()), c.gates};
  AmplitudeQuery q = history_query_classical(spec, false);
  int total = 0;
  for (uint64_t i = 0; i < (1ull << q.n); ++i)
    if (!q.query(BitString::from_index(i, q.n)).is_zero()) ++total;
  CHECK(total == 4 * (3 + 1));  // |S| = 2^p = 4
}

TEST_CASE("STEC history state equals the oracle on full and partial blocks") {
  Rng rng(0xD7);
  for (int it = 0; it < 6; ++it) {
    CircuitDescriptor base;
    base.regs = {3, 0, 0, 2};
    int M = base.regs.total();
    int blocks = rng.range(1, 2);
    for (int i = 0; i < blocks; ++i) {
      std::vector<int> qs;
      while ((int)qs.size() < 3) {
        int q = rng.range(1, M);
        if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
      }
      base.gates.push_back({GateKind::TOF, qs});
    }
    StecDescriptor stec = toffoli_decompose(base);
    BitString x = BitString::from_index(rng.below(8), 3);
    HybridSpec spec{initial_pattern(stec.expanded, x, BitString()), stec.expanded.gates};
    AmplitudeQuery q = history_query_stec(spec, StecQueryConfig{}, true);
    int K = (int)stec.expanded.gate_count();
    oracle::DenseState slice = oracle::initial_state(stec.expanded, x, BitString());
    ExactValue norm = ExactValue::sqrt_rational(BigRat(1, K + 1));
    for (int t = 0; t <= K; ++t) {
      if (t > 0) oracle::apply_gate(stec.expanded.gates[t - 1], slice);
      BitString clock(K);
      for (int i = 0; i < t; ++i) clock.set(i, 1);
      for (size_t i = 0; i < slice.amp.size(); ++i) {
        BitString y = BitString::from_index(i, M).concat(clock);
        CHECK(q.query(y) == slice.amp[i] * norm);
      }
    }
  }
}

TEST_CASE("STEC hadamard budget is enforced") {
  CircuitDescriptor base;
  base.regs = {3, 0, 0, 0};
  for (int i = 0; i < 5; ++i) base.gates.push_back({GateKind::TOF, {1, 2, 3}});
  StecDescriptor stec = toffoli_decompose(base);
  HybridSpec spec{initial_pattern(stec.expanded, bs("000"), BitString()), stec.expanded.gates};
  AmplitudeQuery q = history_query_stec(spec, StecQueryConfig{.hadamard_cap = 3}, true);
  // prefix with all 75 gates holds 10 hadamards
  BitString full(q.n);
  for (int i = 0; i < 75; ++i) full.set(3 + i, 1);
  CHECK_THROWS_AS(q.query(full), Error);
  // a short prefix stays within budget
  BitString ok(q.n);
  ok.set(3, 1);
  CHECK_NOTHROW(q.query(ok));
}

TEST_CASE("split_real golden case and dense norms") {
  AmplitudeQuery a;
  a.n = 1;
  a.codomain = ClassDescriptor::plain(Family::C, 4);
  a.query = [](const BitString& x) {
    return x.bit(0) ? ExactValue::complex_rational(0, 1) * ExactValue::inv_sqrt2_pow(1)
                    : ExactValue::complex_rational(3, 2);
  };
  auto [phi1, phi2] = split_real(a);
  CHECK(phi1.query(bs("00")) == ExactValue::integer(3));
  CHECK(phi1.query(bs("01")) == ExactValue::integer(2));
  CHECK(phi2.query(bs("01")) == ExactValue::integer(-2));
  CHECK(phi1.query(bs("11")) == ExactValue::inv_sqrt2_pow(1));
  CHECK(phi2.query(bs("11")) == -ExactValue::inv_sqrt2_pow(1));
  // purely real input: the b=1 branch vanishes
  AmplitudeQuery real_a;
  real_a.n = 1;
  real_a.query = [](const BitString&) { return ExactValue::integer(1); };
  auto [r1, r2] = split_real(real_a);
  CHECK(r1.query(bs("01")).is_zero());
  CHECK(r2.query(bs("01")).is_zero());

  // norm preservation on a normalised complex state, checked densely
  AmplitudeQuery c;
  c.n = 1;
  c.query = [](const BitString& x) {
    // (3/5 + 4/5 i)/sqrt2 amplitudes on both strings
    ExactValue v = ExactValue::complex_rational(BigRat(3, 5), BigRat(4, 5));
    return v * ExactValue::inv_sqrt2_pow(1) * (x.bit(0) ? ExactValue::integer(-1)
                                                        : ExactValue::integer(1));
  };
  auto [p1, p2] = split_real(c);
  QSqrt2 n1, n2;
  for (uint64_t i = 0; i < 4; ++i) {
    BitString x = BitString::from_index(i, 2);
    n1 = n1 + p1.query(x).abs_squared_qs2();
    n2 = n2 + p2.query(x).abs_squared_qs2();
  }
  CHECK(n1 == QSqrt2(BigRat(1)));
  CHECK(n2 == QSqrt2(BigRat(1)));
}

TEST_CASE("multi-alphabet overlap") {
  AmplitudeQuery s = subset_query(demo_subset(), true);
  // all computational: single query
  std::vector<std::array<ExactValue, 2>> sigma(2);
  sigma[0] = {ExactValue::integer(1), ExactValue()};
  sigma[1] = {ExactValue::integer(1), ExactValue()};
  CHECK(overlap_product_state(s, sigma) == s.query(bs("00")));
  // one qubit in |+>: two calls, overlap = (1/sqrt2)(amp(00)+amp(01)) = amp(00)/sqrt2
  sigma[1] = {ExactValue::inv_sqrt2_pow(1), ExactValue::inv_sqrt2_pow(1)};
  CHECK(overlap_product_state(s, sigma) ==
        s.query(bs("00")) * ExactValue::inv_sqrt2_pow(1));
  // budget refusal
  std::vector<std::array<ExactValue, 2>> wide(2,
      {ExactValue::inv_sqrt2_pow(1), ExactValue::inv_sqrt2_pow(1)});
  CHECK_THROWS_AS(overlap_product_state(s, wide, 3), Error);

  // random sigma vs dense inner product
  Rng rng(0xE4);
  for (int it = 0; it < 20; ++it) {
    int n = 3;
    SubsetSpec sub = random_subset(rng, n);
    AmplitudeQuery q = subset_query(sub, true);
    oracle::DenseState ref = densify_subset(sub);
    std::vector<std::array<ExactValue, 2>> sg(n);
    for (int i = 0; i < n; ++i) {
      if (rng.coin()) {
        bool one = rng.coin();
        sg[i] = {one ? ExactValue() : ExactValue::integer(1),
                 one ? ExactValue::integer(1) : ExactValue()};
      } else {
        ExactValue h = ExactValue::inv_sqrt2_pow(1);
        sg[i] = {h, rng.coin() ? -h : h};
      }
    }
    ExactValue want;
    for (uint64_t i = 0; i < (1ull << n); ++i) {
      BitString x = BitString::from_index(i, n);
      ExactValue coeff = ExactValue::integer(1);
      for (int b = 0; b < n; ++b) coeff = coeff * sg[b][x.bit(b)].conj();
      want = want + coeff * ref.at(x);
    }
    CHECK(overlap_product_state(q, sg) == want);
  }
}

TEST_CASE("amplitude ratio is exact and scale free") {
  SubsetSpec s = subset_from_list(2, {bs("00"), bs("10"), bs("11")});
  AmplitudeQuery member = subset_query(s, false);
  AmplitudeQuery exact = subset_query(s, true);
  CHECK(amp_ratio(member, bs("00"), bs("00")) == ExactValue::integer(1));
  CHECK(amp_ratio(member, bs("00"), bs("11")) == ExactValue::integer(1));
  // rescaling the query output leaves the ratio unchanged
  AmplitudeQuery scaled = member;
  auto base = member.query;
  scaled.query = [base](const BitString& x) { return base(x) * ExactValue::integer(7); };
  CHECK(amp_ratio(scaled, bs("00"), bs("10")) == amp_ratio(exact, bs("00"), bs("10")));
  CHECK_THROWS_AS(amp_ratio(member, bs("00"), bs("01")), Error);
}

TEST_CASE("scale consistency holds for every constructed query") {
  Rng rng(0xF5);
  for (int it = 0; it < 30; ++it) {
    int n = rng.range(2, 4);
    SubsetSpec sub = random_subset(rng, n);
    CircuitDescriptor c = random_classical(rng, n, 4);
    AmplitudeQuery q = pushforward_reversible(subset_query(sub, false), c, c.gate_count());
    oracle::DenseState ref = oracle::simulate(c, densify_subset(sub));
    ExactValue scale = oracle::scale_consistency(q, ref);
    CHECK(scale == ExactValue::sqrt_rational(BigRat(*sub.cardinality)));
  }
}

TEST_CASE("unitary pushforwards preserve the norm") {
  Rng rng(0xF6);
  for (int it = 0; it < 10; ++it) {
    int n = 3;
    SubsetSpec sub = random_subset(rng, n);
    AmplitudeQuery q = subset_query(sub, true);
    q = pushforward_hadamard(q, rng.range(1, n));
    q = pushforward_phase(q, rng.range(1, n), rng.coin());
    auto d = oracle::densify_state(q);
    CHECK(oracle::norm_squared(d.values) == QSqrt2(BigRat(1)));
  }
}
