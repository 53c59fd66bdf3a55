#include "sqlh/clock_ham.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sqlh {

const char* term_label_name(TermLabel l) {
  switch (l) {
    case TermLabel::In: return "in";
    case TermLabel::Out: return "out";
    case TermLabel::Clock: return "clock";
    case TermLabel::Prop: return "prop";
  }
  return "?";
}

bool LocalTerm::is_hermitian() const {
  for (size_t r = 0; r < dim(); ++r)
    for (size_t c = r; c < dim(); ++c)
      if (!(at(r, c) == at(c, r).conj())) return false;
  return true;
}

bool LocalTerm::is_real() const {
  for (const ExactValue& v : mat)
    if (!v.is_real()) return false;
  return true;
}

bool LocalTerm::is_stoquastic() const {
  for (size_t r = 0; r < dim(); ++r)
    for (size_t c = 0; c < dim(); ++c) {
      if (r == c) continue;
      const ExactValue& v = at(r, c);
      if (!v.is_real() || v.sign_real() > 0) return false;
    }
  return true;
}

int ClockHam::max_support() const {
  int m = 0;
  for (const LocalTerm& t : terms) m = std::max<int>(m, (int)t.support.size());
  return m;
}

int ClockHam::interaction_degree() const {
  std::map<int, std::set<int>> adj;
  for (const LocalTerm& t : terms)
    for (int a : t.support)
      for (int b : t.support)
        if (a != b) adj[a].insert(b);
  int deg = 0;
  for (auto& [q, s] : adj) deg = std::max<int>(deg, (int)s.size());
  return deg;
}

// --- term assembly -----------------------------------------------------------

namespace {

using Mat2 = std::array<ExactValue, 4>;  // row-major 2x2

Mat2 m_p0() { return {ExactValue::integer(1), ExactValue(), ExactValue(), ExactValue()}; }
Mat2 m_p1() { return {ExactValue(), ExactValue(), ExactValue(), ExactValue::integer(1)}; }
Mat2 m_f10() { return {ExactValue(), ExactValue(), ExactValue::integer(1), ExactValue()}; }
Mat2 m_f01() { return {ExactValue(), ExactValue::integer(1), ExactValue(), ExactValue()}; }
Mat2 m_minus() {  // |-><-| = (I - X)/2
  ExactValue h = ExactValue::rational(BigRat(1, 2));
  return {h, -h, -h, h};
}

struct FactorOp {
  int qubit;  // 0-based global
  Mat2 m;
};

// most significant = first qubit of the (ascending) support
size_t bit_of(size_t pattern, size_t pos, size_t k) { return (pattern >> (k - 1 - pos)) & 1; }

LocalTerm make_diag_product(TermLabel label, int prop_t, std::vector<FactorOp> ops,
                            const ExactValue& scalar) {
  LocalTerm t;
  t.label = label;
  t.prop_t = prop_t;
  std::vector<int> qs;
  for (auto& f : ops) qs.push_back(f.qubit);
  std::vector<int> sorted = qs;
  std::sort(sorted.begin(), sorted.end());
  t.support = sorted;
  size_t k = sorted.size();
  size_t dim = size_t(1) << k;
  t.mat.assign(dim * dim, ExactValue());
  for (size_t r = 0; r < dim; ++r)
    for (size_t c = 0; c < dim; ++c) {
      ExactValue prod = scalar;
      bool zero = false;
      for (const FactorOp& f : ops) {
        size_t pos = std::lower_bound(sorted.begin(), sorted.end(), f.qubit) - sorted.begin();
        const ExactValue& e = f.m[bit_of(r, pos, k) * 2 + bit_of(c, pos, k)];
        if (e.is_zero()) { zero = true; break; }
        prod = prod * e;
      }
      if (!zero) t.mat[r * dim + c] = prod;
    }
  return t;
}

std::vector<ExactValue> gate_matrix(const Gate& g) {
  size_t a = gate_arity(g.kind);
  size_t dim = size_t(1) << a;
  std::vector<ExactValue> m(dim * dim, ExactValue());
  auto one = ExactValue::integer(1);
  if (gate_is_classical(g.kind)) {
    for (size_t col = 0; col < dim; ++col) {
      BitString bits = BitString::from_index(col, a);
      // remap onto local wires 1..a
      Gate local = g;
      for (size_t i = 0; i < local.qubits.size(); ++i) local.qubits[i] = (int)i + 1;
      apply_classical_gate(local, bits);
      m[bits.index() * dim + col] = one;
    }
    return m;
  }
  switch (g.kind) {
    case GateKind::H: {
      ExactValue s = ExactValue::inv_sqrt2_pow(1);
      m = {s, s, s, -s};
      break;
    }
    case GateKind::T:
      m = {one, {}, {}, ExactValue::omega(1)};
      break;
    case GateKind::TDG:
      m = {one, {}, {}, ExactValue::omega(7)};
      break;
    default:
      fail(Errc::Internal, "gate matrix not defined");
  }
  return m;
}

std::vector<ExactValue> dagger(const std::vector<ExactValue>& m, size_t dim) {
  std::vector<ExactValue> d(dim * dim);
  for (size_t r = 0; r < dim; ++r)
    for (size_t c = 0; c < dim; ++c) d[c * dim + r] = m[r * dim + c].conj();
  return d;
}

// -(1/prefactor) * [ U (x) fwd-clock-product  +  U^dag (x) bwd-clock-product ]
LocalTerm make_prop_coupling(int prop_t, const Gate& g, const std::vector<FactorOp>& fwd,
                             const std::vector<FactorOp>& bwd, const ExactValue& scalar) {
  LocalTerm t;
  t.label = TermLabel::Prop;
  t.prop_t = prop_t;
  std::vector<int> sorted;
  for (int q : g.qubits) sorted.push_back(q - 1);
  for (const auto& f : fwd) sorted.push_back(f.qubit);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  t.support = sorted;
  size_t k = sorted.size();
  size_t dim = size_t(1) << k;
  size_t ga = gate_arity(g.kind);
  size_t gdim = size_t(1) << ga;
  std::vector<ExactValue> U = gate_matrix(g);
  std::vector<ExactValue> Ud = dagger(U, gdim);
  std::vector<size_t> gate_pos;  // support positions of the gate wires, gate order
  for (int q : g.qubits)
    gate_pos.push_back(std::lower_bound(sorted.begin(), sorted.end(), q - 1) - sorted.begin());
  t.mat.assign(dim * dim, ExactValue());
  auto clock_product = [&](const std::vector<FactorOp>& ops, size_t r, size_t c,
                           ExactValue& out) -> bool {
    for (const FactorOp& f : ops) {
      size_t pos = std::lower_bound(sorted.begin(), sorted.end(), f.qubit) - sorted.begin();
      const ExactValue& e = f.m[bit_of(r, pos, k) * 2 + bit_of(c, pos, k)];
      if (e.is_zero()) return false;
      out = out * e;
    }
    return true;
  };
  for (size_t r = 0; r < dim; ++r)
    for (size_t c = 0; c < dim; ++c) {
      size_t gr = 0, gc = 0;
      for (size_t i = 0; i < ga; ++i) {
        gr = (gr << 1) | bit_of(r, gate_pos[i], k);
        gc = (gc << 1) | bit_of(c, gate_pos[i], k);
      }
      ExactValue total;
      if (!U[gr * gdim + gc].is_zero()) {
        ExactValue term = scalar * U[gr * gdim + gc];
        if (clock_product(fwd, r, c, term)) total = total + term;
      }
      if (!Ud[gr * gdim + gc].is_zero()) {
        ExactValue term = scalar * Ud[gr * gdim + gc];
        if (clock_product(bwd, r, c, term)) total = total + term;
      }
      if (!total.is_zero()) t.mat[r * dim + c] = std::move(total);
    }
  return t;
}

void push_input_penalties(std::vector<LocalTerm>& terms, const Registers& regs,
                          const BitString& x, const std::vector<FactorOp>& clock_window,
                          int row_base = 0) {
  for (int j = 0; j < regs.n; ++j) {
    std::vector<FactorOp> ops{{row_base + j, x.bit(j) ? m_p0() : m_p1()}};
    ops.insert(ops.end(), clock_window.begin(), clock_window.end());
    terms.push_back(make_diag_product(TermLabel::In, 0, ops, ExactValue::integer(1)));
  }
  for (int j = 0; j < regs.m; ++j) {
    std::vector<FactorOp> ops{{row_base + regs.n + regs.w + j, m_p1()}};
    ops.insert(ops.end(), clock_window.begin(), clock_window.end());
    terms.push_back(make_diag_product(TermLabel::In, 0, ops, ExactValue::integer(1)));
  }
  for (int j = 0; j < regs.p; ++j) {
    std::vector<FactorOp> ops{{row_base + regs.n + regs.w + regs.m + j, m_minus()}};
    ops.insert(ops.end(), clock_window.begin(), clock_window.end());
    terms.push_back(make_diag_product(TermLabel::In, 0, ops, ExactValue::integer(1)));
  }
}

}  // namespace

// --- builders ----------------------------------------------------------------

namespace {

// The shared Kempe-Regev clock scheme: single-clock-qubit couplings with the
// K^12-weighted all-pairs illegal-word penalty. Used by both the 4-local and
// the 3-local builders; only the gate list differs.
ClockHam build_kr_clock(const CircuitDescriptor& base, const std::vector<Gate>& ops,
                        const BitString& x, const BitString& xi, AmplitudeQuery history,
                        int locality) {
  const int M = base.regs.total();
  const int K = static_cast<int>(ops.size());
  if (K < 1) fail(Errc::OutOfRange, "clock construction needs at least one gate");
  ClockHam h;
  h.circuit_qubits = M;
  h.clock_qubits = K;
  h.locality = locality;
  h.history = std::move(history);
  h.init_pattern = initial_pattern(base, x, xi);
  h.ops = ops;
  auto clk = [M](int t) { return M + t - 1; };  // 1-based step -> 0-based qubit
  const ExactValue one = ExactValue::integer(1);
  const ExactValue half = ExactValue::rational(BigRat(1, 2));

  // H_in: wrong input / ancilla / coin at clock word 0 (c_1 = 0)
  push_input_penalties(h.terms, base.regs, x, {{clk(1), m_p0()}});
  // H_out: output qubit q=1 measured in the Z basis at the final clock step
  h.terms.push_back(make_diag_product(TermLabel::Out, 0,
                                      {{0, m_p0()}, {clk(K), m_p1()}}, one));
  // H_clock: K^12 * sum_{i<j} |01><01|
  BigInt k12 = 1;
  for (int i = 0; i < 12; ++i) k12 *= K;
  ExactValue wclock = ExactValue::rational(BigRat(k12));
  for (int i = 1; i <= K; ++i)
    for (int j = i + 1; j <= K; ++j)
      h.terms.push_back(make_diag_product(TermLabel::Clock, 0,
                                          {{clk(i), m_p0()}, {clk(j), m_p1()}}, wclock));
  // H_prop(t): diagonal penalties plus the single-clock-qubit coupling, all
  // with the global 1/2 prefactor
  for (int t = 1; t <= K; ++t) {
    if (K == 1) {
      h.terms.push_back(make_diag_product(TermLabel::Prop, t, {{clk(1), m_p1()}}, half));
      h.terms.push_back(make_diag_product(TermLabel::Prop, t, {{clk(1), m_p0()}}, half));
    } else if (t == 1) {
      h.terms.push_back(make_diag_product(TermLabel::Prop, t,
                                          {{clk(1), m_p1()}, {clk(2), m_p0()}}, half));
      h.terms.push_back(make_diag_product(TermLabel::Prop, t, {{clk(1), m_p0()}}, half));
    } else if (t < K) {
      h.terms.push_back(make_diag_product(TermLabel::Prop, t,
                                          {{clk(t), m_p1()}, {clk(t + 1), m_p0()}}, half));
      h.terms.push_back(make_diag_product(TermLabel::Prop, t,
                                          {{clk(t - 1), m_p1()}, {clk(t), m_p0()}}, half));
    } else {
      h.terms.push_back(make_diag_product(TermLabel::Prop, t, {{clk(K), m_p1()}}, half));
      h.terms.push_back(make_diag_product(TermLabel::Prop, t,
                                          {{clk(K - 1), m_p1()}, {clk(K), m_p0()}}, half));
    }
    h.terms.push_back(make_prop_coupling(t, ops[t - 1], {{clk(t), m_f10()}},
                                         {{clk(t), m_f01()}}, -half));
  }
  return h;
}

}  // namespace

ClockHam build_4local(const CircuitDescriptor& c, const BitString& x, const BitString& xi) {
  if (!c.toffoli_only())
    fail(Errc::NonToffoliGate, "the 4-local builder expects a Toffoli-only circuit");
  HybridSpec spec{initial_pattern(c, x, xi), c.gates};
  return build_kr_clock(c, c.gates, x, xi, history_query_classical(spec, true), 4);
}

ClockHam build_3local(const StecDescriptor& s, const BitString& x, const BitString& xi) {
  HybridSpec spec{initial_pattern(s.expanded, x, xi), s.expanded.gates};
  AmplitudeQuery history = history_query_stec(spec, StecQueryConfig{}, true);
  return build_kr_clock(s.expanded, s.expanded.gates, x, xi, std::move(history), 3);
}

ClockHam build_sparse6(const CircuitDescriptor& sparsified, const BitString& x,
                       const BitString& xi) {
  if (!sparsified.layout)
    fail(Errc::SyntaxError, "sparse6 expects a spatially sparsified circuit (run sparsify first)");
  if (!sparsified.classical_only())
    fail(Errc::NonClassicalGate, "sparse6 expects the MA_q gate set");
  std::vector<Gate> ops = unit_expanded_ops(sparsified);
  const int M = sparsified.qubit_count();
  const int S = static_cast<int>(ops.size());
  if (S < 1) fail(Errc::OutOfRange, "clock construction needs at least one operation");
  ClockHam h;
  h.circuit_qubits = M;
  h.clock_qubits = S;
  h.locality = 6;
  h.init_pattern = initial_pattern(sparsified, x, xi);
  h.ops = ops;
  HybridSpec spec{h.init_pattern, ops};
  h.history = history_query_classical(spec, true);
  auto clk = [M](int t) { return M + t - 1; };
  const ExactValue one = ExactValue::integer(1);

  // first touch t_j of every state qubit (1-based step)
  std::vector<int> first_touch(M, 0);
  for (int t = 1; t <= S; ++t)
    for (int q : ops[t - 1].qubits)
      if (!first_touch[q - 1]) first_touch[q - 1] = t;
  auto window = [&](int j) {  // triple-clock check around t_j
    std::vector<FactorOp> w;
    int tj = first_touch[j] ? first_touch[j] : 1;
    if (tj == 1) {
      w.push_back({clk(1), m_p0()});
      if (S >= 2) w.push_back({clk(2), m_p0()});
    } else {
      w.push_back({clk(tj - 1), m_p1()});
      w.push_back({clk(tj), m_p0()});
      if (tj + 1 <= S) w.push_back({clk(tj + 1), m_p0()});
    }
    return w;
  };

  // H_in over Q_x, Q_0, Q_+ with per-qubit clock windows
  const Registers& regs = sparsified.regs;
  const int N = sparsified.layout->row_width;
  const int rows = sparsified.layout->rows;
  for (int j = 0; j < regs.n; ++j) {
    std::vector<FactorOp> opsv{{j, x.bit(j) ? m_p0() : m_p1()}};
    auto w = window(j);
    opsv.insert(opsv.end(), w.begin(), w.end());
    h.terms.push_back(make_diag_product(TermLabel::In, 0, opsv, one));
  }
  for (int row = 0; row < rows; ++row) {
    for (int col = 0; col < N; ++col) {
      int q = row * N + col;
      bool q0 = (row == 0) ? (col >= regs.n + regs.w && col < regs.n + regs.w + regs.m)
                           : (col < regs.n + regs.w + regs.m);
      bool qp = col >= regs.n + regs.w + regs.m;
      if (!q0 && !qp) continue;
      std::vector<FactorOp> opsv{{q, q0 ? m_p1() : m_minus()}};
      auto w = window(q);
      opsv.insert(opsv.end(), w.begin(), w.end());
      h.terms.push_back(make_diag_product(TermLabel::In, 0, opsv, one));
    }
  }
  // H_out on the final-row image of the output qubit
  h.terms.push_back(make_diag_product(TermLabel::Out, 0,
                                      {{sparsified.output_qubit() - 1, m_p0()},
                                       {clk(S), m_p1()}}, one));
  // H_clock: adjacent |01><01| with unit weight
  for (int t = 1; t < S; ++t)
    h.terms.push_back(make_diag_product(TermLabel::Clock, 0,
                                        {{clk(t), m_p0()}, {clk(t + 1), m_p1()}}, one));
  // H_prop(t) with three-qubit clock windows (no 1/2 prefactor here)
  for (int t = 1; t <= S; ++t) {
    const Gate& g = ops[t - 1];
    if (S == 1) {
      h.terms.push_back(make_diag_product(TermLabel::Prop, t, {{clk(1), m_p0()}}, one));
      h.terms.push_back(make_diag_product(TermLabel::Prop, t, {{clk(1), m_p1()}}, one));
      h.terms.push_back(make_prop_coupling(t, g, {{clk(1), m_f10()}}, {{clk(1), m_f01()}}, -one));
    } else if (t == 1) {
      h.terms.push_back(make_diag_product(TermLabel::Prop, t,
                                          {{clk(1), m_p0()}, {clk(2), m_p0()}}, one));
      h.terms.push_back(make_diag_product(TermLabel::Prop, t,
                                          {{clk(1), m_p1()}, {clk(2), m_p0()}}, one));
      h.terms.push_back(make_prop_coupling(t, g, {{clk(1), m_f10()}, {clk(2), m_p0()}},
                                           {{clk(1), m_f01()}, {clk(2), m_p0()}}, -one));
    } else if (t < S) {
      h.terms.push_back(make_diag_product(
          TermLabel::Prop, t,
          {{clk(t - 1), m_p1()}, {clk(t), m_p0()}, {clk(t + 1), m_p0()}}, one));
      h.terms.push_back(make_diag_product(
          TermLabel::Prop, t,
          {{clk(t - 1), m_p1()}, {clk(t), m_p1()}, {clk(t + 1), m_p0()}}, one));
      h.terms.push_back(make_prop_coupling(
          t, g, {{clk(t - 1), m_p1()}, {clk(t), m_f10()}, {clk(t + 1), m_p0()}},
          {{clk(t - 1), m_p1()}, {clk(t), m_f01()}, {clk(t + 1), m_p0()}}, -one));
    } else {
      h.terms.push_back(make_diag_product(TermLabel::Prop, t,
                                          {{clk(S - 1), m_p1()}, {clk(S), m_p0()}}, one));
      h.terms.push_back(make_diag_product(TermLabel::Prop, t,
                                          {{clk(S - 1), m_p1()}, {clk(S), m_p1()}}, one));
      h.terms.push_back(make_prop_coupling(t, g, {{clk(S - 1), m_p1()}, {clk(S), m_f10()}},
                                           {{clk(S - 1), m_p1()}, {clk(S), m_f01()}}, -one));
    }
  }
  return h;
}

// --- sparse view and exact history checks -------------------------------------

SparseHam sparse_from_terms(std::shared_ptr<const std::vector<LocalTerm>> terms, int n_) {
  SparseHam s;
  s.n = n_;
  int loc = 0;
  for (const LocalTerm& t : *terms) loc = std::max<int>(loc, (int)t.support.size());
  s.locality = loc;
  s.real = true;
  for (const LocalTerm& t : *terms)
    if (!t.is_real()) { s.real = false; break; }
  int n = s.n;
  s.entry = [terms, n](const BitString& x, const BitString& y) {
    if ((int)x.size() != n || (int)y.size() != n) fail(Errc::BadWidth, "entry query width");
    ExactValue sum;
    for (const LocalTerm& t : *terms) {
      bool agree = true;
      size_t pos = 0, r = 0, c = 0;
      for (int q = 0; q < n && agree; ++q) {
        if (pos < t.support.size() && t.support[pos] == q) {
          r = (r << 1) | x.bit(q);
          c = (c << 1) | y.bit(q);
          ++pos;
        } else if (x.bit(q) != y.bit(q)) {
          agree = false;
        }
      }
      if (!agree) continue;
      const ExactValue& e = t.at(r, c);
      if (!e.is_zero()) sum = sum + e;
    }
    return sum;
  };
  auto entry = s.entry;
  s.rows = [terms, n, entry](const BitString& x) {
    std::set<BitString> cand;
    for (const LocalTerm& t : *terms) {
      size_t k = t.support.size();
      size_t r = 0;
      for (size_t i = 0; i < k; ++i) r = (r << 1) | x.bit(t.support[i]);
      for (size_t c = 0; c < t.dim(); ++c) {
        if (t.at(r, c).is_zero()) continue;
        BitString y = x;
        for (size_t i = 0; i < k; ++i) y.set(t.support[i], (c >> (k - 1 - i)) & 1);
        cand.insert(std::move(y));
      }
    }
    std::vector<BitString> out;
    for (const BitString& y : cand)
      if (!entry(x, y).is_zero()) out.push_back(y);
    return out;
  };
  return s;
}

SparseHam as_sparse(const ClockHam& h) {
  return sparse_from_terms(std::make_shared<const std::vector<LocalTerm>>(h.terms),
                           h.total_qubits());
}

namespace {

// Enumerate the history support with exact amplitudes by simulating each
// prefix; M stays desk-scale even when the clock register is long.
std::map<BitString, ExactValue> history_support(const ClockHam& h) {
  const int M = h.circuit_qubits;
  const int K = h.clock_qubits;
  oracle::Config cfg;
  oracle::DenseState slice = oracle::pattern_state(h.init_pattern, cfg);
  ExactValue norm = ExactValue::sqrt_rational(BigRat(1, K + 1));
  std::map<BitString, ExactValue> supp;
  for (int t = 0; t <= K; ++t) {
    if (t > 0) oracle::apply_gate(h.ops[t - 1], slice);
    BitString clock(K);
    for (int i = 0; i < t; ++i) clock.set(i, 1);
    for (size_t i = 0; i < slice.amp.size(); ++i) {
      if (slice.amp[i].is_zero()) continue;
      BitString y = BitString::from_index(i, M).concat(clock);
      supp[y] = slice.amp[i] * norm;
    }
  }
  return supp;
}

}  // namespace

ExactValue history_energy(const ClockHam& h) {
  auto supp = history_support(h);
  SparseHam s = as_sparse(h);
  ExactValue acc;
  for (const auto& [x, ax] : supp) {
    ExactValue hx;
    for (const BitString& y : s.rows(x)) {
      auto it = supp.find(y);
      if (it == supp.end()) continue;
      hx = hx + s.entry(x, y) * it->second;
    }
    if (!hx.is_zero()) acc = acc + ax.conj() * hx;
  }
  return acc;
}

std::optional<BitString> history_residual_witness(const ClockHam& h) {
  auto supp = history_support(h);
  SparseHam s = as_sparse(h);
  std::set<BitString> reach;
  for (const auto& [y, ay] : supp) {
    reach.insert(y);
    for (const BitString& x : s.rows(y)) reach.insert(x);
  }
  for (const BitString& x : reach) {
    ExactValue hx;
    for (const BitString& y : s.rows(x)) {
      auto it = supp.find(y);
      if (it == supp.end()) continue;
      hx = hx + s.entry(x, y) * it->second;
    }
    if (!hx.is_zero()) return x;
  }
  return std::nullopt;
}

}  // namespace sqlh
