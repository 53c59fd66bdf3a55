#include "sqlh/circuit.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace sqlh {

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "X";
    case GateKind::CNOT: return "CNOT";
    case GateKind::TOF: return "TOF";
    case GateKind::H: return "H";
    case GateKind::T: return "T";
    case GateKind::TDG: return "TDG";
    case GateKind::ID: return "ID";
    case GateKind::SWAP: return "SWAP";
  }
  return "?";
}

int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::T:
    case GateKind::TDG:
    case GateKind::ID: return 1;
    case GateKind::CNOT:
    case GateKind::SWAP: return 2;
    case GateKind::TOF: return 3;
  }
  return 0;
}

bool gate_is_classical(GateKind k) {
  switch (k) {
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::TOF:
    case GateKind::ID:
    case GateKind::SWAP: return true;
    default: return false;
  }
}

bool gate_is_self_inverse(GateKind k) { return k != GateKind::T && k != GateKind::TDG; }

bool CircuitDescriptor::classical_only() const {
  for (const Gate& g : gates)
    if (!gate_is_classical(g.kind)) return false;
  return true;
}

bool CircuitDescriptor::toffoli_only() const {
  for (const Gate& g : gates)
    if (g.kind != GateKind::TOF) return false;
  return true;
}

int CircuitDescriptor::output_qubit() const {
  if (layout) return (layout->rows - 1) * layout->row_width + 1;
  return 1;
}

static GateKind parse_kind(const std::string& s, int line) {
  static const std::map<std::string, GateKind> table = {
      {"X", GateKind::X},   {"CNOT", GateKind::CNOT}, {"TOF", GateKind::TOF},
      {"H", GateKind::H},   {"T", GateKind::T},       {"TDG", GateKind::TDG},
      {"ID", GateKind::ID}, {"SWAP", GateKind::SWAP}, {"TOFFOLI", GateKind::TOF}};
  auto it = table.find(s);
  if (it == table.end())
    fail(Errc::SyntaxError, "line " + std::to_string(line) + ": unknown gate '" + s + "'");
  return it->second;
}

CircuitDescriptor CircuitDescriptor::parse(const std::string& text) {
  CircuitDescriptor c;
  std::istringstream is(text);
  std::string linebuf;
  int lineno = 0;
  bool have_reg = false;
  while (std::getline(is, linebuf)) {
    ++lineno;
    auto hash = linebuf.find('#');
    if (hash != std::string::npos) linebuf.erase(hash);
    std::istringstream ls(linebuf);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "ROWS") {
      int rows = 0, width = 0;
      if (!(ls >> rows >> width) || rows < 1 || width < 1)
        fail(Errc::SyntaxError, "line " + std::to_string(lineno) + ": ROWS needs K N");
      if (!have_reg)
        fail(Errc::SyntaxError, "line " + std::to_string(lineno) + ": ROWS after REG");
      c.layout = SparseLayout{rows, width};
      continue;
    }
    if (tok == "REG") {
      if (have_reg) fail(Errc::SyntaxError, "line " + std::to_string(lineno) + ": duplicate REG");
      if (!(ls >> c.regs.n >> c.regs.w >> c.regs.m >> c.regs.p))
        fail(Errc::SyntaxError, "line " + std::to_string(lineno) + ": REG needs n w m p");
      if (c.regs.n < 0 || c.regs.w < 0 || c.regs.m < 0 || c.regs.p < 0 || c.regs.total() == 0)
        fail(Errc::SyntaxError, "line " + std::to_string(lineno) + ": bad register sizes");
      if (c.regs.p % 2 != 0)
        fail(Errc::SyntaxError, "line " + std::to_string(lineno) +
                                    ": the |+>-ancilla count p must be even");
      have_reg = true;
      continue;
    }
    if (!have_reg)
      fail(Errc::SyntaxError, "line " + std::to_string(lineno) + ": header 'REG n w m p' must come first");
    Gate g;
    g.kind = parse_kind(tok, lineno);
    int q;
    while (ls >> q) g.qubits.push_back(q);
    if (!ls.eof())
      fail(Errc::SyntaxError, "line " + std::to_string(lineno) + ": bad qubit index");
    if ((int)g.qubits.size() != gate_arity(g.kind))
      fail(Errc::SyntaxError, "line " + std::to_string(lineno) + ": " + gate_name(g.kind) +
                                  " takes " + std::to_string(gate_arity(g.kind)) + " qubits");
    for (size_t i = 0; i < g.qubits.size(); ++i) {
      if (g.qubits[i] < 1 || g.qubits[i] > c.qubit_count())
        fail(Errc::IndexOutOfRange,
             "line " + std::to_string(lineno) + ": qubit " + std::to_string(g.qubits[i]) +
                 " outside register of " + std::to_string(c.qubit_count()));
      for (size_t j = i + 1; j < g.qubits.size(); ++j)
        if (g.qubits[i] == g.qubits[j])
          fail(Errc::SyntaxError, "line " + std::to_string(lineno) + ": repeated qubit index");
    }
    c.gates.push_back(std::move(g));
  }
  if (!have_reg) fail(Errc::SyntaxError, "missing 'REG n w m p' header");
  return c;
}

CircuitDescriptor CircuitDescriptor::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Errc::Io, "cannot open circuit file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string CircuitDescriptor::str() const {
  std::ostringstream os;
  os << "REG " << regs.n << " " << regs.w << " " << regs.m << " " << regs.p << "\n";
  if (layout) os << "ROWS " << layout->rows << " " << layout->row_width << "\n";
  for (const Gate& g : gates) {
    os << gate_name(g.kind);
    for (int q : g.qubits) os << " " << q;
    os << "\n";
  }
  return os.str();
}

void apply_classical_gate(const Gate& g, BitString& s) {
  switch (g.kind) {
    case GateKind::X: s.flip(g.qubits[0] - 1); break;
    case GateKind::CNOT:
      if (s.bit(g.qubits[0] - 1)) s.flip(g.qubits[1] - 1);
      break;
    case GateKind::TOF:
      if (s.bit(g.qubits[0] - 1) && s.bit(g.qubits[1] - 1)) s.flip(g.qubits[2] - 1);
      break;
    case GateKind::SWAP: {
      uint8_t a = s.bit(g.qubits[0] - 1), b = s.bit(g.qubits[1] - 1);
      s.set(g.qubits[0] - 1, b);
      s.set(g.qubits[1] - 1, a);
      break;
    }
    case GateKind::ID: break;
    default: fail(Errc::NonClassicalGate, std::string(gate_name(g.kind)) + " is not classical");
  }
}

std::vector<Gate> stec_block(int a, int b, int c) {
  using K = GateKind;
  return {
      {K::T, {a}},    {K::CNOT, {a, b}}, {K::TDG, {b}},  {K::CNOT, {a, b}}, {K::T, {b}},
      {K::H, {c}},    {K::CNOT, {b, c}}, {K::TDG, {c}},  {K::CNOT, {a, c}}, {K::T, {c}},
      {K::CNOT, {b, c}}, {K::TDG, {c}},  {K::CNOT, {a, c}}, {K::T, {c}},    {K::H, {c}},
  };
}

BlockPos StecDescriptor::block_map(size_t j) {
  if (j == 0) fail(Errc::IndexOutOfRange, "expanded positions are 1-based");
  return {(j - 1) / 15 + 1, (j - 1) % 15 + 1};
}

StecDescriptor toffoli_decompose(const CircuitDescriptor& c) {
  StecDescriptor d;
  d.base = c;
  d.expanded.regs = c.regs;
  for (const Gate& g : c.gates) {
    if (g.kind != GateKind::TOF)
      fail(Errc::NonToffoliGate,
           std::string("cannot decompose ") + gate_name(g.kind) + "; expected Toffoli-only circuit");
    auto block = stec_block(g.qubits[0], g.qubits[1], g.qubits[2]);
    d.expanded.gates.insert(d.expanded.gates.end(), block.begin(), block.end());
  }
  return d;
}

CircuitDescriptor spatial_sparsify(const CircuitDescriptor& c) {
  if (!c.classical_only())
    fail(Errc::NonClassicalGate, "spatial sparsification expects the MA_q gate set");
  if (c.layout) fail(Errc::SyntaxError, "circuit is already sparsified");
  const int N = c.regs.total();
  const int K = static_cast<int>(c.gate_count());
  if (K <= 1) {
    CircuitDescriptor out = c;
    out.layout = SparseLayout{1, N};
    return out;
  }
  CircuitDescriptor out;
  out.regs = c.regs;
  out.layout = SparseLayout{K, N};
  auto global = [N](int row, int q) { return (row - 1) * N + q; };  // row, column 1-based
  for (int j = 1; j <= K; ++j) {
    if (j > 1) {
      for (int q = 1; q <= N; ++q)
        out.gates.push_back({GateKind::SWAP, {global(j - 1, q), global(j, q)}});
    }
    Gate g = c.gates[j - 1];
    for (int& q : g.qubits) q = global(j, q);
    out.gates.push_back(std::move(g));
  }
  return out;
}

std::vector<Gate> unit_expanded_ops(const CircuitDescriptor& sparsified) {
  if (!sparsified.layout) fail(Errc::SyntaxError, "unit expansion needs a sparsified circuit");
  const int N = sparsified.layout->row_width;
  const auto& gs = sparsified.gates;
  std::vector<Gate> ops;
  if (gs.empty()) return ops;
  size_t gi = 0;
  const int K = sparsified.layout->rows;
  for (int j = 1; j <= K; ++j) {
    if (j > 1) {
      for (int q = 0; q < N; ++q) ops.push_back(gs.at(gi++));  // the swap layer
    }
    Gate g = gs.at(gi++);
    ops.push_back(g);
    for (int q = 1; q <= N - 1; ++q)
      ops.push_back({GateKind::ID, {(j - 1) * N + q}});
  }
  if (gi != gs.size()) fail(Errc::Internal, "sparsified gate schedule out of shape");
  return ops;
}

CircuitDescriptor pre_idle(const CircuitDescriptor& c) {
  const size_t K = c.gate_count();
  BigInt target = K + 1;
  BigInt r = isqrt_floor(target);
  BigInt next_square = (r * r == target) ? target : (r + 1) * (r + 1);
  size_t N = static_cast<size_t>(next_square - target);
  CircuitDescriptor out;
  out.regs = c.regs;
  out.layout = c.layout;
  out.gates.assign(N, Gate{GateKind::ID, {1}});
  out.gates.insert(out.gates.end(), c.gates.begin(), c.gates.end());
  return out;
}

CircuitDescriptor lower_swaps(const CircuitDescriptor& c) {
  CircuitDescriptor out;
  out.regs = c.regs;
  out.layout = c.layout;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::SWAP) {
      int a = g.qubits[0], b = g.qubits[1];
      out.gates.push_back({GateKind::CNOT, {a, b}});
      out.gates.push_back({GateKind::CNOT, {b, a}});
      out.gates.push_back({GateKind::CNOT, {a, b}});
    } else {
      out.gates.push_back(g);
    }
  }
  return out;
}

}  // namespace sqlh
