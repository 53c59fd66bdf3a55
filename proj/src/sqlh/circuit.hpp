#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqlh/bitstring.hpp"
#include "sqlh/error.hpp"

namespace sqlh {

enum class GateKind { X, CNOT, TOF, H, T, TDG, ID, SWAP };

const char* gate_name(GateKind k);
int gate_arity(GateKind k);
bool gate_is_classical(GateKind k);     // permutation of basis strings
bool gate_is_self_inverse(GateKind k);  // everything except T / TDG

struct Gate {
  GateKind kind;
  std::vector<int> qubits;  // 1-based, control(s) first then target
  bool operator==(const Gate&) const = default;
};

// Register partition of a semi-classical verification circuit:
// n input, w proof, m |0>-ancilla, p |+>-ancilla qubits (p even).
struct Registers {
  int n = 0, w = 0, m = 0, p = 0;
  int total() const { return n + w + m + p; }
};

// Row layout metadata attached by spatial_sparsify: K rows of N qubits with a
// snake-like swap schedule between consecutive rows.
struct SparseLayout {
  int rows = 1;       // K
  int row_width = 0;  // N = original qubit count
};

struct CircuitDescriptor {
  Registers regs;
  std::vector<Gate> gates;  // execution order: gates[0] acts first
  std::optional<SparseLayout> layout;

  int qubit_count() const { return layout ? layout->rows * layout->row_width : regs.total(); }
  size_t gate_count() const { return gates.size(); }
  bool classical_only() const;
  bool toffoli_only() const;
  int output_qubit() const;  // 1-based; the row-K image of qubit 1 when sparsified

  static CircuitDescriptor parse(const std::string& text);
  static CircuitDescriptor parse_file(const std::string& path);
  std::string str() const;
};

// Applies a classical gate to a basis string in place (1-based gate indices).
void apply_classical_gate(const Gate& g, BitString& s);

// Structured Toffoli-equivalent expansion: each Toffoli becomes the fixed
// 15-gate {CNOT,H,T,Tdg} block; block k covers expanded positions
// 15(k-1)+1 .. 15k.
struct BlockPos {
  size_t block;   // 1-based
  size_t offset;  // 1-based, 1..15
  bool operator==(const BlockPos&) const = default;
};

struct StecDescriptor {
  CircuitDescriptor base;      // Toffoli-only circuit
  CircuitDescriptor expanded;  // 15x gate list
  static BlockPos block_map(size_t j);  // 1-based expanded position
};

StecDescriptor toffoli_decompose(const CircuitDescriptor& c);

// The 15-gate sequence for one Toffoli on wires (a,b;c), execution order.
std::vector<Gate> stec_block(int a, int b, int c);

// Snake-pattern sparsification: K rows of N qubits, a full row-to-row swap
// layer between consecutive gates. K <= 1 circuits come back unchanged.
CircuitDescriptor spatial_sparsify(const CircuitDescriptor& c);

// Unit expansion for clocking: each row-gate layer is padded with N-1
// explicit identities so the operation sequence has exactly (2K-1)N steps.
std::vector<Gate> unit_expanded_ops(const CircuitDescriptor& sparsified);

// Pads the front of the gate list with identities so the padded gate count
// K' satisfies K'+1 a perfect square.
CircuitDescriptor pre_idle(const CircuitDescriptor& c);

// SWAP -> three CNOTs lowering for strict MA_q gate sets.
CircuitDescriptor lower_swaps(const CircuitDescriptor& c);

}  // namespace sqlh
