#pragma once

#include "sqlh/circuit.hpp"
#include "sqlh/oracle.hpp"
#include "sqlh/sparse_ham.hpp"

namespace sqlh {

enum class TermLabel { In, Out, Clock, Prop };

const char* term_label_name(TermLabel l);

// One Hermitian summand with bounded support: a dense exact matrix over the
// (ascending) support qubits, the first support qubit being most significant.
struct LocalTerm {
  std::vector<int> support;      // 0-based global qubit indices, ascending
  std::vector<ExactValue> mat;   // row-major 2^k x 2^k
  TermLabel label = TermLabel::Prop;
  int prop_t = 0;                // gate step for Prop terms

  size_t dim() const { return size_t(1) << support.size(); }
  const ExactValue& at(size_t r, size_t c) const { return mat.at(r * dim() + c); }
  bool is_hermitian() const;
  bool is_real() const;
  // off-diagonals real and <= 0
  bool is_stoquastic() const;
};

struct ClockHam {
  std::vector<LocalTerm> terms;
  int circuit_qubits = 0;
  int clock_qubits = 0;
  int locality = 0;  // declared bound
  AmplitudeQuery history;
  // history-state ingredients, kept for the exact annihilation checks
  SubsetPattern init_pattern;
  std::vector<Gate> ops;

  int total_qubits() const { return circuit_qubits + clock_qubits; }
  int max_support() const;
  // max number of distinct qubits any single qubit shares a term with
  int interaction_degree() const;
};

// Kempe-Regev style 4-local builder: each Toffoli couples to a single clock
// qubit, illegal clock words are penalised by K^12.
ClockHam build_4local(const CircuitDescriptor& c, const BitString& x, const BitString& xi);

// Same clock scheme over the 15-gate Toffoli blocks; 2-local gates bring the
// locality down to three at the price of complex entries.
ClockHam build_3local(const StecDescriptor& s, const BitString& x, const BitString& xi);

// Appendix-style spatially sparse 6-local builder over the unit-expanded
// snake schedule with (2K-1)N clock qubits and three-qubit clock windows.
ClockHam build_sparse6(const CircuitDescriptor& sparsified, const BitString& x,
                       const BitString& xi);

// Dual-query view: entries sum contributing terms, rows enumerate candidate
// flips within term supports and keep exactly the nonzero columns.
SparseHam sparse_from_terms(std::shared_ptr<const std::vector<LocalTerm>> terms, int n);
SparseHam as_sparse(const ClockHam& h);

// Exact <eta|H|eta> via the sparse queries restricted to the history support.
ExactValue history_energy(const ClockHam& h);

// Exact check that H|eta> = 0: returns the first string where (H eta)(x) != 0.
std::optional<BitString> history_residual_witness(const ClockHam& h);

}  // namespace sqlh
