#include "doctest.h"
#include "sqlh/clock_ham.hpp"
#include "sqlh/oracle.hpp"

using namespace sqlh;

namespace {

BitString bs(const std::string& s) { return BitString::parse(s); }

CircuitDescriptor circ(const std::string& body) { return CircuitDescriptor::parse(body); }

oracle::DenseHam densify(const ClockHam& h) {
  return oracle::densify_ham(as_sparse(h), oracle::Config{}, /*full_check_cap=*/7);
}

// Accepting K=1 fixture: TOF[2,3;1] flips the output qubit on x = 011.
ClockHam k1_fixture() {
  CircuitDescriptor c = circ("REG 3 0 0 0\nTOF 2 3 1\n");
  return build_4local(c, bs("011"), BitString());
}

// Accepting K=2 Toffoli fixture: TOF[3,4;1]; TOF[3,4;2] on x = 0111.
ClockHam k2_fixture() {
  CircuitDescriptor c = circ("REG 4 0 0 0\nTOF 3 4 1\nTOF 3 4 2\n");
  return build_4local(c, bs("0111"), BitString());
}

// Coin-register fixture (nondeterministic accept), used for structural audits.
ClockHam coin_fixture() {
  CircuitDescriptor c = circ("REG 1 0 0 2\nTOF 2 3 1\n");
  return build_4local(c, bs("0"), BitString());
}

}  // namespace

TEST_CASE("4-local K=1 accepting instance is annihilated exactly") {
  ClockHam h = k1_fixture();
  CHECK(h.total_qubits() == 4);
  CHECK(h.max_support() <= 4);
  CHECK(history_energy(h).is_zero());
  CHECK(!history_residual_witness(h).has_value());
  auto evs = oracle::spectrum(densify(h));
  CHECK(std::abs(evs.front()) < 1e-12);
}

TEST_CASE("4-local terms are stoquastic with support at most 4") {
  for (const ClockHam& h : {k1_fixture(), k2_fixture(), coin_fixture()}) {
    for (const LocalTerm& t : h.terms) {
      CHECK(t.support.size() <= 4);
      CHECK(t.is_hermitian());
      CHECK(t.is_stoquastic());
    }
    CHECK(oracle::stoquastic_check(densify(h)));
  }
}

TEST_CASE("4-local K>=2: zero energy but leakage outside the legal sector") {
  ClockHam h = k2_fixture();
  CHECK(history_energy(h).is_zero());  // <eta|H|eta> = 0 exactly
  // the single-clock-qubit coupling leaks onto illegal clock words, so the
  // history state is not an exact null vector and the ground energy dips
  // slightly below zero (order K^2 / K^12)
  auto w = history_residual_witness(h);
  CHECK(w.has_value());
  double lam0 = oracle::spectrum(densify(h)).front();
  CHECK(lam0 < 0);
  CHECK(lam0 > -1e-3);
}

TEST_CASE("rejecting instances have a positive spectral gap") {
  // same circuit, non-accepting input (output wire ends at 0)
  CircuitDescriptor c = circ("REG 4 0 0 0\nTOF 3 4 1\nTOF 3 4 2\n");
  ClockHam h = build_4local(c, bs("1011"), BitString());
  double lam0 = oracle::spectrum(densify(h)).front();
  CHECK(lam0 > 1e-3);
}

TEST_CASE("illegal clock words pay at least K^12") {
  ClockHam h = k2_fixture();
  SparseHam s = as_sparse(h);
  // state word 0000 with the illegal clock word 01
  BitString x = bs("000001");
  ExactValue diag = s.entry(x, x);
  CHECK((diag - ExactValue::integer(4096)).sign_real() >= 0);
}

TEST_CASE("3-local STEC builder: locality, hermiticity, exact zero energy") {
  // deterministic accept: TOF[2,3;1] flips the output qubit on x = 011
  CircuitDescriptor base = circ("REG 3 0 0 0\nTOF 2 3 1\n");
  StecDescriptor stec = toffoli_decompose(base);
  ClockHam h = build_3local(stec, bs("011"), BitString());
  CHECK(h.clock_qubits == 15);
  CHECK(h.max_support() <= 3);
  bool complex_seen = false;
  for (const LocalTerm& t : h.terms) {
    CHECK(t.is_hermitian());
    complex_seen |= !t.is_real();
  }
  CHECK(complex_seen);  // T-gate couplings make the operator complex
  CHECK(history_energy(h).is_zero());
  CHECK(history_residual_witness(h).has_value());  // same single-qubit-coupling leakage
  SparseHam s = as_sparse(h);
  CHECK_FALSE(s.real);
  // sparse Hermiticity spot check
  BitString a(18), b(18);
  b.set(3, 1);
  CHECK(s.entry(a, b) == s.entry(b, a).conj());
}

TEST_CASE("sparse6 accepting instance: exact annihilation and lambda0 = 0") {
  // N=2, K=2 accepting: x=11, CNOT[1;2] then X[2]; output = row-2 qubit 1
  CircuitDescriptor c = circ("REG 2 0 0 0\nCNOT 1 2\nX 2\n");
  CircuitDescriptor s = spatial_sparsify(c);
  ClockHam h = build_sparse6(s, bs("11"), BitString());
  CHECK(h.clock_qubits == (2 * 2 - 1) * 2);
  CHECK(h.circuit_qubits == 4);
  CHECK(h.max_support() <= 6);
  CHECK(history_energy(h).is_zero());
  CHECK(!history_residual_witness(h).has_value());
  for (const LocalTerm& t : h.terms) {
    CHECK(t.is_hermitian());
    CHECK(t.is_stoquastic());
  }
  double lam0 = oracle::spectrum(oracle::densify_ham(as_sparse(h), {}, 0)).front();
  CHECK(std::abs(lam0) < 1e-9);
  // bounded interaction degree
  CHECK(h.interaction_degree() <= 16);
  // builder refuses raw circuits
  CHECK_THROWS_AS(build_sparse6(c, bs("11"), BitString()), Error);
}

TEST_CASE("sparse6 with a single row") {
  CircuitDescriptor c = circ("REG 2 0 0 0\nX 1\n");
  CircuitDescriptor s = spatial_sparsify(c);
  ClockHam h = build_sparse6(s, bs("01"), BitString());
  CHECK(h.clock_qubits == 2);  // S = (2*1-1)*2
  CHECK(history_energy(h).is_zero());
  CHECK(!history_residual_witness(h).has_value());
  double lam0 = oracle::spectrum(densify(h)).front();
  CHECK(std::abs(lam0) < 1e-12);
}

TEST_CASE("as_sparse matches the dense sum of terms") {
  ClockHam h = k1_fixture();
  SparseHam s = as_sparse(h);
  oracle::DenseHam dense = oracle::densify_ham(s, {}, 8);  // includes support exactness
  // diagonal equals the sum of term diagonals
  for (size_t i = 0; i < dense.dim(); ++i) {
    ExactValue want;
    BitString x = BitString::from_index(i, h.total_qubits());
    for (const LocalTerm& t : h.terms) {
      size_t r = 0;
      for (size_t k = 0; k < t.support.size(); ++k) r = (r << 1) | x.bit(t.support[k]);
      want = want + t.at(r, r);
    }
    CHECK(dense.at(i, i) == want);
  }
}
