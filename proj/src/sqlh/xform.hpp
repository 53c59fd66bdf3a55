#pragma once

#include "sqlh/sparse_ham.hpp"

namespace sqlh {

// H = H_R + i H_I on n qubits  ->  H_hat = H_R (x) I + H_I (x) (-iY) on n+1
// qubits, entries real, spectrum the 2-multiset of sigma(H).
SparseHam complexify_to_real(const SparseHam& h);

// Fixed-node Hamiltonian F(psi, H): sign-violating off-diagonals are zeroed
// and compensated on the diagonal by sum_{(x,y) in P} (a(y)/a(x)) H(x,y).
// The walks never evaluate F outside supp(psi); an explicit diagonal query at
// a(x) = 0 is an error.
SparseHam fixed_node(const SparseHam& h, const AmplitudeQuery& xi);

// Conjugation by the sign gauge |x> -> sgn(a(x))|x>.
SparseHam sign_gauge(const SparseHam& f, const AmplitudeQuery& xi);

}  // namespace sqlh
