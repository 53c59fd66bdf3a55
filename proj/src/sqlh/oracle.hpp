#pragma once

#include <vector>

#include "sqlh/amplitude_query.hpp"
#include "sqlh/sparse_ham.hpp"

#include <memory>

namespace sqlh {
// Brute-force ground truth: exact state-vector simulation, dense
// reconstruction and spectral computations. Everything here is desk-scale by
// construction; the qubit cap guards the exponential blowup.
namespace oracle {

struct Config {
  int cap = 14;  // max qubits for dense work
};

struct DenseState {
  int n = 0;
  std::vector<ExactValue> amp;  // size 2^n; qubit 1 is the most significant bit

  ExactValue& at(const BitString& x) { return amp.at(x.index()); }
  const ExactValue& at(const BitString& x) const { return amp.at(x.index()); }
};

struct DenseHam {
  int n = 0;
  std::vector<ExactValue> a;  // row-major 2^n x 2^n

  size_t dim() const { return size_t(1) << n; }
  ExactValue& at(size_t i, size_t j) { return a.at(i * dim() + j); }
  const ExactValue& at(size_t i, size_t j) const { return a.at(i * dim() + j); }
};

// |x, xi, 0^m, +^p> (layout-aware for sparsified circuits).
DenseState initial_state(const CircuitDescriptor& c, const BitString& x, const BitString& xi,
                         const Config& cfg = {});

DenseState basis_state(int n, const BitString& x, const Config& cfg = {});

// Uniform superposition over a membership pattern's support.
DenseState pattern_state(const SubsetPattern& pat, const Config& cfg = {});

// Exact simulation of the first `upto` gates (everything by default).
DenseState simulate(const CircuitDescriptor& c, DenseState init, size_t upto = SIZE_MAX,
                    const Config& cfg = {});

void apply_gate(const Gate& g, DenseState& s);

// Acceptance probability <phi| U^dagger Pi_out U |phi>, exact.
ExactValue accept_probability(const CircuitDescriptor& c, const BitString& x,
                              const BitString& xi, const Config& cfg = {});

struct Densified {
  DenseState values;        // raw query outputs
  QSqrt2 scale_squared;     // sum |q(x)|^2, i.e. c^2 for a normalised state
  std::optional<ExactValue> scale;  // c when it lies in the ring
};

Densified densify_state(const AmplitudeQuery& a, const Config& cfg = {});

// Scale-consistency: one positive c with q(x) = c*ref(x) for all x. Returns c;
// throws InconsistentScale otherwise.
ExactValue scale_consistency(const AmplitudeQuery& a, const DenseState& ref,
                             const Config& cfg = {});

// Exact dense reconstruction; verifies Hermiticity and row-support exactness
// (full off-support scan when n <= full_check_cap).
DenseHam densify_ham(const SparseHam& h, const Config& cfg = {}, int full_check_cap = 8);

// Ascending eigenvalues with the residual contract |Hv - lam v| <= 1e-9 |H|.
std::vector<double> spectrum(const DenseHam& h);
double lowest_eigenvalue(const DenseHam& h);

// true iff all off-diagonal entries are real and <= 0 (exact sign tests).
bool stoquastic_check(const DenseHam& h);

// exact norm-squared of a dense state
QSqrt2 norm_squared(const DenseState& s);

ExactValue inner_product(const DenseState& a, const DenseState& b);  // <a|b>

// Query view of an explicit matrix (exact row supports).
SparseHam sparse_from_dense(std::shared_ptr<const DenseHam> m);

}  // namespace oracle
}  // namespace sqlh
