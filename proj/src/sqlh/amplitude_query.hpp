#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>

#include "sqlh/circuit.hpp"
#include "sqlh/encoding.hpp"

namespace sqlh {

// Witness for the positive scale constant c: either known exactly or bounded
// by 2^bound_bits.
struct ScaleClass {
  std::optional<ExactValue> exact;
  unsigned bound_bits = 0;
};

// A succinct state as a queryable object: query(x) = c * alpha(x) bit-exactly,
// for one fixed c > 0. Queries are total; strings outside the support yield
// exact zero. Objects are immutable and the closures pure, so instances can be
// shared freely across threads.
struct AmplitudeQuery {
  int n = 0;
  std::function<ExactValue(const BitString&)> query;
  ScaleClass scale;
  ClassDescriptor codomain = ClassDescriptor::plain(Family::N, 1);
};

struct SubsetSpec {
  int n = 0;
  std::function<bool(const BitString&)> member;
  std::optional<BigInt> cardinality;
};

SubsetSpec subset_from_list(int n, std::vector<BitString> strings);

// Membership pattern {fixed bits} x {0,1}^{free positions}; the subset S of a
// history state's t=0 slice has this form.
struct SubsetPattern {
  BitString fixed;             // values on the pinned positions (free bits ignored)
  std::vector<uint8_t> free_;  // 1 = free position
  int n() const { return static_cast<int>(fixed.size()); }
  bool member(const BitString& s) const;
  BigInt cardinality() const;
  SubsetSpec as_spec() const;
};

// |x, xi, 0^m, +^p> support pattern for a plain circuit; for a sparsified
// circuit rows >1 of the input/proof/ancilla columns are pinned to 0 and every
// row's coin column is free.
SubsetPattern initial_pattern(const CircuitDescriptor& c, const BitString& x, const BitString& xi);

struct HybridSpec {
  SubsetPattern init;
  std::vector<Gate> ops;  // execution order
  int steps() const { return static_cast<int>(ops.size()); }
};

// --- constructors / combinators ---------------------------------------------

AmplitudeQuery subset_query(const SubsetSpec& s, bool exact_amplitude);

AmplitudeQuery tensor(const AmplitudeQuery& a, const AmplitudeQuery& b);

// Query of R_k...R_1 |psi> for self-inverse classical gates.
AmplitudeQuery pushforward_reversible(const AmplitudeQuery& a, const CircuitDescriptor& gates,
                                      size_t k);

AmplitudeQuery pushforward_hadamard(const AmplitudeQuery& a, int q);

AmplitudeQuery pushforward_phase(const AmplitudeQuery& a, int q, bool dagger);

// History state (1/sqrt(K+1)) sum_t |phi_t>|1^t 0^{K-t}> for classical ops.
// exact_amplitude=false gives the N_1 membership form with c = sqrt(|S|(K+1)),
// exact_amplitude=true outputs sqrt(1/(|S|(K+1))) amplitudes with c = 1.
AmplitudeQuery history_query_classical(const HybridSpec& h, bool exact_amplitude);

// Clock-word classification for reporting: throws BadClockWord if z is not of
// the unary form 1^k 0^(K-k); returns k otherwise.
int classify_clock_word(const BitString& z);

struct StecQueryConfig {
  unsigned hadamard_cap = 8;  // max Hadamards per queried prefix
};

// History state over a Clifford+T gate list (STEC blocks); amplitudes are
// evaluated by back-propagating the bra through the prefix with omega and
// 1/sqrt2 bookkeeping.
AmplitudeQuery history_query_stec(const HybridSpec& h, const StecQueryConfig& cfg,
                                  bool exact_amplitude);

// Real/imaginary split: phi1(j||b) = Re/Im half, phi2 negates the b=1 branch.
std::pair<AmplitudeQuery, AmplitudeQuery> split_real(const AmplitudeQuery& a);

// <sigma|psi> for a product state sigma given per-qubit basis vectors; costs
// N_sigma query calls and refuses above the budget.
ExactValue overlap_product_state(const AmplitudeQuery& a,
                                 const std::vector<std::array<ExactValue, 2>>& sigma,
                                 uint64_t budget = 4096);

// alpha(x)/alpha(y); the scale cancels.
ExactValue amp_ratio(const AmplitudeQuery& a, const BitString& x, const BitString& y);

}  // namespace sqlh
