#pragma once

#include <map>

#include "sqlh/rng.hpp"
#include "sqlh/sparse_ham.hpp"
#include "sqlh/xform.hpp"

namespace sqlh {

struct MerlinMessage {
  ExactValue lambda_star;  // claimed ground energy
  AmplitudeQuery xi;       // query access to the claimed ground state
  BitString x_star;        // starting configuration, alpha(x_star) != 0
};

// Continuous-time Markov chain generator built from (F, Q_xi, lambda*):
//   <y|G|x> = lambda* delta_{xy} - (xi_y/xi_x) <y|F|x>.
// Rates are exact; floating point appears only inside the sampler.
struct MarkovGenerator {
  int n = 0;
  ExactValue lambda_star;
  std::function<std::vector<BitString>(const BitString&)> neighbors;  // y != x candidates
  std::function<ExactValue(const BitString&, const BitString&)> rate;  // x -> y
  std::function<ExactValue(const BitString&)> diag;                    // <x|G|x>
  std::function<ExactValue(const BitString&)> escape;                  // sum of rates out
};

MarkovGenerator build_generator(const SparseHam& f, const MerlinMessage& msg);

struct Legality {
  bool legal = true;
  std::string reason;  // NegativeRate / BalanceResidual diagnostics
};

// Legal iff every off-diagonal rate out of x is >= 0 and the column balance
// sum_y <y|G|x> is exactly zero. Pure exact arithmetic.
Legality legality_check(const MarkovGenerator& g, const BitString& x);

struct VerifierConfig {
  ExactValue a, b;       // thresholds, a < b
  BigRat t_max = 0;      // 0 -> default poly preset M^3
  int trials = 100;
  uint64_t seed = 1;
  uint64_t max_jumps = 1'000'000;
  unsigned numeric_fallback_bits = 256;  // reserved for interval fallback mode
};

struct RunOutcome {
  bool survived = false;
  std::string reason;            // rejection reason when !survived
  double time = 0;               // simulated time reached
  uint64_t jumps = 0;
  std::map<BitString, double> occupation;  // time-weighted
};

RunOutcome gillespie_run(const MarkovGenerator& g, const BitString& start, double t_max,
                         Rng rng, uint64_t max_jumps = 1'000'000);

struct Verdict {
  bool accept = false;
  std::string reason;
  int survived = 0;
  int trials = 0;
  bool fast_path = false;  // rejected on lambda* > b before any simulation
  std::vector<RunOutcome> runs;
};

// Arthur's pipeline: fast-path comparison, complex->real reduction when
// needed (adapting xi via the real/imaginary split), fixed-node transform,
// generator construction and seeded Gillespie trials.
Verdict verify(const SparseHam& h, const MerlinMessage& msg, const VerifierConfig& cfg);

}  // namespace sqlh
