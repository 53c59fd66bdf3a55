#pragma once

#include <memory>
#include <string>

#include "sqlh/oracle.hpp"
#include "sqlh/rng.hpp"
#include "sqlh/verifier.hpp"

namespace sqlh {

// An instance with an exactly known ground pair: H = -|xi><xi|/<xi|xi> + Q,
// Q positive semidefinite and vanishing on xi, so lambda0 = -1 exactly and xi
// (integer entries) is the unique ground state.
struct ExactInstance {
  std::shared_ptr<oracle::DenseHam> ham;
  std::vector<ExactValue> xi;  // 2^n exact (unnormalised) amplitudes
  ExactValue lambda0;          // -1
  BitString x_star;
};

ExactInstance exact_ground_instance(int n, Rng rng, bool complex_entries = false,
                                    bool nowhere_zero = true);

// Random Hermitian with C_p entries (no special ground structure).
std::shared_ptr<oracle::DenseHam> random_complex_hermitian(int n, Rng rng, unsigned p = 4);

AmplitudeQuery vector_state(int n, std::vector<ExactValue> entries);

// File-producing fixture generation for the CLI and the acceptance suite.
// kinds: yes | no-fastpath | no-lambda | no-xi | spectrum | stationarity
struct FixtureSet {
  std::string ham_path;
  std::string state_path;
  std::string meta_path;  // JSON: lambda, xstar, a, b, expected verdict
};

FixtureSet make_fixture(const std::string& kind, const std::string& dir, int n, uint64_t seed);

}  // namespace sqlh
