#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqlh/bitstring.hpp"
#include "sqlh/exact_value.hpp"

namespace sqlh {

enum class Family { N, Qplus, Q, C };

enum class FlagKind { Sqrt, Omega, Half };

struct Flag {
  FlagKind kind;
  unsigned width;  // q_# bits
  bool operator==(const Flag&) const = default;
};

// Descriptor of a binary number class: one of the four families with an
// ordered list of algebraic-characteristic flags prefixed to the payload.
struct ClassDescriptor {
  Family family = Family::N;
  unsigned p = 1;
  std::vector<Flag> flags;

  size_t payload_width() const;  // p / 2p / 2p+2 / 4p+4
  size_t flag_width() const;
  size_t total_width() const { return flag_width() + payload_width(); }
  std::vector<size_t> group_widths() const;  // for space-grouped printing

  std::string str() const;
  static ClassDescriptor parse(const std::string& family, unsigned p,
                               const std::string& flags_csv = "");

  static ClassDescriptor plain(Family f, unsigned p) { return {f, p, {}}; }
  ClassDescriptor with_flag(FlagKind k, unsigned w) const {
    ClassDescriptor c = *this;
    c.flags.push_back({k, w});
    return c;
  }

  bool operator==(const ClassDescriptor&) const = default;
};

// Exact binary layouts per the number-class definitions: flag bits, then sign
// bits, then numerator/denominator blocks, most significant bit first, each
// block exactly p bits zero-padded.
BitString encode(const ExactValue& value, const ClassDescriptor& cls);
ExactValue decode(const BitString& bits, const ClassDescriptor& cls);

// Exact amplitude-ratio representation with the widened output class:
//   N_p -> Q+_p (2p bits), Q+_p -> Q+_2p (4p), Q_p -> Q_2p (4p+2),
//   C_p -> C_{8p+2} (32p+12), C_p[omega] -> C_{8p+2}[omega] (32p+15).
std::pair<ExactValue, ClassDescriptor> ratio(const ExactValue& x, const ExactValue& y,
                                             const ClassDescriptor& cls);

// The eight-entry expansion table for powers of the primitive 8th root.
ExactValue omega_expand(int s);

enum class ArithOp { Add, Mul };
ExactValue arith(const ExactValue& a, const ExactValue& b, ArithOp op);

}  // namespace sqlh
