#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqlh/bigint.hpp"
#include "sqlh/error.hpp"

namespace sqlh {

// Ordered bit sequence, most significant first. bit(0) is the leftmost bit
// (qubit 1 in the 1-based conventions of the gate formats).
class BitString {
 public:
  BitString() = default;
  explicit BitString(size_t n) : bits_(n, 0) {}
  BitString(std::initializer_list<uint8_t> b) : bits_(b) {}

  static BitString parse(const std::string& s);        // "0110", spaces ignored
  static BitString from_index(uint64_t idx, size_t n);  // leftmost bit = msb
  static BitString zeros(size_t n) { return BitString(n); }

  size_t size() const { return bits_.size(); }
  uint8_t bit(size_t i) const { return bits_.at(i); }
  void set(size_t i, uint8_t v) { bits_.at(i) = v ? 1 : 0; }
  void flip(size_t i) { bits_.at(i) ^= 1; }

  uint64_t index() const;  // value as an integer, leftmost bit most significant
  BitString slice(size_t from, size_t len) const;
  BitString concat(const BitString& o) const;
  void append(const BitString& o);
  void push_back(uint8_t b) { bits_.push_back(b ? 1 : 0); }

  BigInt to_uint() const;
  static BitString from_uint(const BigInt& v, size_t width);  // OutOfRange if it does not fit

  std::string str() const;
  // Grouped rendering: group widths in order, single space between groups.
  std::string str_grouped(const std::vector<size_t>& groups) const;

  bool operator==(const BitString& o) const = default;
  bool operator<(const BitString& o) const { return bits_ < o.bits_; }

  const std::vector<uint8_t>& raw() const { return bits_; }

 private:
  std::vector<uint8_t> bits_;
};

}  // namespace sqlh
