#include "sqlh/bitstring.hpp"

namespace sqlh {

BitString BitString::parse(const std::string& s) {
  BitString b;
  for (char c : s) {
    if (c == '0') b.bits_.push_back(0);
    else if (c == '1') b.bits_.push_back(1);
    else if (c == ' ' || c == '\t' || c == '_') continue;
    else fail(Errc::SyntaxError, std::string("bad character '") + c + "' in bit string");
  }
  return b;
}

BitString BitString::from_index(uint64_t idx, size_t n) {
  BitString b(n);
  for (size_t i = 0; i < n; ++i) b.bits_[i] = (idx >> (n - 1 - i)) & 1;
  return b;
}

uint64_t BitString::index() const {
  uint64_t v = 0;
  for (uint8_t b : bits_) v = (v << 1) | b;
  return v;
}

BitString BitString::slice(size_t from, size_t len) const {
  if (from + len > bits_.size()) fail(Errc::BadWidth, "slice outside bit string");
  BitString b;
  b.bits_.assign(bits_.begin() + from, bits_.begin() + from + len);
  return b;
}

BitString BitString::concat(const BitString& o) const {
  BitString b = *this;
  b.append(o);
  return b;
}

void BitString::append(const BitString& o) {
  bits_.insert(bits_.end(), o.bits_.begin(), o.bits_.end());
}

BigInt BitString::to_uint() const {
  BigInt v = 0;
  for (uint8_t b : bits_) { v <<= 1; v += b; }
  return v;
}

BitString BitString::from_uint(const BigInt& v, size_t width) {
  if (v < 0) fail(Errc::OutOfRange, "negative magnitude");
  if (bit_width(v) > width)
    fail(Errc::OutOfRange, v.str() + " does not fit in " + std::to_string(width) + " bits");
  BitString b(width);
  BigInt x = v;
  for (size_t i = width; i-- > 0;) {
    b.bits_[i] = static_cast<uint8_t>(x & 1);
    x >>= 1;
  }
  return b;
}

std::string BitString::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (uint8_t b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::string BitString::str_grouped(const std::vector<size_t>& groups) const {
  std::string s;
  size_t pos = 0;
  for (size_t g : groups) {
    if (!s.empty()) s.push_back(' ');
    for (size_t i = 0; i < g; ++i) s.push_back(bits_.at(pos++) ? '1' : '0');
  }
  while (pos < bits_.size()) s.push_back(bits_.at(pos++) ? '1' : '0');
  return s;
}

}  // namespace sqlh
