#pragma once

#include <cstdint>
#include <string>

namespace sqlh {

// splitmix64-based generator. All randomness in the toolkit flows from a
// manifest/config seed through named substreams; no ambient entropy.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  static uint64_t mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Derived deterministic substream (per trial, per fixture, ...).
  Rng substream(uint64_t id) const { return Rng(mix(state_ ^ mix(id))); }
  Rng substream(const std::string& name) const {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : name) h = (h ^ c) * 1099511628211ULL;
    return substream(h);
  }

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1))); }
  bool coin() { return next() & 1; }

  // uniform double in (0, 1]; 53 significant bits, never exactly zero
  double uniform01() {
    uint64_t u = next() >> 11;
    return (static_cast<double>(u) + 1.0) / 9007199254740993.0;
  }

 private:
  uint64_t state_;
};

}  // namespace sqlh
