#pragma once

#include <iosfwd>
#include <memory>

#include "sqlh/clock_ham.hpp"
#include "sqlh/sparse_ham.hpp"

namespace sqlh {

// On-disk Hamiltonian: header (qubits, locality, variant) followed by term
// records or explicit row records, every entry carried as a bit string in a
// declared number class.
struct HamFile {
  std::string variant = "terms";  // 4local / 3local / sparse6 / terms / entries
  int qubits = 0;
  int locality = 0;
  bool real = true;
  // exactly one of the two representations is populated
  std::vector<LocalTerm> terms;
  std::shared_ptr<oracle::DenseHam> entries;

  SparseHam to_sparse() const;

  static HamFile from_clock(const ClockHam& h, const std::string& variant);
  static HamFile from_dense(std::shared_ptr<oracle::DenseHam> m, const std::string& variant);

  void save(const std::string& path) const;
  static HamFile load(const std::string& path);

  std::string str() const;
  static HamFile parse(const std::string& text);
};

// Smallest class descriptor (from a fixed candidate ladder) that encodes all
// of the given values; used to write term/entry records.
ClassDescriptor fit_class(const std::vector<ExactValue>& values);

}  // namespace sqlh
