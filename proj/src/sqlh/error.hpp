#pragma once

#include <stdexcept>
#include <string>

namespace sqlh {

enum class Errc {
  OutOfRange,
  FlagMismatch,
  BadWidth,
  ZeroDenominator,
  DivideByZero,
  IncompatibleRadicals,
  CardinalityUnknown,
  NonClassicalGate,
  NonToffoliGate,
  BadClockWord,
  HadamardBudgetExceeded,
  CostExceeded,
  ZeroDenominatorAmplitude,
  SyntaxError,
  IndexOutOfRange,
  CapExceeded,
  InconsistentScale,
  RowSupportMismatch,
  ConvergenceFailure,
  ComplexEntries,
  ZeroAmplitudeVisited,
  BadManifest,
  Io,
  Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace sqlh
