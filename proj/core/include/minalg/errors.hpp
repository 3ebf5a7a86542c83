#pragma once

#include <stdexcept>
#include <string>

namespace minalg {

enum class Err {
  ZeroElement,
  BadMode,
  FactorizationTooHard,
  DegreeOverflow,
  NotClosed,
  NotNilpotent,
  BadDimension,
  UnknownLabel,
  ParameterNotAllowed,
  DependentPencil,
  UnreachableSignature,
  UnsupportedMode,
  Parse,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& msg, int index = -1)
      : std::runtime_error(msg), kind_(kind), index_(index) {}

  Err kind() const { return kind_; }
  // Payload for NotClosed (failing generator, 1-based); -1 otherwise.
  int index() const { return index_; }

 private:
  Err kind_;
  int index_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg, int index = -1) {
  throw Error(kind, msg, index);
}

// Internal consistency check; failures indicate a bug, not bad input.
inline void check(bool cond, const char* what) {
  if (!cond) fail(Err::Internal, std::string("internal invariant violated: ") + what);
}

}  // namespace minalg
