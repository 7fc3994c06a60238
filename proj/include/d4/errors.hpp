#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace d4 {

enum class ErrorKind {
  Parse,
  NonConvergence,
  Singular,
  OnWall,
  OutOfCube,
  NonGeneric,
  NotAVertex,
  InconsistentFiberRelation,
  DegenerateP0,
  DegenerateConfiguration,
  OffCurve,
  UndefinedFlag,
  BranchPointCollision,
  SingularFiber,
  BranchPointCoincidence,
  RootTrackingLost,
  IndexOutOfRange,
  Exhausted,
  NotParabolic,
  Overflow,
};

std::string_view to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace d4
