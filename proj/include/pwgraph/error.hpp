#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pwgraph {

enum class Errc {
  // graph-core
  SelfLoop,
  DuplicateEdge,
  Disconnected,
  IndexOutOfRange,
  TooSmall,
  LengthMismatch,
  ParseError,
  // spectral
  TooLarge,
  ConvergenceFailure,
  SingularPower,
  ZeroSignal,
  // spline
  SingularOperator,
  EmptyConstraintSet,
  DuplicateVertex,
  IllConditioned,
  NotAnInterpolant,
  // sampling
  EmptySet,
  NoFiniteConstant,
  InvalidSize,
  OverlappingClosures,
  InvalidLambda,
  OutOfRange,
  PreconditionViolated,
  // reconstruct
  InfeasibleBandwidth,
  GammaNotLessThanOne,
  EmptySampleSet,
  EmptyBand,
  // cli
  ConfigInvalid,
};

std::string_view to_string(Errc code) noexcept;

/// True for failures caused by floating-point limits rather than bad input.
bool is_numerical(Errc code) noexcept;

/// Library error carrying the originating module and a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(std::string_view module, Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
  Errc code_;
};

}  // namespace pwgraph
