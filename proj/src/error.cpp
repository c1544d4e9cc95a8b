#include "pwgraph/error.hpp"

namespace pwgraph {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::Disconnected: return "Disconnected";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::TooSmall: return "TooSmall";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::TooLarge: return "TooLarge";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::SingularPower: return "SingularPower";
    case Errc::ZeroSignal: return "ZeroSignal";
    case Errc::SingularOperator: return "SingularOperator";
    case Errc::EmptyConstraintSet: return "EmptyConstraintSet";
    case Errc::DuplicateVertex: return "DuplicateVertex";
    case Errc::IllConditioned: return "IllConditioned";
    case Errc::NotAnInterpolant: return "NotAnInterpolant";
    case Errc::EmptySet: return "EmptySet";
    case Errc::NoFiniteConstant: return "NoFiniteConstant";
    case Errc::InvalidSize: return "InvalidSize";
    case Errc::OverlappingClosures: return "OverlappingClosures";
    case Errc::InvalidLambda: return "InvalidLambda";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::InfeasibleBandwidth: return "InfeasibleBandwidth";
    case Errc::GammaNotLessThanOne: return "GammaNotLessThanOne";
    case Errc::EmptySampleSet: return "EmptySampleSet";
    case Errc::EmptyBand: return "EmptyBand";
    case Errc::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

bool is_numerical(Errc code) noexcept {
  switch (code) {
    case Errc::ConvergenceFailure:
    case Errc::SingularPower:
    case Errc::SingularOperator:
    case Errc::IllConditioned:
    case Errc::NoFiniteConstant:
    case Errc::PreconditionViolated:
      return true;
    default:
      return false;
  }
}

Error::Error(std::string_view module, Errc code, const std::string& detail)
    : std::runtime_error(std::string(module) + "::" + std::string(to_string(code)) +
                         (detail.empty() ? std::string() : ": " + detail)),
      module_(module),
      code_(code) {}

}  // namespace pwgraph
