#include "altzeta/error.hpp"

namespace altzeta {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DegenerateNodes: return "DegenerateNodes";
    case Errc::ZeroNode: return "ZeroNode";
    case Errc::ArityError: return "ArityError";
    case Errc::DegreeError: return "DegreeError";
    case Errc::ZeroLambda: return "ZeroLambda";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::DomainError: return "DomainError";
    case Errc::PoleError: return "PoleError";
    case Errc::OracleUnstable: return "OracleUnstable";
    case Errc::GridError: return "GridError";
    case Errc::QuadratureError: return "QuadratureError";
    case Errc::ContFracBreakdown: return "ContFracBreakdown";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace altzeta
