#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace altzeta {

enum class Errc {
  DegenerateNodes,
  ZeroNode,
  ArityError,
  DegreeError,
  ZeroLambda,
  SingularMatrix,
  CapExceeded,
  DomainError,
  PoleError,
  OracleUnstable,
  GridError,
  QuadratureError,
  ContFracBreakdown,
};

std::string_view to_string(Errc code);

/// Every precondition violation in the library is reported through this
/// exception; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace altzeta
