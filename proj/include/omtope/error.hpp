#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace omtope {

enum class ErrorKind {
  dimension,
  domain,
  not_a_tope,
  degenerate_dual,
  rank_collapse,
  degenerate_configuration,
  format,
  non_uniform_unsupported,
  poisoned_circuit_set,
  out_of_validity,
  precondition,
  too_large,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::domain: return "domain";
    case ErrorKind::not_a_tope: return "not-a-tope";
    case ErrorKind::degenerate_dual: return "degenerate-dual";
    case ErrorKind::rank_collapse: return "rank-collapse";
    case ErrorKind::degenerate_configuration: return "degenerate-configuration";
    case ErrorKind::format: return "format";
    case ErrorKind::non_uniform_unsupported: return "non-uniform-unsupported";
    case ErrorKind::poisoned_circuit_set: return "poisoned-circuit-set";
    case ErrorKind::out_of_validity: return "out-of-validity";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::too_large: return "too-large";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The text without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) throw Error(kind, what);
}

}  // namespace omtope
