#ifndef TOPOGRP_ERROR_HPP_
#define TOPOGRP_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace topo {

enum class ErrorCode {
  UnknownKind,
  OrderCapExceeded,
  BadParameter,
  ParseError,
  NotAHomomorphism,
  ParentMismatch,
  UnsupportedVariety,
  NotNormal,
  NoFip,
  IdentityNotAllowed,
  TrivialGroup,
  NotAFilter,
  CertificateFailure,
};

std::string_view to_string(ErrorCode code);

// Every failure the library raises. `witness` carries the concrete
// elements or subgroup indices that demonstrate the failure, when any.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::vector<int> witness = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const { return code_; }
  const std::vector<int>& witness() const { return witness_; }

 private:
  ErrorCode code_;
  std::vector<int> witness_;
};

// Outcome of a structural check. A failed report always names a witness.
struct ValidationReport {
  bool passed = true;
  std::string reason;
  std::vector<int> witness;

  explicit operator bool() const { return passed; }

  static ValidationReport pass() { return {}; }
  static ValidationReport fail(std::string reason, std::vector<int> witness) {
    return {false, std::move(reason), std::move(witness)};
  }
};

}  // namespace topo

#endif  // TOPOGRP_ERROR_HPP_
