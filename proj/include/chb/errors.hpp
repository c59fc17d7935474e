#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chb {

enum class ErrorKind {
  NotInterior,
  FormMismatch,
  DegenerateGeodesic,
  UndefinedBusemann,
  BadParameter,
  NumericalDomainError,
  NotUnitaryForForm,
  InternalError,
  NumericalFailure,
  WrongClass,
  UnsupportedConversion,
  BracketFailure,
  DegenerateGroup,
  NonConvergence,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotInterior: return "NotInterior";
    case ErrorKind::FormMismatch: return "FormMismatch";
    case ErrorKind::DegenerateGeodesic: return "DegenerateGeodesic";
    case ErrorKind::UndefinedBusemann: return "UndefinedBusemann";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::NumericalDomainError: return "NumericalDomainError";
    case ErrorKind::NotUnitaryForForm: return "NotUnitaryForForm";
    case ErrorKind::InternalError: return "InternalError";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::WrongClass: return "WrongClass";
    case ErrorKind::UnsupportedConversion: return "UnsupportedConversion";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::DegenerateGroup: return "DegenerateGroup";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags so
/// that callers (and the CLI exit-code table) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace chb
