#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grassclique {

enum class ErrorKind {
  NotPrime,
  WrongDegree,
  NotMonic,
  NotPrimitive,
  NoDefaultAvailable,
  ExponentOutOfRange,
  ZeroVectorHasNoLog,
  MixedFields,
  ResourceCap,
  SingletonOrbit,
  SameOrbit,
  FixedNotClique,
  BadField,
  Parse,
  InvalidArgument,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::NotPrime: return "NotPrime";
  case ErrorKind::WrongDegree: return "WrongDegree";
  case ErrorKind::NotMonic: return "NotMonic";
  case ErrorKind::NotPrimitive: return "NotPrimitive";
  case ErrorKind::NoDefaultAvailable: return "NoDefaultAvailable";
  case ErrorKind::ExponentOutOfRange: return "ExponentOutOfRange";
  case ErrorKind::ZeroVectorHasNoLog: return "ZeroVectorHasNoLog";
  case ErrorKind::MixedFields: return "MixedFields";
  case ErrorKind::ResourceCap: return "ResourceCap";
  case ErrorKind::SingletonOrbit: return "SingletonOrbit";
  case ErrorKind::SameOrbit: return "SameOrbit";
  case ErrorKind::FixedNotClique: return "FixedNotClique";
  case ErrorKind::BadField: return "BadField";
  case ErrorKind::Parse: return "Parse";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (and tests) can branch on the cause without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace grassclique
