#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace molien {

enum class ErrorKind {
  Parse,
  Validation,
  NotRational,
  MissingPowerMap,
  NonIntegerCoefficient,
  CapExceeded,
  ProfileTooShort,
  MissingGroup,
  UnknownGroup,
  MissingTable,
  Usage,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so that the CLI can
/// map it to an exit status and tests can match on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace molien
