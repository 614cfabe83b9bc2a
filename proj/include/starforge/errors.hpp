#pragma once

#include <stdexcept>
#include <string>

namespace starforge {

// Numeric values are shared with the C API status codes in starforge.h.
enum class ErrorCode : int {
  ZeroNotInvertible = 1,
  FormalMode = 2,
  TruncatedTail = 3,
  AlphaMismatch = 4,
  UnknownCoordinate = 5,
  DimensionMismatch = 6,
  NotIntegrable = 7,
  OrderRequired = 8,
  NotNormalizable = 9,
  NotSupportedForm = 10,
  Parse = 11,
  InfinitePrincipalPart = 12,
  InvalidArgument = 13,
  Undecidable = 14,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::string expected, const std::string& what)
      : Error(ErrorCode::Parse, what), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

}  // namespace starforge
