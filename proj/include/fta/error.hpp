#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fta {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `offset()` is the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnknownSymbol : public ParseError {
 public:
  using ParseError::ParseError;
};

class ArityMismatch : public ParseError {
 public:
  using ParseError::ParseError;
};

class SignatureError : public Error {
 public:
  using Error::Error;
};

class InvalidPosition : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> defects);
  const std::vector<std::string>& defects() const noexcept { return defects_; }

 private:
  std::vector<std::string> defects_;
};

/// An exhaustive search would need more assignments than the configured cap.
class EnumerationBudgetExceeded : public Error {
 public:
  /// `required` saturates at UINT64_MAX.
  EnumerationBudgetExceeded(std::uint64_t required, std::uint64_t cap);
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

class NotEssential : public Error {
 public:
  using Error::Error;
};

class NotIndependent : public Error {
 public:
  using Error::Error;
};

class PremiseViolated : public Error {
 public:
  using Error::Error;
};

}  // namespace fta
