#pragma once

#include <stdexcept>
#include <string>

namespace qbailey {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an argument lies outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A truncated series does not carry enough guaranteed terms for the request.
class InsufficientOrder : public Error {
 public:
  using Error::Error;
};

/// A formal infinite product or sum fails to converge in the t-adic sense.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed or semantically invalid pair document.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string field = {}, int line = 0)
      : Error(what), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_ = 0;
};

}  // namespace qbailey
