#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpa {

// Base exception for every precondition or verification failure in the
// library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the text front ends; carries the byte offset of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at offset " + std::to_string(pos) + ")"), msg_(msg), pos_(pos) {}
  std::size_t position() const { return pos_; }
  // The message without the offset suffix.
  const std::string& message() const { return msg_; }

 private:
  std::string msg_;
  std::size_t pos_;
};

// Raised when an exact check that a construction depends on does not hold,
// e.g. a claimed inverse pair whose product is not the identity.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpa
