/// @file
/// Exceptions thrown by the analysis library.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace iradic {

/// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model text. Carries the byte offset when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg, std::size_t position = 0)
      : Error(position ? msg + " (at byte " + std::to_string(position) + ")" : msg),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// An id that does not resolve to anything in the model.
class ReferenceError : public Error {
 public:
  ReferenceError(const std::string& msg, std::string id) : Error(msg), id_(std::move(id)) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

/// Invalid input to an operation (bad parameters, violated precondition).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Analysis could not complete within configured bounds.
class ResourceLimitError : public Error {
 public:
  ResourceLimitError(const std::string& msg, std::int64_t cap)
      : Error(msg + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::int64_t cap() const { return cap_; }

 private:
  std::int64_t cap_;
};

}  // namespace iradic
