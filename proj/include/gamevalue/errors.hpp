#pragma once

#include <stdexcept>
#include <string>

namespace gamevalue {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text or JSON (bad rational syntax, wrong value type, ...).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Structurally inconsistent sizes (coefficient row length, payoff tensor, ...).
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// A payoff below zero where a nonnegative game is required.
class NegativePayoffError : public Error {
 public:
  explicit NegativePayoffError(const std::string& what) : Error(what) {}
};

/// Out-of-range index or an argument outside an operation's domain.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

}  // namespace gamevalue
