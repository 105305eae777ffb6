#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace degseq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input or a violated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// perturb() would drive an entry below zero.
class UnderflowError : public PreconditionError {
 public:
  UnderflowError(int vertex, const std::string& what)
      : PreconditionError(what), vertex_(vertex) {}
  int vertex() const { return vertex_; }

 private:
  int vertex_;
};

// A probability or ratio whose denominator count is zero.
class UndefinedError : public Error {
 public:
  using Error::Error;
};

// Division by (nearly) zero inside a formula or operator.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// A lookup outside the populated table domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ResourceCapError : public Error {
 public:
  ResourceCapError(const std::string& what, std::size_t cap)
      : Error(what), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

}  // namespace degseq
