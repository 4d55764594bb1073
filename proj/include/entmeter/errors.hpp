#pragma once

#include <stdexcept>
#include <string>

namespace entmeter {

enum class ErrorKind {
  InvalidArgument,
  DegenerateTrace,
  ZeroNorm,
  NonConvergence,
  Unsupported,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base class for every failure raised by the library. The kind is what
/// callers (the CLI in particular) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::InvalidArgument, what) {}
};

/// Tr(A) vanishes (or |Tr A| = 1 for the order index), so a normalization
/// or a logarithm in the denominator is undefined.
class DegenerateTrace : public Error {
 public:
  explicit DegenerateTrace(const std::string& what)
      : Error(ErrorKind::DegenerateTrace, what) {}
};

class ZeroNorm : public Error {
 public:
  explicit ZeroNorm(const std::string& what)
      : Error(ErrorKind::ZeroNorm, what) {}
};

class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& what)
      : Error(ErrorKind::NonConvergence, what) {}
};

class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& what)
      : Error(ErrorKind::Unsupported, what) {}
};

}  // namespace entmeter
