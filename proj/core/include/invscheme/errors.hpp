#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace invscheme {

enum class ErrorKind {
  domain,
  pole,
  branch,
  degenerate,
  index,
  convergence,
  insufficient_nodes,
  zero_integral,
  construction,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every numerical failure raised by the library. The kind is
/// stable and serialized into the CLI's machine-readable error records.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class TypedError : public Error {
 public:
  explicit TypedError(const std::string& what) : Error(K, what) {}
};

using DomainError = TypedError<ErrorKind::domain>;
using PoleError = TypedError<ErrorKind::pole>;
using BranchError = TypedError<ErrorKind::branch>;
using DegenerateStencilError = TypedError<ErrorKind::degenerate>;
using IndexError = TypedError<ErrorKind::index>;
using ConvergenceError = TypedError<ErrorKind::convergence>;
using InsufficientNodesError = TypedError<ErrorKind::insufficient_nodes>;
using ZeroIntegralError = TypedError<ErrorKind::zero_integral>;
using ConstructionError = TypedError<ErrorKind::construction>;

}  // namespace invscheme
