#include "invscheme/errors.hpp"

namespace invscheme {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::branch: return "branch";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::index: return "index";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::insufficient_nodes: return "insufficient_nodes";
    case ErrorKind::zero_integral: return "zero_integral";
    case ErrorKind::construction: return "construction";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

}  // namespace invscheme
