#pragma once

#include <cmath>
#include <string>

#include "invscheme/errors.hpp"

namespace invscheme::detail {

// |den| < 1e-13 (1 + |num|) is treated as a pole of num/den.
inline constexpr double kPoleRelTol = 1e-13;

// Stencil denominators are compared against true zero only.
inline constexpr double kDegenerateAbsTol = 1e-300;

inline double pole_checked_div(double num, double den, const char* what) {
  if (!(std::abs(den) >= kPoleRelTol * (1.0 + std::abs(num)))) {
    throw PoleError(std::string("pole: ") + what);
  }
  return num / den;
}

inline double stencil_div(double num, double den, const char* what) {
  if (!(std::abs(den) > kDegenerateAbsTol)) {
    throw DegenerateStencilError(std::string("degenerate stencil: ") + what);
  }
  return num / den;
}

inline double branch_sqrt(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw BranchError(std::string("non-positive radicand: ") + what);
  }
  return std::sqrt(v);
}

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string("non-finite value: ") + what);
  }
}

}  // namespace invscheme::detail
