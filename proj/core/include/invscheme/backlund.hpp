#pragma once

// Discrete Backlund-type transformation between the four-point scheme in
// (x, u) and the Winternitz scheme (k = 4) in (t, y):
//   B1 = integral_bracket(x, u)         + alpha1 * W(y) = 0,
//   B2 = swapped_integral_bracket(x, u) + alpha2 * W(t) = 0,
// with W the three-point Winternitz integral.

#include <optional>
#include <string>

#include "invscheme/schemes.hpp"
#include "invscheme/stencil.hpp"

namespace invscheme {

struct AlphaPair {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
};

/// An (x, u) trajectory and a (t, y) pair; residuals are evaluated on the
/// shared index range.
struct PairedTrajectories {
  Trajectory xu;
  WinternitzPair ty;
};

double b1_residual(const Stencil3& s_xu, double y_m, double y0, double y_p,
                   double alpha1);

double b2_residual(const Stencil3& s_xu, double t_m, double t0, double t_p,
                   double alpha2);

/// Center indices n for which both x/u and t/y are known at n-1, n, n+1.
struct IndexRange {
  long first = 0;
  long last = -1;
  bool empty() const { return last < first; }
};
IndexRange shared_centers(const PairedTrajectories& p);

/// alpha1 = -bracket/W(y), alpha2 = -swapped bracket/W(t) at center index
/// `at` (default: the first shared center). ZeroIntegralError when a
/// Winternitz integral vanishes there.
AlphaPair fit_alphas(const PairedTrajectories& p, std::optional<long> at = {});

/// max |B1| and max |B2| over the shared centers.
ResidualPair backlund_max_residuals(const PairedTrajectories& p, const AlphaPair& a);

struct CompatibilityReport {
  std::string direction;  // "forward" or "backward"
  AlphaPair alphas;
  double max_residual = 0.0;     // max(seed_residual, scheme_residual)
  double seed_residual = 0.0;    // max |B1|, |B2| at the seed center
  double scheme_residual = 0.0;  // max residual of the constructed scheme
  double tol = 1e-8;
  bool compatible = false;
  std::size_t constructed = 0;  // nodes produced by the construction
  // forward only: integral_form_c / integral_form_ctilde means of the
  // constructed (x, u) side.
  std::optional<double> recovered_c;
  std::optional<double> recovered_ctilde;
  std::string note;    // why the construction stopped early, if it did
  Trajectory xu;      // forward: seed + constructed (x, u) nodes
  WinternitzPair ty;  // backward: seed + constructed (t, y) values
};

/// Builds (x, u) from three seed nodes by solving B1 = B2 = 0 for each next
/// node against the given (t, y) sequences, then reports the largest
/// four-point-scheme residual over every stencil together with the B1/B2
/// residual of the seed itself (nonzero when the alphas do not belong to the
/// seed). The seed must be index-aligned with `ty`. If a step has no real
/// solution the construction stops: with a consistent seed that is a
/// ConstructionError, otherwise the report is returned as incompatible.
CompatibilityReport compatibility_forward(const WinternitzPair& ty,
                                          const AlphaPair& alphas,
                                          const Trajectory& seed,
                                          const SchemeParams& p,
                                          const StepperConfig& cfg = {},
                                          double tol = 1e-8);

/// Builds (t, y) from three seed values of each by solving B1 = B2 = 0 for
/// the next values along the (x, u) trajectory, then reports the largest
/// Winternitz residual (k = 4) over every window, seeds included, and the
/// B1/B2 residual of the seed. Failure handling mirrors the forward case. Of the two
/// roots of the quadratic for the next value, the one away from the
/// reflection y_m + y - y_mm is taken.
CompatibilityReport compatibility_backward(const Trajectory& xu,
                                           const AlphaPair& alphas,
                                           const WinternitzPair& seed,
                                           double tol = 1e-8);

/// Solves W(a, b, z) = target for z; `reflection` selects the root farther
/// from it.
double solve_winternitz_integral(double a, double b, double target,
                                 double reflection);

}  // namespace invscheme
