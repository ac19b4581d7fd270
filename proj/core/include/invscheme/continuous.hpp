#pragma once

// Closed-form objects on the continuous side: the Schwarzian derivative,
// the Lie-list second-order ODE
//     y'' + 2 (y' + C0 y'^{3/2} + y'^2) / (x - y) = 0,
// their general solutions, the first integral linking the two equations and
// the invariants used by the continuous auto-Backlund transformation.
//
// Every power y'^{3/2} and root sqrt(y') is the real principal one, so those
// operations require y' > 0 and raise DomainError otherwise.

namespace invscheme {

/// Third-order jet (y, y', y'', y''') of a scalar function at abscissa x.
struct Jet3 {
  double x = 0.0;
  double y = 0.0;
  double y1 = 0.0;
  double y2 = 0.0;
  double y3 = 0.0;
};

/// Constants of y = 1/(c1 x + c2) + c3.
struct SchwarzSolutionParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

/// Constants of y = 1/(a0 (b0 - a0 x)) + (b0 - c0)/a0.
struct Ode2SolutionParams {
  double a0 = 1.0;
  double b0 = 0.0;
  double c0 = 0.0;
};

/// y'''/y' - 3/2 (y''/y')^2.
double schwarzian(const Jet3& j);

/// Analytic jet of 1/(c1 x + c2) + c3. c1 = 0 gives the constant branch with
/// y1 = 0, which every y'-dividing operation rejects.
Jet3 schwarz_solution(const SchwarzSolutionParams& p, double x);

/// Left-hand side of the second-order ODE; uses x, y, y1, y2 of the jet.
double ode2_residual(const Jet3& j, double c0);

/// Jet of the general ODE solution together with its square-root branch.
///
/// With y' = 1/(b0 - a0 x)^2 the principal root gives sqrt(y') = 1/|b0 - a0 x|,
/// and the formula solves the ODE with the constant c0 only where
/// b0 - a0 x < 0. On the other side it solves the ODE with -c0.
/// `c0_effective` is the constant the returned jet satisfies under principal
/// roots, so ode2_residual(jet, c0_effective) vanishes to rounding everywhere.
struct Ode2Point {
  Jet3 jet;
  bool principal_branch = false;
  double c0_effective = 0.0;
};

Ode2Point ode2_solution(const Ode2SolutionParams& p, double x);

/// a0 (a0 + c0 sqrt(a0) + 1); zero exactly when y = a0 x + b0 is a singular
/// solution of the ODE.
double singular_slope_residual(double a0, double c0);

/// ((y - x) y'' - 2 y' (1 + y')) / (2 y'^{3/2}); equals the ODE constant on
/// ODE solutions and is conserved by solutions of the Schwarz equation.
double ode2_first_integral(const Jet3& j);

/// Finite-difference check of d/dx[first integral] = multiplier * Schwarzian
/// with multiplier (y - x)/(2 sqrt(y')), on the Schwarz solution `p`.
/// Central differences with step h; the result is O(h^2).
double multiplier_identity_check(const SchwarzSolutionParams& p, double x,
                                 double h = 1e-4);

/// The two first integrals of the Schwarz equation that parametrize the
/// continuous auto-Backlund transformation:
///   i1 = y''/y'^{3/2},  i2 = y - 2 y'^2 / y''.
struct BacklundInvariants {
  double i1 = 0.0;
  double i2 = 0.0;
};

BacklundInvariants continuous_backlund_invariants(const Jet3& j);

/// i2(u) + alpha * i1(y).
double continuous_backlund_residual(const Jet3& ju, const Jet3& jy,
                                    double alpha);

}  // namespace invscheme
