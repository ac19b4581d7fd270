#pragma once

// Residuals and steppers for the three difference schemes:
//  * the two-step scheme for the second-order ODE (one scheme equation plus
//    the mixed cross-ratio mesh equation),
//  * the Winternitz cross-ratio scheme for the Schwarz equation,
//  * the four-point scheme obtained by differencing the integral form of the
//    two-step scheme.
// Also the closed-form trajectories of the first two and the recursion for
// the straight-line (singular) solutions.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "invscheme/stencil.hpp"

namespace invscheme {

struct ResidualPair {
  double first = 0.0;
  double second = 0.0;
  double max_abs() const;
};

enum class GuessMode { extrapolate, exact_seed };

struct StepperConfig {
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  GuessMode guess_mode = GuessMode::extrapolate;
};

void validate(const StepperConfig& cfg);

/// theta = sqrt(1+eps)/2 (|c| sqrt(eps) - sqrt(eps c^2 + 4)); the value that
/// makes the two-step scheme exact. Always negative, tends to -1 as eps -> 0.
double theta_exact(double c, double eps);

/// k = (eps c^2 + 4)/(eps + 1).
double k_from_c(double c, double eps);

/// How theta is chosen for a run. `unit` is the simplified unit-modulus
/// choice theta = -1 (the eps -> 0 limit of theta_exact).
enum class ThetaMode { exact, unit, value };

struct ThetaSpec {
  ThetaMode mode = ThetaMode::exact;
  double value = 1.0;
};

double resolve_theta(const ThetaSpec& t, double c, double eps);

/// SchemeParams with theta resolved and k = k_from_c(c, eps).
SchemeParams make_params(double c, double eps, const ThetaSpec& t = {});

// ---------------------------------------------------------------------------
// Two-step scheme

/// theta (sqrt(u_xb)/sqrt(r_m) - (x_p - u)/(x_m - u) sqrt(u_x)/sqrt(r_p))
///   + c sqrt(1+eps) (x - x_m) u_xb / r_m,
/// with u_xb, u_x the backward and forward slopes, r_m = (x - u_m)(x_m - u)
/// and r_p = (x - u_p)(x_p - u). BranchError on a non-positive radicand.
double ode2_scheme_residual(const Stencil3& s, const SchemeParams& p);

/// (forward mixed cross-ratio - eps, backward mixed cross-ratio - eps).
ResidualPair ode2_mesh_residuals(const Stencil3& s, double eps);

/// Solves {forward mesh equation, scheme equation} for the next node by
/// damped Newton. Without a guess the next node is predicted by a linear
/// step in x and the mesh equation for u.
Node ode2_step(const Node& prev, const Node& cur, const SchemeParams& p,
               const StepperConfig& cfg, std::optional<Node> guess = {});

struct Ode2ExactParams;

/// Extends `seed` (at least two nodes) by `steps` nodes. In extrapolate mode
/// three or more known nodes give a fractional-linear prediction (the exact
/// solutions are Mobius images of an arithmetic progression); exact_seed
/// mode takes the prediction from the closed form `exact`, which must then
/// be supplied.
Trajectory ode2_solve(const Trajectory& seed, std::size_t steps,
                      const SchemeParams& p, const StepperConfig& cfg,
                      const Ode2ExactParams* exact = nullptr);

// ---------------------------------------------------------------------------
// Closed-form solution of the two-step scheme (the c^2 = 4 family)

struct Ode2ExactParams {
  double a = 1.0;
  double b = 2.0;
  double c = 2.0;
  double eps = 0.01;
  double rho = 1.0;
};

/// Requires a > 0 (for a < 0 the formula solves the scheme with -theta),
/// eps > 0 and c^2 = 4.
void validate(const Ode2ExactParams& p);

/// rho + n at which u has its pole: sqrt((1+eps)/eps).
double ode2_exact_u_pole(const Ode2ExactParams& p);

/// x_n = s sqrt(1+eps)/(a sqrt(eps)(rho+n)) + (b - s)/a, s = sign(c), and
/// u_n = 1/(a(b - a x_n)) + (b - c)/a.
Node ode2_exact_node(const Ode2ExactParams& p, long n);

/// u_n written directly in n:
/// s sqrt(eps)(rho+n) / (a (sqrt(eps)(rho+n) - sqrt(1+eps))) + (b - c)/a.
double ode2_exact_u_direct(const Ode2ExactParams& p, long n);

/// Nodes n_first..n_last. Throws PoleError if rho + n hits or crosses 0 or
/// the u pole within the range.
Trajectory ode2_exact_trajectory(const Ode2ExactParams& p, long n_first,
                                 long n_last);

// ---------------------------------------------------------------------------
// Winternitz scheme

using Values4 = std::array<double, 4>;

/// (cross_ratio_same(y) - k, cross_ratio_same(t) - k).
ResidualPair winternitz_residuals(const Values4& y, const Values4& t, double k);

/// Solves cross_ratio_same(y_m, y0, y_p, y_pp) = k for y_pp.
double winternitz_step(double y_m, double y0, double y_p, double k);

/// Extends a sequence (at least three values) by `steps` Winternitz steps.
std::vector<double> winternitz_solve(std::vector<double> seed, std::size_t steps,
                                     double k);

struct WinternitzExactParams {
  double c1 = 1.0, c2 = 0.0, c3 = 0.0;
  double c4 = 1.0, c5 = 0.0, c6 = 0.0;
};

/// Both sequences share the index range n0, n0+1, ...
struct WinternitzPair {
  long n0 = 0;
  std::vector<double> t;
  std::vector<double> y;
};

/// y_n = 1/(c1 n + c2) + c3, t_n = 1/(c4 n + c5) + c6 for n_first..n_last.
/// c1 = 0 or c4 = 0 gives a constant sequence, on which the cross-ratio is
/// undefined; that is reported as DegenerateStencilError.
WinternitzPair winternitz_exact_trajectory(const WinternitzExactParams& p,
                                           long n_first, long n_last);

/// 4/(c - a) - 1/(c - b) - 1/(b - a): first integral of the k = 4 scheme.
double winternitz_integral(double a_m, double a0, double a_p);

// ---------------------------------------------------------------------------
// Four-point scheme from the integral form

/// Bracket of the integral form solved for c:
///   (x - u_m)(x_m - u)/(u - u_m) * (sqrt(u_xb)/sqrt(r_m)
///                                   - (x_p - u)/(x_m - u) sqrt(u_x)/sqrt(r_p)).
/// Constant along solutions of the two-step scheme.
double integral_bracket(const Stencil3& s);

/// integral_bracket with the roles of x and u exchanged.
double swapped_integral_bracket(const Stencil3& s);

/// (bracket(front) - bracket(back), swapped(front) - swapped(back)) - the
/// forward difference of both integral brackets. The first component
/// approximates the Schwarz equation, the second is the mesh equation.
ResidualPair derived_scheme_residuals(const Stencil4& s);

/// Next node (x_pp, u_pp) with integral_bracket = target_u and
/// swapped_integral_bracket = target_x on the stencil (prev, cur, next).
Node bracket_step(const Node& prev, const Node& cur, double target_u,
                  double target_x, const StepperConfig& cfg,
                  std::optional<Node> guess = {});

/// One step of the four-point scheme: keeps both brackets of `s` constant.
Node derived_step(const Stencil3& s, const StepperConfig& cfg,
                  std::optional<Node> guess = {});

/// Extends `seed` (at least three nodes) by `steps` four-point steps.
Trajectory derived_solve(const Trajectory& seed, std::size_t steps,
                         const StepperConfig& cfg);

// ---------------------------------------------------------------------------
// Straight-line solutions u = a x + b

/// Next abscissa of the straight-line solution: the root of the forward mesh
/// equation restricted to u = a x + b that continues smoothly from eps -> 0,
///   x_p - x = eps w ((1 - a) - S) / (2 a (1 + eps)),
///   w = (1 - a) x - b,  S = sqrt((1 + a)^2 + 4 a / eps).
double singular_recursion_step(double x, double a, double b, double eps);

/// The step above as an affine map x -> slope x + offset.
struct AffineMap {
  double slope = 1.0;
  double offset = 0.0;
};
AffineMap singular_recursion_map(double a, double b, double eps);

Trajectory singular_trajectory(double x0, double a, double b, double eps,
                               long n0, std::size_t count);

/// Scheme equation evaluated on three consecutive nodes x0, x1, x2 of the
/// straight-line trajectory (x1, x2 from singular_recursion_step). Zero
/// exactly when the line also solves the scheme equation at this eps.
double singular_consistency_residual(double a, double c, double eps,
                                     const ThetaSpec& theta, double b = 1.0,
                                     double x0 = 0.3);

struct SingularRoot {
  double eps_lo = 0.0;
  double eps_hi = 0.0;
  double eps = 0.0;
  double residual = 0.0;
};

/// Scans eps over `samples` equispaced points of (eps_min, eps_max] for a sign
/// change of singular_consistency_residual and refines it by bisection.
/// Points where the residual is undefined are skipped. Empty when no sign
/// change is found.
std::optional<SingularRoot> find_singular_eps(double a, double c,
                                              const ThetaSpec& theta,
                                              double b = 1.0, double x0 = 0.3,
                                              double eps_min = 0.0,
                                              double eps_max = 1.0,
                                              int samples = 200);

// ---------------------------------------------------------------------------
// Convergence of non-exact theta

struct ConvergencePoint {
  double eps = 0.0;
  double theta = 0.0;
  double error = 0.0;     // max |u_n - u(x_n)| against the continuous solution
  double max_step = 0.0;  // max |x_{n+1} - x_n|
  std::size_t steps = 0;
};

struct ConvergenceStudy {
  std::vector<ConvergencePoint> points;
  std::vector<double> eps_orders;   // log2-type orders between successive eps
  std::vector<double> step_orders;  // same, measured against max_step
  bool strictly_decreasing = false;
};

/// Runs the two-step scheme with the given theta from two nodes of the exact
/// solution (a, b, c) placed at x_start, until x passes x_end, and compares the
/// nodes with the continuous solution u = 1/(a(b - a x)) + (b - c)/a.
ConvergenceStudy theta_convergence_study(double a, double b, double c,
                                         const std::vector<double>& eps_values,
                                         double x_start, double x_end,
                                         const ThetaSpec& theta,
                                         const StepperConfig& cfg = {});

}  // namespace invscheme
