#include "invscheme/continuous.hpp"

#include <cmath>

#include "guards.hpp"
#include "invscheme/errors.hpp"

namespace invscheme {

namespace {

void require_positive_slope(double y1, const char* what) {
  if (!(y1 > 0.0)) {
    throw DomainError(std::string(what) + " requires y' > 0");
  }
}

}  // namespace

double schwarzian(const Jet3& j) {
  if (j.y1 == 0.0) throw DomainError("schwarzian: y' = 0");
  const double r = j.y2 / j.y1;
  return j.y3 / j.y1 - 1.5 * r * r;
}

Jet3 schwarz_solution(const SchwarzSolutionParams& p, double x) {
  if (p.c1 == 0.0 && p.c2 == 0.0) {
    throw DomainError("schwarz_solution: c1 and c2 both zero");
  }
  const double e = p.c1 * x + p.c2;
  const double inv = detail::pole_checked_div(1.0, e, "c1 x + c2 = 0");
  Jet3 j;
  j.x = x;
  j.y = inv + p.c3;
  // d^k/dx^k (c1 x + c2)^-1 = (-1)^k k! c1^k e^-(k+1)
  j.y1 = -p.c1 * inv * inv;
  j.y2 = 2.0 * p.c1 * p.c1 * inv * inv * inv;
  j.y3 = -6.0 * p.c1 * p.c1 * p.c1 * inv * inv * inv * inv;
  return j;
}

double ode2_residual(const Jet3& j, double c0) {
  if (j.y1 < 0.0) throw DomainError("ode2_residual: y' < 0");
  if (j.x == j.y) throw DomainError("ode2_residual: x = y");
  const double s = std::sqrt(j.y1);
  return j.y2 + 2.0 * (j.y1 + c0 * j.y1 * s + j.y1 * j.y1) / (j.x - j.y);
}

Ode2Point ode2_solution(const Ode2SolutionParams& p, double x) {
  if (p.a0 == 0.0) throw DomainError("ode2_solution: a0 = 0");
  const double d = p.b0 - p.a0 * x;
  const double inv = detail::pole_checked_div(1.0, d, "b0 - a0 x = 0");
  Ode2Point out;
  out.jet.x = x;
  out.jet.y = inv / p.a0 + (p.b0 - p.c0) / p.a0;
  out.jet.y1 = inv * inv;
  out.jet.y2 = 2.0 * p.a0 * inv * inv * inv;
  out.jet.y3 = 6.0 * p.a0 * p.a0 * inv * inv * inv * inv;
  // sqrt(y') = 1/|d|; the printed constant needs sqrt(y') = -1/d.
  out.principal_branch = d < 0.0;
  out.c0_effective = out.principal_branch ? p.c0 : -p.c0;
  return out;
}

double singular_slope_residual(double a0, double c0) {
  if (a0 < 0.0) throw DomainError("singular_slope_residual: a0 < 0");
  return a0 * (a0 + c0 * std::sqrt(a0) + 1.0);
}

double ode2_first_integral(const Jet3& j) {
  require_positive_slope(j.y1, "ode2_first_integral");
  const double s = std::sqrt(j.y1);
  return ((j.y - j.x) * j.y2 - 2.0 * j.y1 * (1.0 + j.y1)) / (2.0 * j.y1 * s);
}

double multiplier_identity_check(const SchwarzSolutionParams& p, double x,
                                 double h) {
  if (!(h > 0.0)) throw DomainError("multiplier_identity_check: h <= 0");
  const Jet3 lo = schwarz_solution(p, x - h);
  const Jet3 mid = schwarz_solution(p, x);
  const Jet3 hi = schwarz_solution(p, x + h);
  require_positive_slope(lo.y1, "multiplier_identity_check");
  require_positive_slope(mid.y1, "multiplier_identity_check");
  require_positive_slope(hi.y1, "multiplier_identity_check");
  const double dfi = (ode2_first_integral(hi) - ode2_first_integral(lo)) / (2.0 * h);
  const double multiplier = (mid.y - mid.x) / (2.0 * std::sqrt(mid.y1));
  return std::abs(dfi - multiplier * schwarzian(mid));
}

BacklundInvariants continuous_backlund_invariants(const Jet3& j) {
  require_positive_slope(j.y1, "continuous_backlund_invariants");
  if (j.y2 == 0.0) throw DomainError("continuous_backlund_invariants: y'' = 0");
  BacklundInvariants out;
  out.i1 = j.y2 / (j.y1 * std::sqrt(j.y1));
  out.i2 = j.y - 2.0 * j.y1 * j.y1 / j.y2;
  return out;
}

double continuous_backlund_residual(const Jet3& ju, const Jet3& jy,
                                    double alpha) {
  return continuous_backlund_invariants(ju).i2 +
         alpha * continuous_backlund_invariants(jy).i1;
}

}  // namespace invscheme
