#include "invscheme/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "guards.hpp"
#include "invscheme/errors.hpp"
#include "invscheme/newton.hpp"

namespace invscheme {

using detail::branch_sqrt;
using detail::pole_checked_div;
using detail::stencil_div;

double ResidualPair::max_abs() const {
  return std::max(std::abs(first), std::abs(second));
}

void validate(const StepperConfig& cfg) {
  if (!(cfg.newton_tol > 0.0)) throw DomainError("newton_tol must be positive");
  if (cfg.newton_max_iter < 1) throw DomainError("newton_max_iter must be >= 1");
}

double theta_exact(double c, double eps) {
  if (!(eps > 0.0)) throw DomainError("theta_exact: eps must be positive");
  return std::sqrt(1.0 + eps) / 2.0 *
         (std::abs(c) * std::sqrt(eps) - std::sqrt(eps * c * c + 4.0));
}

double k_from_c(double c, double eps) {
  if (!(eps > -1.0)) throw DomainError("k_from_c: eps must exceed -1");
  return (eps * c * c + 4.0) / (eps + 1.0);
}

double resolve_theta(const ThetaSpec& t, double c, double eps) {
  switch (t.mode) {
    case ThetaMode::exact: return theta_exact(c, eps);
    case ThetaMode::unit: return -1.0;
    case ThetaMode::value: return t.value;
  }
  return t.value;
}

SchemeParams make_params(double c, double eps, const ThetaSpec& t) {
  SchemeParams p{c, eps, resolve_theta(t, c, eps), k_from_c(c, eps)};
  validate(p);
  return p;
}

// ---------------------------------------------------------------------------
// Two-step scheme

namespace {

double scheme_terms(const Stencil3& s, const SchemeParams& p, double& scale) {
  const double dx_m = s.x0 - s.x_m;
  const double dx_p = s.x_p - s.x0;
  const double slope_m = stencil_div(s.u0 - s.u_m, dx_m, "x = x_m");
  const double slope_p = stencil_div(s.u_p - s.u0, dx_p, "x_p = x");
  const double r_m = (s.x0 - s.u_m) * (s.x_m - s.u0);
  const double r_p = (s.x0 - s.u_p) * (s.x_p - s.u0);
  const double ratio = stencil_div(s.x_p - s.u0, s.x_m - s.u0, "x_m = u");
  const double back = branch_sqrt(slope_m, "backward slope") /
                      branch_sqrt(r_m, "(x - u_m)(x_m - u)");
  const double fwd = ratio * branch_sqrt(slope_p, "forward slope") /
                     branch_sqrt(r_p, "(x - u_p)(x_p - u)");
  const double tail =
      stencil_div(p.c * std::sqrt(1.0 + p.eps) * dx_m * slope_m, r_m, "r_m = 0");
  scale = std::max({std::abs(p.theta * back), std::abs(p.theta * fwd),
                    std::abs(tail)});
  return p.theta * (back - fwd) + tail;
}

// u_p on the forward mesh equation for a given x_p.
double mesh_u(double x, double u, double x_p, double eps) {
  const double h = x_p - x;
  return stencil_div(h * u + eps * x * (x_p - u), h + eps * (x_p - u),
                     "mesh prediction");
}

// Fractional-linear continuation of the last three nodes, else linear.
Node predict(const std::vector<Node>& pts, double k) {
  const std::size_t n = pts.size();
  const Node& c = pts[n - 1];
  const Node& b = pts[n - 2];
  if (n >= 3) {
    const Node& a = pts[n - 3];
    try {
      Node g{winternitz_step(a.x, b.x, c.x, k), winternitz_step(a.u, b.u, c.u, k)};
      const bool same_dir = (g.x - c.x) * (c.x - b.x) > 0.0;
      if (std::isfinite(g.x) && std::isfinite(g.u) && same_dir) return g;
    } catch (const Error&) {
    }
  }
  return {2.0 * c.x - b.x, 2.0 * c.u - b.u};
}

NewtonOptions newton_options(const StepperConfig& cfg) {
  validate(cfg);
  NewtonOptions opt;
  opt.tol = cfg.newton_tol;
  opt.max_iter = cfg.newton_max_iter;
  return opt;
}

}  // namespace

double ode2_scheme_residual(const Stencil3& s, const SchemeParams& p) {
  double scale = 0.0;
  return scheme_terms(s, p, scale);
}

ResidualPair ode2_mesh_residuals(const Stencil3& s, double eps) {
  return {mixed_ratio(s.x0, s.u0, s.x_p, s.u_p) - eps,
          mixed_ratio(s.x_m, s.u_m, s.x0, s.u0) - eps};
}

Node ode2_step(const Node& prev, const Node& cur, const SchemeParams& p,
               const StepperConfig& cfg, std::optional<Node> guess) {
  validate(p);
  if (cur.x == cur.u || prev.x == prev.u) {
    throw DegenerateStencilError("ode2_step: node with x = u");
  }
  if (!guess) {
    const double x_p = 2.0 * cur.x - prev.x;
    guess = Node{x_p, mesh_u(cur.x, cur.u, x_p, p.eps)};
  }
  const System2 f = [&](const Vec2& z, Vec2& scale) {
    const Stencil3 s{prev.x, cur.x, z[0], prev.u, cur.u, z[1]};
    require_monotone(s);
    scale[0] = 1.0;
    const double mesh = mixed_ratio(cur.x, cur.u, z[0], z[1]) - p.eps;
    const double scheme = scheme_terms(s, p, scale[1]);
    return Vec2{mesh, scheme};
  };
  const NewtonResult r = newton_solve(f, {guess->x, guess->u}, newton_options(cfg));
  return {r.z[0], r.z[1]};
}

Trajectory ode2_solve(const Trajectory& seed, std::size_t steps,
                      const SchemeParams& p, const StepperConfig& cfg,
                      const Ode2ExactParams* exact) {
  if (seed.size() < 2) throw InsufficientNodesError("ode2_solve: need two seed nodes");
  if (cfg.guess_mode == GuessMode::exact_seed && exact == nullptr) {
    throw DomainError("ode2_solve: exact_seed mode needs the closed-form constants");
  }
  std::vector<Node> pts = seed.points();
  pts.reserve(pts.size() + steps);
  for (std::size_t i = 0; i < steps; ++i) {
    std::optional<Node> guess;
    if (cfg.guess_mode == GuessMode::exact_seed) {
      guess = ode2_exact_node(*exact, seed.n0() + static_cast<long>(pts.size()));
    } else if (pts.size() >= 3) {
      guess = predict(pts, p.k);
    }
    pts.push_back(ode2_step(pts[pts.size() - 2], pts.back(), p, cfg, guess));
  }
  return Trajectory(seed.n0(), std::move(pts));
}

// ---------------------------------------------------------------------------
// Closed-form solution

void validate(const Ode2ExactParams& p) {
  if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.c) ||
      !std::isfinite(p.eps) || !std::isfinite(p.rho)) {
    throw DomainError("exact solution constants must be finite");
  }
  if (!(p.a > 0.0)) {
    throw DomainError("exact solution needs a > 0 (a < 0 solves the scheme with -theta)");
  }
  if (!(p.eps > 0.0)) throw DomainError("eps must be positive");
  if (std::abs(p.c * p.c - 4.0) > 1e-12) {
    throw DomainError("exact solution family needs c^2 = 4");
  }
}

double ode2_exact_u_pole(const Ode2ExactParams& p) {
  return std::sqrt((1.0 + p.eps) / p.eps);
}

Node ode2_exact_node(const Ode2ExactParams& p, long n) {
  validate(p);
  const double s = p.c > 0.0 ? 1.0 : -1.0;
  const double r = p.rho + static_cast<double>(n);
  const double num = s * std::sqrt(1.0 + p.eps);
  Node out;
  out.x = pole_checked_div(num, p.a * std::sqrt(p.eps) * r, "rho + n = 0") +
          (p.b - s) / p.a;
  out.u = pole_checked_div(1.0, p.a * (p.b - p.a * out.x), "b - a x_n = 0") +
          (p.b - p.c) / p.a;
  return out;
}

double ode2_exact_u_direct(const Ode2ExactParams& p, long n) {
  validate(p);
  const double s = p.c > 0.0 ? 1.0 : -1.0;
  const double r = p.rho + static_cast<double>(n);
  const double se = std::sqrt(p.eps);
  return pole_checked_div(s * se * r, p.a * (se * r - std::sqrt(1.0 + p.eps)),
                          "u pole") +
         (p.b - p.c) / p.a;
}

Trajectory ode2_exact_trajectory(const Ode2ExactParams& p, long n_first,
                                 long n_last) {
  validate(p);
  if (n_last < n_first) throw IndexError("empty index range");
  const double crit = ode2_exact_u_pole(p);
  auto region = [&](double r) { return r < 0.0 ? 0 : (r < crit ? 1 : 2); };
  const int first_region = region(p.rho + static_cast<double>(n_first));
  std::vector<Node> pts;
  pts.reserve(static_cast<std::size_t>(n_last - n_first + 1));
  for (long n = n_first; n <= n_last; ++n) {
    if (region(p.rho + static_cast<double>(n)) != first_region) {
      throw PoleError("index range crosses a pole of the exact solution at n = " +
                      std::to_string(n));
    }
    pts.push_back(ode2_exact_node(p, n));
  }
  return Trajectory(n_first, std::move(pts));
}

// ---------------------------------------------------------------------------
// Winternitz scheme

ResidualPair winternitz_residuals(const Values4& y, const Values4& t, double k) {
  return {cross_ratio_same(y[0], y[1], y[2], y[3]) - k,
          cross_ratio_same(t[0], t[1], t[2], t[3]) - k};
}

double winternitz_step(double y_m, double y0, double y_p, double k) {
  // (d - y0)(y_p - y_m) = k (d - y_p)(y0 - y_m) is linear in d.
  const double span = y_p - y_m;
  const double left = y0 - y_m;
  if (left == 0.0) throw DegenerateStencilError("winternitz_step: y0 = y_m");
  const double coef = span - k * left;
  return stencil_div(y0 * span - k * y_p * left, coef, "coefficient of y_pp");
}

std::vector<double> winternitz_solve(std::vector<double> seed, std::size_t steps,
                                     double k) {
  if (seed.size() < 3) throw InsufficientNodesError("winternitz_solve: need three values");
  seed.reserve(seed.size() + steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const std::size_t n = seed.size();
    seed.push_back(winternitz_step(seed[n - 3], seed[n - 2], seed[n - 1], k));
  }
  return seed;
}

WinternitzPair winternitz_exact_trajectory(const WinternitzExactParams& p,
                                           long n_first, long n_last) {
  if ((p.c1 == 0.0 && p.c2 == 0.0) || (p.c4 == 0.0 && p.c5 == 0.0)) {
    throw DomainError("winternitz solution: (c1, c2) or (c4, c5) is zero");
  }
  if (p.c1 == 0.0 || p.c4 == 0.0) {
    throw DegenerateStencilError("winternitz solution: constant sequence");
  }
  if (n_last < n_first) throw IndexError("empty index range");
  WinternitzPair out;
  out.n0 = n_first;
  for (long n = n_first; n <= n_last; ++n) {
    const double dn = static_cast<double>(n);
    out.y.push_back(pole_checked_div(1.0, p.c1 * dn + p.c2, "c1 n + c2 = 0") + p.c3);
    out.t.push_back(pole_checked_div(1.0, p.c4 * dn + p.c5, "c4 n + c5 = 0") + p.c6);
  }
  return out;
}

double winternitz_integral(double a_m, double a0, double a_p) {
  return stencil_div(4.0, a_p - a_m, "y_p = y_m") -
         stencil_div(1.0, a_p - a0, "y_p = y") -
         stencil_div(1.0, a0 - a_m, "y = y_m");
}

// ---------------------------------------------------------------------------
// Four-point scheme

namespace {

double bracket_terms(const Stencil3& s, double& scale) {
  const double r_m = (s.x0 - s.u_m) * (s.x_m - s.u0);
  const double r_p = (s.x0 - s.u_p) * (s.x_p - s.u0);
  const double slope_m = stencil_div(s.u0 - s.u_m, s.x0 - s.x_m, "x = x_m");
  const double slope_p = stencil_div(s.u_p - s.u0, s.x_p - s.x0, "x_p = x");
  const double ratio = stencil_div(s.x_p - s.u0, s.x_m - s.u0, "x_m = u");
  const double pre = stencil_div(r_m, s.u0 - s.u_m, "u = u_m");
  const double back = pre * branch_sqrt(slope_m, "backward slope") /
                      branch_sqrt(r_m, "(x - u_m)(x_m - u)");
  const double fwd = pre * ratio * branch_sqrt(slope_p, "forward slope") /
                     branch_sqrt(r_p, "(x - u_p)(x_p - u)");
  scale = std::max(std::abs(back), std::abs(fwd));
  return back - fwd;
}

Stencil3 swapped(const Stencil3& s) {
  return {s.u_m, s.u0, s.u_p, s.x_m, s.x0, s.x_p};
}

}  // namespace

double integral_bracket(const Stencil3& s) {
  double scale = 0.0;
  return bracket_terms(s, scale);
}

double swapped_integral_bracket(const Stencil3& s) {
  double scale = 0.0;
  return bracket_terms(swapped(s), scale);
}

ResidualPair derived_scheme_residuals(const Stencil4& s) {
  require_monotone(s);
  const Stencil3 b = s.back();
  const Stencil3 f = s.front();
  return {integral_bracket(f) - integral_bracket(b),
          swapped_integral_bracket(f) - swapped_integral_bracket(b)};
}

Node bracket_step(const Node& prev, const Node& cur, double target_u,
                  double target_x, const StepperConfig& cfg,
                  std::optional<Node> guess) {
  if (!guess) guess = Node{2.0 * cur.x - prev.x, 2.0 * cur.u - prev.u};
  const System2 f = [&](const Vec2& z, Vec2& scale) {
    const Stencil3 s{prev.x, cur.x, z[0], prev.u, cur.u, z[1]};
    require_monotone(s);
    const double a = bracket_terms(s, scale[0]) - target_u;
    const double b = bracket_terms(swapped(s), scale[1]) - target_x;
    return Vec2{a, b};
  };
  const NewtonResult r = newton_solve(f, {guess->x, guess->u}, newton_options(cfg));
  return {r.z[0], r.z[1]};
}

Node derived_step(const Stencil3& s, const StepperConfig& cfg,
                  std::optional<Node> guess) {
  require_monotone(s);
  if (!guess) {
    guess = predict({{s.x_m, s.u_m}, {s.x0, s.u0}, {s.x_p, s.u_p}}, 4.0);
  }
  return bracket_step({s.x0, s.u0}, {s.x_p, s.u_p}, integral_bracket(s),
                      swapped_integral_bracket(s), cfg, guess);
}

Trajectory derived_solve(const Trajectory& seed, std::size_t steps,
                         const StepperConfig& cfg) {
  if (seed.size() < 3) throw InsufficientNodesError("derived_solve: need three seed nodes");
  std::vector<Node> pts = seed.points();
  for (std::size_t i = 0; i < steps; ++i) {
    const std::size_t n = pts.size();
    const Stencil3 s{pts[n - 3].x, pts[n - 2].x, pts[n - 1].x,
                     pts[n - 3].u, pts[n - 2].u, pts[n - 1].u};
    pts.push_back(derived_step(s, cfg, predict(pts, 4.0)));
  }
  return Trajectory(seed.n0(), std::move(pts));
}

// ---------------------------------------------------------------------------
// Straight-line solutions

AffineMap singular_recursion_map(double a, double b, double eps) {
  if (a == 0.0) throw DegenerateStencilError("singular recursion: a = 0");
  if (!(eps > 0.0)) throw DomainError("singular recursion: eps must be positive");
  const double rad = (1.0 + a) * (1.0 + a) + 4.0 * a / eps;
  if (rad < 0.0) throw BranchError("singular recursion: negative radicand");
  const double k = eps * ((1.0 - a) - std::sqrt(rad)) / (2.0 * a * (1.0 + eps));
  // x_p = x + k ((1 - a) x - b)
  return {1.0 + k * (1.0 - a), -k * b};
}

double singular_recursion_step(double x, double a, double b, double eps) {
  const AffineMap m = singular_recursion_map(a, b, eps);
  return m.slope * x + m.offset;
}

Trajectory singular_trajectory(double x0, double a, double b, double eps,
                               long n0, std::size_t count) {
  const AffineMap m = singular_recursion_map(a, b, eps);
  std::vector<Node> pts;
  pts.reserve(count);
  double x = x0;
  for (std::size_t i = 0; i < count; ++i) {
    pts.push_back({x, a * x + b});
    x = m.slope * x + m.offset;
  }
  return Trajectory(n0, std::move(pts));
}

double singular_consistency_residual(double a, double c, double eps,
                                     const ThetaSpec& theta, double b,
                                     double x0) {
  const double x1 = singular_recursion_step(x0, a, b, eps);
  const double x2 = singular_recursion_step(x1, a, b, eps);
  const Stencil3 s{x0, x1, x2, a * x0 + b, a * x1 + b, a * x2 + b};
  return ode2_scheme_residual(s, make_params(c, eps, theta));
}

std::optional<SingularRoot> find_singular_eps(double a, double c,
                                              const ThetaSpec& theta, double b,
                                              double x0, double eps_min,
                                              double eps_max, int samples) {
  if (samples < 1 || !(eps_max > eps_min) || eps_min < 0.0) {
    throw DomainError("find_singular_eps: bad scan range");
  }
  auto eval = [&](double e) -> std::optional<double> {
    try {
      const double v = singular_consistency_residual(a, c, e, theta, b, x0);
      if (std::isfinite(v)) return v;
    } catch (const Error&) {
    }
    return std::nullopt;
  };
  std::optional<double> prev_val;
  double prev_eps = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double e = eps_min + (eps_max - eps_min) * i / samples;
    const std::optional<double> v = eval(e);
    if (v && prev_val && (*v == 0.0 || (*v > 0.0) != (*prev_val > 0.0))) {
      double lo = prev_eps, hi = e;
      double flo = *prev_val;
      for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const std::optional<double> fm = eval(mid);
        if (!fm) break;
        if ((*fm > 0.0) == (flo > 0.0)) {
          lo = mid;
          flo = *fm;
        } else {
          hi = mid;
        }
      }
      SingularRoot root{prev_eps, e, 0.5 * (lo + hi), 0.0};
      root.residual = eval(root.eps).value_or(HUGE_VAL);
      return root;
    }
    if (v) {
      prev_val = v;
      prev_eps = e;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Convergence of non-exact theta

ConvergenceStudy theta_convergence_study(double a, double b, double c,
                                         const std::vector<double>& eps_values,
                                         double x_start, double x_end,
                                         const ThetaSpec& theta,
                                         const StepperConfig& cfg) {
  if (eps_values.empty()) throw DomainError("convergence study: no eps values");
  if (x_start == x_end) throw DomainError("convergence study: empty interval");
  const double dir = x_end > x_start ? 1.0 : -1.0;
  const double s = c > 0.0 ? 1.0 : -1.0;
  auto continuous_u = [&](double x) {
    return pole_checked_div(1.0, a * (b - a * x), "b - a x = 0") + (b - c) / a;
  };

  ConvergenceStudy out;
  for (double eps : eps_values) {
    const double shift = x_start - (b - s) / a;
    Ode2ExactParams ep{a, b, c, eps,
                       pole_checked_div(s * std::sqrt(1.0 + eps),
                                        a * std::sqrt(eps) * shift, "start at x pole")};
    const Trajectory seed = ode2_exact_trajectory(ep, 0, 1);
    if ((seed[1].x - seed[0].x) * dir <= 0.0) {
      throw DomainError("convergence study: the exact solution runs away from x_end");
    }
    const SchemeParams p = make_params(c, eps, theta);
    ConvergencePoint cp;
    cp.eps = eps;
    cp.theta = p.theta;
    std::vector<Node> pts = seed.points();
    const std::size_t max_steps = 1000000;
    while ((x_end - pts.back().x) * dir > 0.0) {
      if (cp.steps == max_steps) throw ConvergenceError("convergence study: too many steps");
      const std::optional<Node> guess =
          pts.size() >= 3 ? std::optional<Node>(predict(pts, p.k)) : std::nullopt;
      const Node next = ode2_step(pts[pts.size() - 2], pts.back(), p, cfg, guess);
      cp.max_step = std::max(cp.max_step, std::abs(next.x - pts.back().x));
      cp.error = std::max(cp.error, std::abs(next.u - continuous_u(next.x)));
      pts.push_back(next);
      ++cp.steps;
    }
    out.points.push_back(cp);
  }
  out.strictly_decreasing = true;
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    const ConvergencePoint& p0 = out.points[i - 1];
    const ConvergencePoint& p1 = out.points[i];
    if (!(p1.error < p0.error)) out.strictly_decreasing = false;
    out.eps_orders.push_back(std::log(p0.error / p1.error) / std::log(p0.eps / p1.eps));
    out.step_orders.push_back(std::log(p0.error / p1.error) /
                              std::log(p0.max_step / p1.max_step));
  }
  return out;
}

}  // namespace invscheme
