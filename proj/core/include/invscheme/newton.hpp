#pragma once

#include <array>
#include <functional>

namespace invscheme {

using Vec2 = std::array<double, 2>;

/// Residual of a 2x2 system. `scale` receives a per-component magnitude
/// (largest term of the residual); convergence is |F_i| <= tol * max(1, scale_i).
/// The callback may throw invscheme::Error for points outside the domain.
using System2 = std::function<Vec2(const Vec2& z, Vec2& scale)>;

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 50;
  double fd_rel_step = 1e-7;
  int max_halvings = 40;
};

struct NewtonResult {
  Vec2 z{};
  Vec2 residual{};
  int iterations = 0;
};

/// Damped Newton iteration with a forward-difference Jacobian. A trial point
/// that leaves the domain, or does not reduce the scaled residual norm, is
/// retried with half the step. Throws ConvergenceError after max_iter
/// iterations or when no damped step makes progress; errors raised at the
/// initial point propagate unchanged.
NewtonResult newton_solve(const System2& f, Vec2 z0, const NewtonOptions& opt);

}  // namespace invscheme
