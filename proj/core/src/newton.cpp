#include "invscheme/newton.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invscheme/errors.hpp"

namespace invscheme {

namespace {

double scaled_norm(const Vec2& r, const Vec2& scale) {
  double n = 0.0;
  for (int i = 0; i < 2; ++i) {
    n = std::max(n, std::abs(r[i]) / std::max(1.0, std::abs(scale[i])));
  }
  return std::isfinite(n) ? n : HUGE_VAL;
}

}  // namespace

NewtonResult newton_solve(const System2& f, Vec2 z0, const NewtonOptions& opt) {
  Vec2 scale{};
  Vec2 r = f(z0, scale);
  double norm = scaled_norm(r, scale);
  Vec2 z = z0;

  for (int it = 0; it <= opt.max_iter; ++it) {
    if (norm <= opt.tol) return {z, r, it};
    if (it == opt.max_iter) break;

    // Forward-difference Jacobian; flip the probe direction if the forward
    // point leaves the domain.
    double jac[2][2];
    for (int j = 0; j < 2; ++j) {
      const double h = opt.fd_rel_step * std::max(std::abs(z[j]), 1e-3);
      double step = h;
      Vec2 rp{};
      bool ok = false;
      for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
        Vec2 zp = z;
        zp[j] += step;
        try {
          Vec2 sc{};
          rp = f(zp, sc);
          ok = std::isfinite(rp[0]) && std::isfinite(rp[1]);
        } catch (const Error&) {
          ok = false;
        }
        if (!ok) step = -h;
      }
      if (!ok) throw ConvergenceError("newton: Jacobian probe left the domain");
      jac[0][j] = (rp[0] - r[0]) / step;
      jac[1][j] = (rp[1] - r[1]) / step;
    }
    const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
      throw ConvergenceError("newton: singular Jacobian");
    }
    const Vec2 dz{(-r[0] * jac[1][1] + r[1] * jac[0][1]) / det,
                  (-r[1] * jac[0][0] + r[0] * jac[1][0]) / det};

    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k <= opt.max_halvings; ++k, lambda *= 0.5) {
      const Vec2 trial{z[0] + lambda * dz[0], z[1] + lambda * dz[1]};
      Vec2 sc{};
      Vec2 rt{};
      try {
        rt = f(trial, sc);
      } catch (const Error&) {
        continue;
      }
      const double nt = scaled_norm(rt, sc);
      if (nt < norm) {
        z = trial;
        r = rt;
        scale = sc;
        norm = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw ConvergenceError("newton: no damped step reduces the residual (norm " +
                             std::to_string(norm) + ")");
    }
  }
  throw ConvergenceError("newton: iteration limit reached (norm " +
                         std::to_string(norm) + ")");
}

}  // namespace invscheme
