#include "invscheme/backlund.hpp"

#include <algorithm>
#include <cmath>

#include "invscheme/errors.hpp"
#include "invscheme/integrals.hpp"

namespace invscheme {

double b1_residual(const Stencil3& s_xu, double y_m, double y0, double y_p,
                   double alpha1) {
  return integral_bracket(s_xu) + alpha1 * winternitz_integral(y_m, y0, y_p);
}

double b2_residual(const Stencil3& s_xu, double t_m, double t0, double t_p,
                   double alpha2) {
  return swapped_integral_bracket(s_xu) + alpha2 * winternitz_integral(t_m, t0, t_p);
}

IndexRange shared_centers(const PairedTrajectories& p) {
  if (p.ty.t.size() != p.ty.y.size()) {
    throw DomainError("paired trajectories: t and y lengths differ");
  }
  const long xu_last = p.xu.n0() + static_cast<long>(p.xu.size()) - 1;
  const long ty_last = p.ty.n0 + static_cast<long>(p.ty.y.size()) - 1;
  return {std::max(p.xu.n0(), p.ty.n0) + 1, std::min(xu_last, ty_last) - 1};
}

namespace {

Stencil3 xu_at(const Trajectory& tr, long n) {
  return stencil3_at(tr, static_cast<std::size_t>(n - tr.n0()));
}

double w_at(const std::vector<double>& seq, long n0, long n) {
  const auto i = static_cast<std::size_t>(n - n0);
  return winternitz_integral(seq[i - 1], seq[i], seq[i + 1]);
}

void require_nonzero_integral(double w, const std::vector<double>& seq, long n0,
                              long n, const char* what) {
  const auto i = static_cast<std::size_t>(n - n0);
  const double scale = std::abs(4.0 / (seq[i + 1] - seq[i - 1])) +
                       std::abs(1.0 / (seq[i + 1] - seq[i])) +
                       std::abs(1.0 / (seq[i] - seq[i - 1]));
  if (!(std::abs(w) > 1e-12 * scale)) {
    throw ZeroIntegralError(std::string("fit_alphas: ") + what +
                            " Winternitz integral vanishes");
  }
}

}  // namespace

AlphaPair fit_alphas(const PairedTrajectories& p, std::optional<long> at) {
  const IndexRange r = shared_centers(p);
  if (r.empty()) throw InsufficientNodesError("fit_alphas: no shared stencil");
  const long n = at.value_or(r.first);
  if (n < r.first || n > r.last) throw IndexError("fit_alphas: index outside shared range");
  const Stencil3 s = xu_at(p.xu, n);
  const double wy = w_at(p.ty.y, p.ty.n0, n);
  const double wt = w_at(p.ty.t, p.ty.n0, n);
  require_nonzero_integral(wy, p.ty.y, p.ty.n0, n, "y");
  require_nonzero_integral(wt, p.ty.t, p.ty.n0, n, "t");
  return {-integral_bracket(s) / wy, -swapped_integral_bracket(s) / wt};
}

ResidualPair backlund_max_residuals(const PairedTrajectories& p, const AlphaPair& a) {
  const IndexRange r = shared_centers(p);
  if (r.empty()) throw InsufficientNodesError("backlund residuals: no shared stencil");
  ResidualPair out;
  for (long n = r.first; n <= r.last; ++n) {
    const Stencil3 s = xu_at(p.xu, n);
    const auto i = static_cast<std::size_t>(n - p.ty.n0);
    out.first = std::max(out.first, std::abs(b1_residual(s, p.ty.y[i - 1], p.ty.y[i],
                                                         p.ty.y[i + 1], a.alpha1)));
    out.second = std::max(out.second, std::abs(b2_residual(s, p.ty.t[i - 1], p.ty.t[i],
                                                           p.ty.t[i + 1], a.alpha2)));
  }
  return out;
}

CompatibilityReport compatibility_forward(const WinternitzPair& ty,
                                          const AlphaPair& alphas,
                                          const Trajectory& seed,
                                          const SchemeParams& p,
                                          const StepperConfig& cfg, double tol) {
  if (seed.size() != 3) throw InsufficientNodesError("compatibility_forward: need three seed nodes");
  if (alphas.alpha1 == 0.0 || alphas.alpha2 == 0.0) {
    throw DomainError("compatibility_forward: alphas must be nonzero");
  }
  const long ty_last = ty.n0 + static_cast<long>(ty.y.size()) - 1;
  if (seed.n0() < ty.n0 || seed.n0() + 2 > ty_last) {
    throw IndexError("compatibility_forward: seed not covered by (t, y)");
  }
  CompatibilityReport rep;
  rep.direction = "forward";
  rep.alphas = alphas;
  rep.tol = tol;
  rep.seed_residual =
      backlund_max_residuals({seed, ty}, alphas).max_abs();

  std::vector<Node> pts = seed.points();
  // node n + 1 is fixed by B1 = B2 = 0 at center n
  for (long n = seed.n0() + 2; n + 1 <= ty_last; ++n) {
    const double target_u = -alphas.alpha1 * w_at(ty.y, ty.n0, n);
    const double target_x = -alphas.alpha2 * w_at(ty.t, ty.n0, n);
    const std::size_t k = pts.size();
    std::optional<Node> guess;
    try {
      guess = Node{winternitz_step(pts[k - 3].x, pts[k - 2].x, pts[k - 1].x, 4.0),
                   winternitz_step(pts[k - 3].u, pts[k - 2].u, pts[k - 1].u, 4.0)};
    } catch (const Error&) {
    }
    try {
      pts.push_back(bracket_step(pts[k - 2], pts[k - 1], target_u, target_x, cfg, guess));
    } catch (const Error& e) {
      if (rep.seed_residual <= tol) {
        throw ConstructionError(std::string("compatibility_forward: ") + e.what());
      }
      rep.note = std::string("construction stopped at n = ") + std::to_string(n + 1) +
                 ": " + e.what();
      break;
    }
  }
  rep.constructed = pts.size() - 3;
  rep.xu = Trajectory(seed.n0(), std::move(pts));
  for (std::size_t i = 1; i + 2 < rep.xu.size(); ++i) {
    rep.scheme_residual = std::max(
        rep.scheme_residual, derived_scheme_residuals(stencil_at(rep.xu, i)).max_abs());
  }
  if (rep.xu.size() >= 4) {
    rep.recovered_c = constancy_report(rep.xu, IntegralKind::form_c, p).mean;
    rep.recovered_ctilde = constancy_report(rep.xu, IntegralKind::form_ctilde, p).mean;
  }
  rep.max_residual = std::max(rep.seed_residual, rep.scheme_residual);
  rep.compatible = rep.constructed > 0 && rep.max_residual <= tol;
  return rep;
}

double solve_winternitz_integral(double a, double b, double target,
                                 double reflection) {
  if (a == b) throw DegenerateStencilError("winternitz integral: a = b");
  // 4/(z - a) - 1/(z - b) = R  <=>  R z^2 - (R(a + b) + 3) z + R a b + 4 b - a = 0
  const double r = target + 1.0 / (b - a);
  const double qb = -(r * (a + b) + 3.0);
  const double qc = r * a * b + 4.0 * b - a;
  if (r == 0.0) return -qc / qb;
  const double disc = qb * qb - 4.0 * r * qc;
  if (disc < 0.0) throw BranchError("winternitz integral: no real continuation");
  const double sq = std::sqrt(disc);
  // numerically stable pair of roots
  const double q = -0.5 * (qb + (qb >= 0.0 ? sq : -sq));
  const double z1 = q / r;
  const double z2 = q != 0.0 ? qc / q : z1;
  return std::abs(z1 - reflection) >= std::abs(z2 - reflection) ? z1 : z2;
}

CompatibilityReport compatibility_backward(const Trajectory& xu,
                                           const AlphaPair& alphas,
                                           const WinternitzPair& seed,
                                           double tol) {
  if (seed.t.size() != 3 || seed.y.size() != 3) {
    throw InsufficientNodesError("compatibility_backward: need three seed values");
  }
  if (alphas.alpha1 == 0.0 || alphas.alpha2 == 0.0) {
    throw DomainError("compatibility_backward: alphas must be nonzero");
  }
  const long xu_last = xu.n0() + static_cast<long>(xu.size()) - 1;
  if (seed.n0 < xu.n0() || seed.n0 + 2 > xu_last) {
    throw IndexError("compatibility_backward: seed not covered by (x, u)");
  }
  CompatibilityReport rep;
  rep.direction = "backward";
  rep.alphas = alphas;
  rep.tol = tol;
  rep.seed_residual = backlund_max_residuals({xu, seed}, alphas).max_abs();

  WinternitzPair out = seed;
  for (long n = seed.n0 + 2; n + 1 <= xu_last; ++n) {
    const Stencil3 s = xu_at(xu, n);
    const double wy = -integral_bracket(s) / alphas.alpha1;
    const double wt = -swapped_integral_bracket(s) / alphas.alpha2;
    const std::size_t k = out.y.size();
    try {
      const double y = solve_winternitz_integral(out.y[k - 2], out.y[k - 1], wy,
                                                 out.y[k - 2] + out.y[k - 1] - out.y[k - 3]);
      const double t = solve_winternitz_integral(out.t[k - 2], out.t[k - 1], wt,
                                                 out.t[k - 2] + out.t[k - 1] - out.t[k - 3]);
      out.y.push_back(y);
      out.t.push_back(t);
    } catch (const Error& e) {
      if (rep.seed_residual <= tol) {
        throw ConstructionError(std::string("compatibility_backward: ") + e.what());
      }
      rep.note = std::string("construction stopped at n = ") + std::to_string(n + 1) +
                 ": " + e.what();
      break;
    }
  }
  rep.constructed = out.y.size() - 3;
  for (std::size_t i = 0; i + 3 < out.y.size(); ++i) {
    const Values4 y{out.y[i], out.y[i + 1], out.y[i + 2], out.y[i + 3]};
    const Values4 t{out.t[i], out.t[i + 1], out.t[i + 2], out.t[i + 3]};
    rep.scheme_residual =
        std::max(rep.scheme_residual, winternitz_residuals(y, t, 4.0).max_abs());
  }
  rep.ty = std::move(out);
  rep.max_residual = std::max(rep.seed_residual, rep.scheme_residual);
  rep.compatible = rep.constructed > 0 && rep.max_residual <= tol;
  return rep;
}

}  // namespace invscheme
