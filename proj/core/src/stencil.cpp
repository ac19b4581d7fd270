#include "invscheme/stencil.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "guards.hpp"
#include "invscheme/errors.hpp"

namespace invscheme {

namespace {

bool strictly_monotone(std::initializer_list<double> xs) {
  int dir = 0;
  const double* prev = nullptr;
  for (const double& x : xs) {
    if (!std::isfinite(x)) return false;
    if (prev != nullptr) {
      const int d = x > *prev ? 1 : (x < *prev ? -1 : 0);
      if (d == 0 || (dir != 0 && d != dir)) return false;
      dir = d;
    }
    prev = &x;
  }
  return true;
}

}  // namespace

void require_monotone(const Stencil4& s) {
  if (!strictly_monotone({s.x_m, s.x0, s.x_p, s.x_pp}) ||
      !std::isfinite(s.u_m) || !std::isfinite(s.u0) || !std::isfinite(s.u_p) ||
      !std::isfinite(s.u_pp)) {
    throw DegenerateStencilError("stencil abscissae not strictly monotone");
  }
}

void require_monotone(const Stencil3& s) {
  if (!strictly_monotone({s.x_m, s.x0, s.x_p}) || !std::isfinite(s.u_m) ||
      !std::isfinite(s.u0) || !std::isfinite(s.u_p)) {
    throw DegenerateStencilError("stencil abscissae not strictly monotone");
  }
}

Trajectory::Trajectory(long n0, std::vector<Node> points)
    : n0_(n0), points_(std::move(points)) {
  int dir = 0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].u)) {
      throw DomainError("trajectory node " + std::to_string(index(i)) +
                        " is not finite");
    }
    if (i == 0) continue;
    const double dx = points_[i].x - points_[i - 1].x;
    const int d = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
    if (d == 0 || (dir != 0 && d != dir)) {
      throw DomainError("trajectory abscissae not strictly monotone at n = " +
                        std::to_string(index(i)));
    }
    dir = d;
  }
}

const Node& Trajectory::at(std::size_t i) const {
  if (i >= points_.size()) {
    throw IndexError("trajectory index " + std::to_string(i) + " out of range");
  }
  return points_[i];
}

int Trajectory::orientation() const {
  if (points_.size() < 2) return 0;
  return points_[1].x > points_[0].x ? 1 : -1;
}

void validate(const SchemeParams& p) {
  if (!std::isfinite(p.c) || !std::isfinite(p.eps) || !std::isfinite(p.theta) ||
      !std::isfinite(p.k)) {
    throw DomainError("scheme parameters must be finite");
  }
  if (!(p.eps > 0.0)) throw DomainError("eps must be positive");
  if (p.theta == 0.0) throw DomainError("theta must be nonzero");
}

double diff_forward(const Trajectory& tr, std::size_t i) {
  if (i + 1 >= tr.size()) {
    throw IndexError("diff_forward: index " + std::to_string(i) + " out of range");
  }
  const Node& a = tr[i];
  const Node& b = tr[i + 1];
  return detail::stencil_div(b.u - a.u, b.x - a.x, "zero step");
}

double cross_ratio_same(double a, double b, double c, double d) {
  return detail::stencil_div((d - b) * (c - a), (d - c) * (b - a),
                             "cross-ratio denominator");
}

double mixed_ratio(double x, double u, double x_p, double u_p) {
  return detail::stencil_div((x_p - x) * (u_p - u), (x - u_p) * (x_p - u),
                             "mixed cross-ratio denominator");
}

double cross_ratio_mixed(const Stencil4& s) {
  return mixed_ratio(s.x0, s.u0, s.x_p, s.u_p);
}

Stencil4 stencil_at(const Trajectory& tr, std::size_t i) {
  if (i < 1 || i + 2 >= tr.size()) {
    throw IndexError("stencil_at: index " + std::to_string(i) +
                     " needs nodes i-1..i+2");
  }
  const Node& m = tr[i - 1];
  const Node& c = tr[i];
  const Node& p = tr[i + 1];
  const Node& pp = tr[i + 2];
  return {m.x, c.x, p.x, pp.x, m.u, c.u, p.u, pp.u};
}

Stencil3 stencil3_at(const Trajectory& tr, std::size_t i) {
  if (i < 1 || i + 1 >= tr.size()) {
    throw IndexError("stencil3_at: index " + std::to_string(i) +
                     " needs nodes i-1..i+1");
  }
  const Node& m = tr[i - 1];
  const Node& c = tr[i];
  const Node& p = tr[i + 1];
  return {m.x, c.x, p.x, m.u, c.u, p.u};
}

}  // namespace invscheme
