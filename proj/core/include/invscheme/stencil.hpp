#pragma once

#include <cstddef>
#include <vector>

namespace invscheme {

/// One grid node (x_n, u_n).
struct Node {
  double x = 0.0;
  double u = 0.0;
};

/// Three consecutive nodes (-, current, +); the domain of the two-step
/// scheme and of its mesh equation.
struct Stencil3 {
  double x_m = 0.0, x0 = 0.0, x_p = 0.0;
  double u_m = 0.0, u0 = 0.0, u_p = 0.0;
};

/// Four consecutive nodes (-, current, +, ++).
struct Stencil4 {
  double x_m = 0.0, x0 = 0.0, x_p = 0.0, x_pp = 0.0;
  double u_m = 0.0, u0 = 0.0, u_p = 0.0, u_pp = 0.0;

  Stencil3 back() const { return {x_m, x0, x_p, u_m, u0, u_p}; }
  Stencil3 front() const { return {x0, x_p, x_pp, u0, u_p, u_pp}; }
};

/// Throws DegenerateStencilError unless all fields are finite and the four
/// abscissae are strictly monotone in one direction.
void require_monotone(const Stencil4& s);
void require_monotone(const Stencil3& s);

/// Indexed node sequence {(n, x_n, u_n)}, n = n0, n0+1, ...
/// Abscissae are strictly monotone; either direction is accepted, fixed per
/// trajectory (exact solutions with C = 2 run towards decreasing x).
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(long n0, std::vector<Node> points);

  long n0() const { return n0_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  long index(std::size_t i) const { return n0_ + static_cast<long>(i); }
  const Node& operator[](std::size_t i) const { return points_[i]; }
  const Node& at(std::size_t i) const;
  const std::vector<Node>& points() const { return points_; }
  // +1 for increasing x, -1 for decreasing, 0 when fewer than two nodes.
  int orientation() const;

 private:
  long n0_ = 0;
  std::vector<Node> points_;
};

/// Constants of the schemes. k is the Winternitz constant; the two schemes
/// are linked through k = (eps c^2 + 4)/(eps + 1).
struct SchemeParams {
  double c = 2.0;
  double eps = 0.01;
  double theta = -1.0;
  double k = 4.0;
};

/// Throws DomainError unless eps > 0, theta != 0 and every field is finite.
void validate(const SchemeParams& p);

/// Forward divided difference (u_{i+1} - u_i)/(x_{i+1} - x_i).
double diff_forward(const Trajectory& tr, std::size_t i);

/// (d - b)(c - a) / ((d - c)(b - a)); equals 4 on arithmetic progressions
/// and is unchanged by any common Mobius map of its arguments.
double cross_ratio_same(double a, double b, double c, double d);

/// (x_p - x)(u_p - u) / ((x - u_p)(x_p - u)) for one step (x,u) -> (x_p,u_p).
double mixed_ratio(double x, double u, double x_p, double u_p);

/// mixed_ratio over the (current, +) pair of the stencil.
double cross_ratio_mixed(const Stencil4& s);

/// Stencil with (x_m, x0, x_p, x_pp) = points i-1 .. i+2.
Stencil4 stencil_at(const Trajectory& tr, std::size_t i);

/// Stencil with (x_m, x0, x_p) = points i-1 .. i+1.
Stencil3 stencil3_at(const Trajectory& tr, std::size_t i);

}  // namespace invscheme
