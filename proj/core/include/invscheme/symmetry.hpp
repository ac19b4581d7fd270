#pragma once

// One-parameter groups generated by the projective vector fields
//   X1 = d/dx, X2 = x d/dx, X3 = x^2 d/dx   (and X4..X6: the same in u),
//   Y1 = X1 + X4, Y2 = X2 + X5, Y3 = X3 + X6,
// acting on (x, u) nodes (or (t, y) for the Winternitz scheme), and the
// check that a flowed solution still solves the scheme.

#include <optional>
#include <string>
#include <vector>

#include "invscheme/continuous.hpp"
#include "invscheme/schemes.hpp"
#include "invscheme/stencil.hpp"

namespace invscheme {

/// v -> (a v + b)/(c v + d), ad - bc != 0.
struct MobiusMap {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  double det() const { return a * d - b * c; }
  double apply(double v) const;
  /// First three derivatives at v.
  double d1(double v) const;
  double d2(double v) const;
  double d3(double v) const;
};

/// (f o g)(v) = f(g(v)).
MobiusMap compose(const MobiusMap& f, const MobiusMap& g);

enum class Generator { X1, X2, X3, X4, X5, X6, Y1, Y2, Y3 };

std::string to_string(Generator g);
std::optional<Generator> parse_generator(const std::string& name);
const std::vector<Generator>& all_generators();

/// Independent maps of the first (x or t) and second (u or y) coordinate.
struct PointMap {
  MobiusMap first;
  MobiusMap second;

  /// Throws PoleError when a denominator c v + d falls below 1e-6 in size.
  Node apply(const Node& n) const;
  double apply_first(double v) const;
  double apply_second(double v) const;
};

PointMap compose(const PointMap& f, const PointMap& g);

/// exp(s G): translations v + s, scalings e^s v, inversions v/(1 - s v).
PointMap flow(Generator g, double s);

/// Jet of m(y(x)) by the chain rule through third order.
Jet3 prolong_jet(const MobiusMap& m, const Jet3& j);

enum class SchemeKind { winternitz, ode2, derived };

std::string to_string(SchemeKind k);

/// Residuals of the two-step scheme (scheme equation and both mesh
/// residuals at every interior node) or of the four-point scheme (both
/// components at every stencil).
std::vector<double> scheme_residuals(SchemeKind kind, const Trajectory& xu,
                                     const SchemeParams& p);

/// Both Winternitz residuals at every window.
std::vector<double> winternitz_scheme_residuals(const WinternitzPair& ty, double k);

Trajectory apply_flow(const PointMap& m, const Trajectory& tr);
WinternitzPair apply_flow(const PointMap& m, const WinternitzPair& ty);

/// Largest |residual| of the flowed solution.
double invariance_max_residual(SchemeKind kind, const Trajectory& xu,
                               const SchemeParams& p, Generator g, double s);
double invariance_max_residual(const WinternitzPair& ty, double k, Generator g,
                               double s);

/// max_i |r_i(flowed by ds) - r_i| / ds; small for admitted generators.
double infinitesimal_invariance(SchemeKind kind, const Trajectory& xu,
                                const SchemeParams& p, Generator g, double ds);
double infinitesimal_invariance(const WinternitzPair& ty, double k, Generator g,
                                double ds);

struct InvarianceRow {
  SchemeKind scheme = SchemeKind::winternitz;
  Generator generator = Generator::X1;
  double s = 0.0;
  double max_residual = 0.0;  // +inf when the flowed data leave the branch
  bool pass = false;
  std::string note;
};

/// Every generator against every scheme; the (x, u) schemes use `xu`, the
/// Winternitz scheme uses `ty` with k = 4.
std::vector<InvarianceRow> invariance_table(const Trajectory& xu,
                                            const SchemeParams& p,
                                            const WinternitzPair& ty, double s,
                                            double tol = 1e-9);

}  // namespace invscheme
