#include "invscheme/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "guards.hpp"
#include "invscheme/errors.hpp"

namespace invscheme {

namespace {

constexpr double kFlowPoleGap = 1e-6;

double checked_den(const MobiusMap& m, double v) {
  if (m.det() == 0.0) throw DomainError("Mobius map with zero determinant");
  const double den = m.c * v + m.d;
  if (!(std::abs(den) > 0.0)) throw PoleError("Mobius map pole");
  return den;
}

}  // namespace

double MobiusMap::apply(double v) const {
  return detail::pole_checked_div(a * v + b, checked_den(*this, v), "Mobius map pole");
}

double MobiusMap::d1(double v) const {
  const double q = checked_den(*this, v);
  return det() / (q * q);
}

double MobiusMap::d2(double v) const {
  const double q = checked_den(*this, v);
  return -2.0 * c * det() / (q * q * q);
}

double MobiusMap::d3(double v) const {
  const double q = checked_den(*this, v);
  return 6.0 * c * c * det() / (q * q * q * q);
}

MobiusMap compose(const MobiusMap& f, const MobiusMap& g) {
  return {f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
          f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d};
}

std::string to_string(Generator g) {
  static const char* names[] = {"X1", "X2", "X3", "X4", "X5", "X6", "Y1", "Y2", "Y3"};
  return names[static_cast<int>(g)];
}

std::optional<Generator> parse_generator(const std::string& name) {
  for (Generator g : all_generators()) {
    if (to_string(g) == name) return g;
  }
  return std::nullopt;
}

const std::vector<Generator>& all_generators() {
  static const std::vector<Generator> gens{Generator::X1, Generator::X2, Generator::X3,
                                           Generator::X4, Generator::X5, Generator::X6,
                                           Generator::Y1, Generator::Y2, Generator::Y3};
  return gens;
}

double PointMap::apply_first(double v) const {
  if (std::abs(first.c * v + first.d) < kFlowPoleGap) {
    throw PoleError("flow too close to its pole");
  }
  return first.apply(v);
}

double PointMap::apply_second(double v) const {
  if (std::abs(second.c * v + second.d) < kFlowPoleGap) {
    throw PoleError("flow too close to its pole");
  }
  return second.apply(v);
}

Node PointMap::apply(const Node& n) const { return {apply_first(n.x), apply_second(n.u)}; }

PointMap compose(const PointMap& f, const PointMap& g) {
  return {compose(f.first, g.first), compose(f.second, g.second)};
}

PointMap flow(Generator g, double s) {
  if (!std::isfinite(s)) throw DomainError("flow parameter must be finite");
  const MobiusMap id{};
  const MobiusMap translate{1.0, s, 0.0, 1.0};
  const MobiusMap scale{std::exp(s), 0.0, 0.0, 1.0};
  const MobiusMap invert{1.0, 0.0, -s, 1.0};
  switch (g) {
    case Generator::X1: return {translate, id};
    case Generator::X2: return {scale, id};
    case Generator::X3: return {invert, id};
    case Generator::X4: return {id, translate};
    case Generator::X5: return {id, scale};
    case Generator::X6: return {id, invert};
    case Generator::Y1: return {translate, translate};
    case Generator::Y2: return {scale, scale};
    case Generator::Y3: return {invert, invert};
  }
  return {id, id};
}

Jet3 prolong_jet(const MobiusMap& m, const Jet3& j) {
  const double m1 = m.d1(j.y);
  const double m2 = m.d2(j.y);
  const double m3 = m.d3(j.y);
  Jet3 out;
  out.x = j.x;
  out.y = m.apply(j.y);
  out.y1 = m1 * j.y1;
  out.y2 = m2 * j.y1 * j.y1 + m1 * j.y2;
  out.y3 = m3 * j.y1 * j.y1 * j.y1 + 3.0 * m2 * j.y1 * j.y2 + m1 * j.y3;
  return out;
}

std::string to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::winternitz: return "winternitz";
    case SchemeKind::ode2: return "ode2";
    case SchemeKind::derived: return "derived";
  }
  return "unknown";
}

std::vector<double> scheme_residuals(SchemeKind kind, const Trajectory& xu,
                                     const SchemeParams& p) {
  std::vector<double> out;
  if (kind == SchemeKind::ode2) {
    if (xu.size() < 3) throw InsufficientNodesError("ode2 residuals need three nodes");
    for (std::size_t i = 1; i + 1 < xu.size(); ++i) {
      const Stencil3 s = stencil3_at(xu, i);
      const ResidualPair m = ode2_mesh_residuals(s, p.eps);
      out.push_back(ode2_scheme_residual(s, p));
      out.push_back(m.first);
      out.push_back(m.second);
    }
  } else if (kind == SchemeKind::derived) {
    if (xu.size() < 4) throw InsufficientNodesError("four-point residuals need four nodes");
    for (std::size_t i = 1; i + 2 < xu.size(); ++i) {
      const ResidualPair r = derived_scheme_residuals(stencil_at(xu, i));
      out.push_back(r.first);
      out.push_back(r.second);
    }
  } else {
    throw DomainError("winternitz residuals act on (t, y) sequences");
  }
  return out;
}

std::vector<double> winternitz_scheme_residuals(const WinternitzPair& ty, double k) {
  if (ty.t.size() != ty.y.size() || ty.y.size() < 4) {
    throw InsufficientNodesError("winternitz residuals need four values of t and y");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i + 3 < ty.y.size(); ++i) {
    const ResidualPair r = winternitz_residuals({ty.y[i], ty.y[i + 1], ty.y[i + 2], ty.y[i + 3]},
                                                {ty.t[i], ty.t[i + 1], ty.t[i + 2], ty.t[i + 3]}, k);
    out.push_back(r.first);
    out.push_back(r.second);
  }
  return out;
}

Trajectory apply_flow(const PointMap& m, const Trajectory& tr) {
  std::vector<Node> pts;
  pts.reserve(tr.size());
  for (const Node& n : tr.points()) pts.push_back(m.apply(n));
  return Trajectory(tr.n0(), std::move(pts));
}

WinternitzPair apply_flow(const PointMap& m, const WinternitzPair& ty) {
  WinternitzPair out;
  out.n0 = ty.n0;
  for (double t : ty.t) out.t.push_back(m.apply_first(t));
  for (double y : ty.y) out.y.push_back(m.apply_second(y));
  return out;
}

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b, double ds) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]) / std::abs(ds));
  return m;
}

}  // namespace

double invariance_max_residual(SchemeKind kind, const Trajectory& xu,
                               const SchemeParams& p, Generator g, double s) {
  return max_abs(scheme_residuals(kind, apply_flow(flow(g, s), xu), p));
}

double invariance_max_residual(const WinternitzPair& ty, double k, Generator g,
                               double s) {
  return max_abs(winternitz_scheme_residuals(apply_flow(flow(g, s), ty), k));
}

double infinitesimal_invariance(SchemeKind kind, const Trajectory& xu,
                                const SchemeParams& p, Generator g, double ds) {
  if (ds == 0.0) throw DomainError("infinitesimal_invariance: ds = 0");
  const std::vector<double> base = scheme_residuals(kind, xu, p);
  return max_abs_diff(scheme_residuals(kind, apply_flow(flow(g, ds), xu), p), base, ds);
}

double infinitesimal_invariance(const WinternitzPair& ty, double k, Generator g,
                                double ds) {
  if (ds == 0.0) throw DomainError("infinitesimal_invariance: ds = 0");
  const std::vector<double> base = winternitz_scheme_residuals(ty, k);
  return max_abs_diff(winternitz_scheme_residuals(apply_flow(flow(g, ds), ty), k), base, ds);
}

std::vector<InvarianceRow> invariance_table(const Trajectory& xu,
                                            const SchemeParams& p,
                                            const WinternitzPair& ty, double s,
                                            double tol) {
  std::vector<InvarianceRow> rows;
  for (SchemeKind kind : {SchemeKind::winternitz, SchemeKind::ode2, SchemeKind::derived}) {
    for (Generator g : all_generators()) {
      InvarianceRow row;
      row.scheme = kind;
      row.generator = g;
      row.s = s;
      try {
        row.max_residual = kind == SchemeKind::winternitz
                               ? invariance_max_residual(ty, 4.0, g, s)
                               : invariance_max_residual(kind, xu, p, g, s);
      } catch (const BranchError& e) {
        // a flowed solution that leaves the real branch is not a solution
        row.max_residual = std::numeric_limits<double>::infinity();
        row.note = e.what();
      } catch (const DomainError& e) {
        row.max_residual = std::numeric_limits<double>::infinity();
        row.note = e.what();
      } catch (const DegenerateStencilError& e) {
        row.max_residual = std::numeric_limits<double>::infinity();
        row.note = e.what();
      }
      row.pass = row.max_residual <= tol;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace invscheme
