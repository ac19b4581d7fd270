#include "invscheme/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "guards.hpp"
#include "invscheme/errors.hpp"

namespace invscheme {

using detail::branch_sqrt;
using detail::stencil_div;

IntegralReport make_report(std::string name, std::vector<double> values) {
  if (values.size() < 2) {
    throw InsufficientNodesError(name + ": constancy needs at least two values");
  }
  IntegralReport r;
  r.name = std::move(name);
  double sum = 0.0;
  for (double v : values) sum += v;
  r.mean = sum / static_cast<double>(values.size());
  for (double v : values) r.max_abs_drift = std::max(r.max_abs_drift, std::abs(v - r.mean));
  r.values = std::move(values);
  return r;
}

namespace {

// sqrt(u_x (x - u)(x_p - u_p))
double step_root(double x0, double u0, double x_p, double u_p) {
  const double slope = stencil_div(u_p - u0, x_p - x0, "x_p = x");
  return branch_sqrt(slope * (x0 - u0) * (x_p - u_p), "u_x (x - u)(x_p - u_p)");
}

}  // namespace

double j1(double x0, double u0, double x_p, double u_p, const SchemeParams& p) {
  const double slope = stencil_div(u_p - u0, x_p - x0, "x_p = x");
  const double root = step_root(x0, u0, x_p, u_p);
  return stencil_div(p.c, x_p - u0, "x_p = u") - p.theta * (slope + 1.0) / root;
}

double j2(double x0, double u0, double x_p, double u_p, const SchemeParams& p) {
  const double slope = stencil_div(u_p - u0, x_p - x0, "x_p = x");
  const double root = step_root(x0, u0, x_p, u_p);
  return stencil_div(p.c * x_p, x_p - u0, "x_p = u") -
         p.theta * (x_p * slope + u0) / root;
}

double j3(double x0, double u0, double x_p, double u_p) {
  return mixed_ratio(x0, u0, x_p, u_p);
}

double j3(const Stencil4& s) { return cross_ratio_mixed(s); }

double j4(double x0, double u0, double x_p, double u_p, long n, int c_sign) {
  if (c_sign != 1 && c_sign != -1) throw DomainError("j4: c_sign must be +1 or -1");
  const double slope = stencil_div(u_p - u0, x_p - x0, "x_p = x");
  const double rad = slope * (u0 - x0) * (u_p - x_p);
  if (rad < 0.0 || !std::isfinite(rad)) throw BranchError("j4: negative radicand");
  return stencil_div(u0 - x0 + c_sign * std::sqrt(rad), x_p - x0 - u_p + u0,
                     "x_p - x - u_p + u = 0") -
         static_cast<double>(n + 1);
}

double integral_form_c(const Stencil3& s, const SchemeParams& p) {
  return -p.theta / std::sqrt(1.0 + p.eps) * integral_bracket(s);
}

double integral_form_ctilde(const Stencil3& s, const SchemeParams& p) {
  return -p.theta / std::sqrt(1.0 + p.eps) * swapped_integral_bracket(s);
}

double ctilde_from_c(double c, double eps) {
  if (!(eps > 0.0)) throw DomainError("ctilde_from_c: eps must be positive");
  const double a = std::sqrt(eps);
  const double b = std::sqrt(1.0 + eps);
  return (a - b) / (a + b) * c;
}

std::string to_string(IntegralKind k) {
  switch (k) {
    case IntegralKind::j1: return "J1";
    case IntegralKind::j2: return "J2";
    case IntegralKind::j3: return "J3";
    case IntegralKind::j4: return "J4";
    case IntegralKind::form_c: return "integral_form_c";
    case IntegralKind::form_ctilde: return "integral_form_ctilde";
  }
  return "unknown";
}

IntegralReport constancy_report(const Trajectory& tr, IntegralKind kind,
                                const SchemeParams& p) {
  std::vector<double> values;
  const bool three_point =
      kind == IntegralKind::form_c || kind == IntegralKind::form_ctilde;
  const std::size_t width = three_point ? 3 : 2;
  if (tr.size() < width + 1) {
    throw InsufficientNodesError(to_string(kind) + ": trajectory has " +
                                 std::to_string(tr.size()) + " nodes, needs " +
                                 std::to_string(width + 1));
  }
  const int c_sign = p.c >= 0.0 ? 1 : -1;
  if (three_point) {
    for (std::size_t i = 1; i + 1 < tr.size(); ++i) {
      const Stencil3 s = stencil3_at(tr, i);
      values.push_back(kind == IntegralKind::form_c ? integral_form_c(s, p)
                                                    : integral_form_ctilde(s, p));
    }
  } else {
    for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
      const Node& a = tr[i];
      const Node& b = tr[i + 1];
      switch (kind) {
        case IntegralKind::j1: values.push_back(j1(a.x, a.u, b.x, b.u, p)); break;
        case IntegralKind::j2: values.push_back(j2(a.x, a.u, b.x, b.u, p)); break;
        case IntegralKind::j3: values.push_back(j3(a.x, a.u, b.x, b.u)); break;
        default: values.push_back(j4(a.x, a.u, b.x, b.u, tr.index(i), c_sign)); break;
      }
    }
  }
  return make_report(to_string(kind), std::move(values));
}

std::vector<IntegralReport> all_reports(const Trajectory& tr, const SchemeParams& p) {
  std::vector<IntegralReport> out;
  for (IntegralKind k : {IntegralKind::j1, IntegralKind::j2, IntegralKind::j3,
                         IntegralKind::j4, IntegralKind::form_c,
                         IntegralKind::form_ctilde}) {
    out.push_back(constancy_report(tr, k, p));
  }
  return out;
}

IntegralReport winternitz_report(const std::vector<double>& seq, std::string name) {
  if (seq.size() < 4) {
    throw InsufficientNodesError(name + ": needs at least four values");
  }
  std::vector<double> values;
  for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
    values.push_back(winternitz_integral(seq[i - 1], seq[i], seq[i + 1]));
  }
  return make_report(std::move(name), std::move(values));
}

}  // namespace invscheme
