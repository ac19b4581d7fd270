#pragma once

#include <string>
#include <vector>

#include "invscheme/schemes.hpp"
#include "invscheme/stencil.hpp"

namespace invscheme {

/// Per-index values of one quantity with their mean and max |value - mean|.
struct IntegralReport {
  std::string name;
  std::vector<double> values;
  double mean = 0.0;
  double max_abs_drift = 0.0;
};

/// Builds a report; throws InsufficientNodesError for fewer than two values.
IntegralReport make_report(std::string name, std::vector<double> values);

// Integrals of the two-step scheme on one step (x, u) -> (x_p, u_p).

/// c/(x_p - u) - theta (u_x + 1)/sqrt(u_x (x - u)(x_p - u_p)); equals a on
/// the exact solutions.
double j1(double x0, double u0, double x_p, double u_p, const SchemeParams& p);

/// c x_p/(x_p - u) - theta (x_p u_x + u)/sqrt(u_x (x - u)(x_p - u_p)); equals b.
double j2(double x0, double u0, double x_p, double u_p, const SchemeParams& p);

/// The forward mixed cross-ratio; equals eps.
double j3(double x0, double u0, double x_p, double u_p);
double j3(const Stencil4& s);

/// (u - x + sign(c) sqrt(u_x (u - x)(u_p - x_p)))/(x_p - x - u_p + u) - (n + 1),
/// with n the index of (x0, u0). Equals rho on the exact solutions; depends
/// on how nodes are numbered.
double j4(double x0, double u0, double x_p, double u_p, long n, int c_sign);

/// -theta/sqrt(1+eps) * integral_bracket(s): the scheme equation solved for c.
double integral_form_c(const Stencil3& s, const SchemeParams& p);

/// -theta/sqrt(1+eps) * swapped_integral_bracket(s); equals ctilde_from_c.
double integral_form_ctilde(const Stencil3& s, const SchemeParams& p);

/// (sqrt(eps) - sqrt(1+eps))/(sqrt(eps) + sqrt(1+eps)) * c.
double ctilde_from_c(double c, double eps);

enum class IntegralKind { j1, j2, j3, j4, form_c, form_ctilde };

std::string to_string(IntegralKind k);

/// The selected integral at every admissible index of `tr`. J4 uses the
/// trajectory's own index origin and sign(p.c).
IntegralReport constancy_report(const Trajectory& tr, IntegralKind kind,
                                const SchemeParams& p);

/// All six reports in the order of IntegralKind.
std::vector<IntegralReport> all_reports(const Trajectory& tr, const SchemeParams& p);

/// winternitz_integral over consecutive triples of `seq`.
IntegralReport winternitz_report(const std::vector<double>& seq, std::string name);

}  // namespace invscheme
