#include "report_json.hpp"

#include <cmath>
#include <fstream>

#include "invscheme/errors.hpp"

namespace invscheme::cli {

namespace {

// JSON has no infinities; a residual that could not be evaluated is null.
json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const SchemeParams& p) {
  return {{"c", p.c}, {"eps", p.eps}, {"theta", p.theta}, {"k", p.k}};
}

json to_json(const IntegralReport& r) {
  json values = json::array();
  for (double v : r.values) values.push_back(real(v));
  return {{"name", r.name},
          {"mean", real(r.mean)},
          {"max_abs_drift", real(r.max_abs_drift)},
          {"values", values}};
}

json residual_record(const std::string& scheme, long n,
                     const std::vector<double>& residuals, const json& params) {
  json rs = json::array();
  for (double v : residuals) rs.push_back(real(v));
  return {{"scheme", scheme}, {"n", n}, {"residuals", rs}, {"params", params}};
}

json to_json(const CompatibilityReport& r) {
  json j = {{"direction", r.direction},
            {"alphas", {{"alpha1", r.alphas.alpha1}, {"alpha2", r.alphas.alpha2}}},
            {"max_residual", real(r.max_residual)},
            {"seed_residual", real(r.seed_residual)},
            {"scheme_residual", real(r.scheme_residual)},
            {"tol", r.tol},
            {"constructed", r.constructed},
            {"verdict", r.compatible ? "compatible" : "incompatible"}};
  if (r.recovered_c) j["recovered_c"] = real(*r.recovered_c);
  if (r.recovered_ctilde) j["recovered_ctilde"] = real(*r.recovered_ctilde);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const InvarianceRow& r) {
  json j = {{"scheme", to_string(r.scheme)},
            {"generator", to_string(r.generator)},
            {"s", r.s},
            {"max_residual", real(r.max_residual)},
            {"pass", r.pass}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const ConvergenceStudy& s) {
  json pts = json::array();
  for (const ConvergencePoint& p : s.points) {
    pts.push_back({{"eps", p.eps},
                   {"theta", p.theta},
                   {"error", real(p.error)},
                   {"max_step", real(p.max_step)},
                   {"steps", p.steps}});
  }
  json eo = json::array();
  for (double v : s.eps_orders) eo.push_back(real(v));
  json so = json::array();
  for (double v : s.step_orders) so.push_back(real(v));
  return {{"points", pts},
          {"eps_orders", eo},
          {"step_orders", so},
          {"strictly_decreasing", s.strictly_decreasing}};
}

void write_json(const std::string& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw DomainError("cannot write '" + path + "'");
  os << j.dump(2) << '\n';
}

}  // namespace invscheme::cli
