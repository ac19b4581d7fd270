#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include "report_json.hpp"

#include "invscheme/backlund.hpp"
#include "invscheme/errors.hpp"
#include "invscheme/integrals.hpp"
#include "invscheme/io.hpp"
#include "invscheme/schemes.hpp"
#include "invscheme/symmetry.hpp"

namespace invscheme::cli {

namespace {

namespace fs = std::filesystem;

// Collects named checks and the artifact list for summary.json.
class Summary {
 public:
  Summary(const RunConfig& cfg, std::string out_dir)
      : cfg_(cfg), dir_(std::move(out_dir)) {}

  void check(const std::string& name, double value, double tol, bool pass) {
    checks_.push_back({{"name", name},
                       {"value", std::isfinite(value) ? json(value) : json(nullptr)},
                       {"tol", tol},
                       {"pass", pass}});
    pass_ = pass_ && pass;
  }
  void below(const std::string& name, double value, double tol) {
    check(name, value, tol, std::isfinite(value) && value <= tol);
  }
  void info(const std::string& key, json value) { info_[key] = std::move(value); }

  std::string path(const std::string& file) {
    artifacts_.push_back(file);
    return (fs::path(dir_) / file).string();
  }

  int finish(std::ostream& log) {
    json j = {{"command", to_string(cfg_.command)},
              {"pass", pass_},
              {"checks", checks_},
              {"artifacts", artifacts_}};
    if (!info_.empty()) j["results"] = info_;
    artifacts_.push_back("summary.json");
    j["artifacts"] = artifacts_;
    write_json((fs::path(dir_) / "summary.json").string(), j);
    log << to_string(cfg_.command) << ": " << (pass_ ? "PASS" : "FAIL") << " ("
        << checks_.size() << " checks, see " << (fs::path(dir_) / "summary.json").string()
        << ")\n";
    return pass_ ? 0 : 1;
  }

 private:
  const RunConfig& cfg_;
  std::string dir_;
  json checks_ = json::array();
  json artifacts_ = json::array();
  json info_ = json::object();
  bool pass_ = true;
};

SchemeParams scheme_params(const RunConfig& cfg, ThetaSpec default_theta = {}) {
  SchemeParams p = make_params(cfg.c, cfg.eps, cfg.theta.value_or(default_theta));
  if (cfg.k) p.k = *cfg.k;
  return p;
}

// Without --rho, the default is kept unless the index range would then cross
// a pole of the closed form; the range is then moved past the u pole.
Ode2ExactParams exact_params(const RunConfig& cfg, double default_rho, long lo, long hi) {
  Ode2ExactParams e{cfg.a, cfg.b, cfg.c, cfg.eps, cfg.rho.value_or(default_rho)};
  if (!cfg.rho && cfg.eps > 0.0) {
    const double pole = ode2_exact_u_pole(e);
    const double first = e.rho + static_cast<double>(lo), last = e.rho + static_cast<double>(hi);
    const bool inside = (first > 0.0 && last < pole) || first > pole || last < 0.0;
    if (!inside) e.rho = std::floor(pole) + 2.0 - static_cast<double>(lo);
  }
  return e;
}

std::pair<long, long> range(const RunConfig& cfg, long lo, long hi) {
  return {cfg.n_start.value_or(lo), cfg.n_end.value_or(hi)};
}

json exact_json(const Ode2ExactParams& e) {
  return {{"a", e.a}, {"b", e.b}, {"c", e.c}, {"eps", e.eps}, {"rho", e.rho}};
}

json winternitz_json(const WinternitzExactParams& w) {
  return {{"c1", w.c1}, {"c2", w.c2}, {"c3", w.c3}, {"c4", w.c4}, {"c5", w.c5}, {"c6", w.c6}};
}

// ---------------------------------------------------------------------------

void run_exact(const RunConfig& cfg, Summary& sum) {
  const double tol = cfg.tol.value_or(1e-10);
  json records = json::array();
  if (cfg.scheme == "winternitz") {
    const auto [lo, hi] = range(cfg, 1, 10);
    const WinternitzPair ty = winternitz_exact_trajectory(cfg.w, lo, hi);
    const double k = cfg.k.value_or(4.0);
    save_winternitz_csv(sum.path("trajectory.csv"), ty);
    double worst = 0.0;
    for (std::size_t i = 0; i + 3 < ty.y.size(); ++i) {
      const ResidualPair r = winternitz_residuals({ty.y[i], ty.y[i + 1], ty.y[i + 2], ty.y[i + 3]},
                                                  {ty.t[i], ty.t[i + 1], ty.t[i + 2], ty.t[i + 3]}, k);
      worst = std::max(worst, r.max_abs());
      records.push_back(residual_record("winternitz", ty.n0 + static_cast<long>(i) + 1,
                                        {r.first, r.second}, winternitz_json(cfg.w)));
    }
    write_json(sum.path("residuals.json"), records);
    sum.below("winternitz_residual", worst, tol);
    return;
  }
  const auto [lo, hi] = range(cfg, 1, 8);
  const Ode2ExactParams e = exact_params(cfg, 1.0, lo, hi);
  const Trajectory tr = ode2_exact_trajectory(e, lo, hi);
  const SchemeParams p = scheme_params(cfg);
  save_trajectory_csv(sum.path("trajectory.csv"), tr);
  double worst_scheme = 0.0, worst_mesh = 0.0;
  const json params = {{"exact", exact_json(e)}, {"scheme", to_json(p)}};
  for (std::size_t i = 1; i + 1 < tr.size(); ++i) {
    const Stencil3 s = stencil3_at(tr, i);
    const double r = ode2_scheme_residual(s, p);
    const ResidualPair m = ode2_mesh_residuals(s, p.eps);
    worst_scheme = std::max(worst_scheme, std::abs(r));
    worst_mesh = std::max(worst_mesh, m.max_abs());
    records.push_back(residual_record("ode2", tr.index(i), {r, m.first, m.second}, params));
  }
  write_json(sum.path("residuals.json"), records);
  sum.below("scheme_residual", worst_scheme, tol);
  sum.below("mesh_residual", worst_mesh, tol);
}

void run_solve(const RunConfig& cfg, Summary& sum) {
  const auto [lo, hi] = range(cfg, 1, 8);
  const Ode2ExactParams e = exact_params(cfg, 1.0, lo, hi);
  const SchemeParams p = scheme_params(cfg);
  const Trajectory exact = ode2_exact_trajectory(e, lo, hi);
  const Trajectory seed(lo, {exact[0], exact[1]});
  const Trajectory tr = ode2_solve(seed, exact.size() - 2, p, StepperConfig{});
  save_trajectory_csv(sum.path("trajectory.csv"), tr);
  double node_err = 0.0, curve_err = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double scale = 1.0 + std::abs(exact[i].x) + std::abs(exact[i].u);
    node_err = std::max(node_err, (std::abs(tr[i].x - exact[i].x) +
                                   std::abs(tr[i].u - exact[i].u)) / scale);
    const double u_curve = 1.0 / (e.a * (e.b - e.a * tr[i].x)) + (e.b - e.c) / e.a;
    curve_err = std::max(curve_err, std::abs(tr[i].u - u_curve));
  }
  sum.info("theta", p.theta);
  sum.info("eps", p.eps);
  sum.info("node_error_vs_exact_nodes", node_err);
  sum.info("error_vs_continuous_solution", curve_err);
  if (!cfg.theta || cfg.theta->mode == ThetaMode::exact) {
    sum.below("node_error_vs_exact_nodes", node_err, cfg.tol.value_or(1e-9));
  }
}

void run_verify_integrals(const RunConfig& cfg, Summary& sum) {
  if (cfg.in.empty()) throw DomainError("verify-integrals needs --in <trajectory.csv>");
  std::string header;
  {
    std::ifstream is(cfg.in);
    if (!is) throw DomainError("cannot open '" + cfg.in + "'");
    std::getline(is, header);
  }
  const double tol = cfg.tol.value_or(1e-9);
  json reports = json::array();
  auto add = [&](const IntegralReport& r) {
    reports.push_back(to_json(r));
    sum.below(r.name + "_relative_drift", r.max_abs_drift / (1.0 + std::abs(r.mean)), tol);
  };
  if (header.rfind("n,t,y", 0) == 0) {
    const WinternitzPair ty = load_winternitz_csv(cfg.in);
    add(winternitz_report(ty.y, "winternitz_y"));
    add(winternitz_report(ty.t, "winternitz_t"));
  } else {
    const Trajectory tr = load_trajectory_csv(cfg.in);
    const SchemeParams p = scheme_params(cfg);
    for (const IntegralReport& r : all_reports(tr, p)) add(r);
    const IntegralReport j3 = constancy_report(tr, IntegralKind::j3, p);
    sum.below("J3_mean_minus_eps", std::abs(j3.mean - p.eps), 1e-12);
  }
  write_json(sum.path("integrals.json"), reports);
}

void run_symmetry_table(const RunConfig& cfg, Summary& sum) {
  const auto [lo, hi] = range(cfg, 0, 9);
  const Ode2ExactParams e = exact_params(cfg, 16.0, lo, hi);
  const Trajectory xu = ode2_exact_trajectory(e, lo, hi);
  const WinternitzPair ty = winternitz_exact_trajectory(cfg.w, 1, 10);
  const SchemeParams p = scheme_params(cfg);
  const double tol = cfg.tol.value_or(1e-9);

  std::vector<InvarianceRow> rows = invariance_table(xu, p, ty, cfg.s, tol);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> pick(-std::abs(cfg.s), std::abs(cfg.s));
  for (int t = 0; t < cfg.trials; ++t) {
    for (InvarianceRow& r : invariance_table(xu, p, ty, pick(rng), tol)) rows.push_back(r);
  }
  json table = json::array();
  bool wint_all = true, joint_pass = true, witness = false;
  for (const InvarianceRow& r : rows) {
    table.push_back(to_json(r));
    const bool joint = r.generator == Generator::Y1 || r.generator == Generator::Y2 ||
                       r.generator == Generator::Y3;
    if (r.scheme == SchemeKind::winternitz) wint_all = wint_all && r.pass;
    else if (joint) joint_pass = joint_pass && r.pass;
    else if (r.scheme == SchemeKind::derived && r.s == cfg.s && r.max_residual > 1e-3) witness = true;
  }
  write_json(sum.path("symmetry.json"), table);
  sum.check("winternitz_admits_all_generators", wint_all ? 1.0 : 0.0, tol, wint_all);
  sum.check("xu_schemes_admit_joint_generators", joint_pass ? 1.0 : 0.0, tol, joint_pass);
  sum.check("four_point_scheme_rejects_a_single_variable_generator", witness ? 1.0 : 0.0,
            1e-3, witness);
}

void run_backlund_check(const RunConfig& cfg, Summary& sum) {
  const auto [lo, hi] = range(cfg, 1, 8);
  const Ode2ExactParams e = exact_params(cfg, 1.0, lo, hi);
  const Trajectory xu = ode2_exact_trajectory(e, lo, hi);
  const WinternitzPair ty = winternitz_exact_trajectory(cfg.w, lo, hi);
  const SchemeParams p = scheme_params(cfg);
  const double tol = cfg.tol.value_or(1e-8);
  const PairedTrajectories pair{xu, ty};

  const AlphaPair alphas = fit_alphas(pair);
  const IndexRange centers = shared_centers(pair);
  double variation = 0.0;
  for (long n = centers.first; n <= centers.last; ++n) {
    const AlphaPair a = fit_alphas(pair, n);
    variation = std::max({variation, std::abs(a.alpha1 / alphas.alpha1 - 1.0),
                          std::abs(a.alpha2 / alphas.alpha2 - 1.0)});
  }
  const ResidualPair b = backlund_max_residuals(pair, alphas);

  const Trajectory seed(lo, {xu[0], xu[1], xu[2]});
  const WinternitzPair ty_seed{lo, {ty.t[0], ty.t[1], ty.t[2]}, {ty.y[0], ty.y[1], ty.y[2]}};
  const CompatibilityReport fwd = compatibility_forward(ty, alphas, seed, p, {}, tol);
  const CompatibilityReport bwd = compatibility_backward(xu, alphas, ty_seed, tol);
  json perturbed = json::array();
  bool detected = true;
  for (const AlphaPair& q : {AlphaPair{1.1 * alphas.alpha1, alphas.alpha2},
                             AlphaPair{alphas.alpha1, 1.1 * alphas.alpha2}}) {
    const CompatibilityReport f = compatibility_forward(ty, q, seed, p, {}, tol);
    const CompatibilityReport r = compatibility_backward(xu, q, ty_seed, tol);
    detected = detected && f.max_residual >= 1e-3 && r.max_residual >= 1e-3;
    perturbed.push_back(to_json(f));
    perturbed.push_back(to_json(r));
  }
  write_json(sum.path("backlund.json"),
             {{"alphas", {{"alpha1", alphas.alpha1}, {"alpha2", alphas.alpha2}}},
              {"alpha_relative_variation", variation},
              {"b1_max_residual", b.first},
              {"b2_max_residual", b.second},
              {"reports", json::array({to_json(fwd), to_json(bwd)})},
              {"perturbed", perturbed}});
  sum.below("alpha_relative_variation", variation, 1e-9);
  sum.below("b_residual", b.max_abs(), 1e-9);
  sum.below("forward_max_residual", fwd.max_residual, tol);
  sum.below("backward_max_residual", bwd.max_residual, tol);
  sum.check("perturbed_alpha_detected", detected ? 1.0 : 0.0, 1e-3, detected);
}

void run_convergence(const RunConfig& cfg, Summary& sum) {
  const double s = cfg.c > 0.0 ? 1.0 : -1.0;
  const double asymptote = (cfg.b - s) / cfg.a;
  const double x_start = cfg.x_start.value_or(asymptote + s * 0.5 / cfg.a);
  const double x_end = cfg.x_end.value_or(asymptote + s * 0.1 / cfg.a);
  const ThetaSpec theta = cfg.theta.value_or(ThetaSpec{ThetaMode::unit, -1.0});
  const ConvergenceStudy st =
      theta_convergence_study(cfg.a, cfg.b, cfg.c, cfg.eps_list, x_start, x_end, theta);
  json j = to_json(st);
  j["x_start"] = x_start;
  j["x_end"] = x_end;
  write_json(sum.path("convergence.json"), j);
  const double min_order = st.eps_orders.empty()
                               ? 0.0
                               : *std::min_element(st.eps_orders.begin(), st.eps_orders.end());
  sum.info("eps_orders", j["eps_orders"]);
  sum.info("step_orders", j["step_orders"]);
  sum.check("errors_strictly_decreasing", st.strictly_decreasing ? 1.0 : 0.0, 0.0,
            st.strictly_decreasing);
  sum.check("min_observed_order", min_order, cfg.min_order, min_order >= cfg.min_order);
}

void run_singular(const RunConfig& cfg, Summary& sum) {
  const auto [lo, hi] = range(cfg, 0, 9);
  const Trajectory tr = singular_trajectory(cfg.x0, cfg.a, cfg.b, cfg.eps, lo,
                                            static_cast<std::size_t>(hi - lo + 1));
  save_trajectory_csv(sum.path("trajectory.csv"), tr);
  double mesh = 0.0;
  for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
    mesh = std::max(mesh, std::abs(mixed_ratio(tr[i].x, tr[i].u, tr[i + 1].x, tr[i + 1].u) - cfg.eps));
  }
  sum.below("mesh_residual", mesh, 1e-12);
  const ThetaSpec theta = cfg.theta.value_or(ThetaSpec{});
  std::vector<double> scan;
  json samples = json::array();
  for (int i = 1; i <= 20; ++i) {
    const double e = i / 20.0;
    json row = {{"eps", e}};
    try {
      row["residual"] = singular_consistency_residual(cfg.a, cfg.c, e, theta, cfg.b, cfg.x0);
    } catch (const Error& err) {
      row["residual"] = nullptr;
      row["note"] = err.what();
    }
    samples.push_back(row);
  }
  const std::optional<SingularRoot> root =
      find_singular_eps(cfg.a, cfg.c, theta, cfg.b, cfg.x0);
  json j = {{"a", cfg.a}, {"b", cfg.b}, {"c", cfg.c}, {"x0", cfg.x0}, {"scan", samples}};
  if (root) {
    j["root"] = {{"eps", root->eps}, {"residual", root->residual},
                 {"bracket", {root->eps_lo, root->eps_hi}}};
  } else {
    j["root"] = nullptr;
  }
  write_json(sum.path("singular.json"), j);
  sum.check("consistency_sign_change", root ? 1.0 : 0.0, 0.0, root.has_value());
  if (root) sum.below("root_scheme_residual", std::abs(root->residual), cfg.tol.value_or(1e-10));
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) {
    log << "error: cannot create output directory '" << cfg.out << "'\n";
    return 1;
  }
  Summary sum(cfg, cfg.out);
  try {
    switch (cfg.command) {
      case Command::exact: run_exact(cfg, sum); break;
      case Command::solve: run_solve(cfg, sum); break;
      case Command::verify_integrals: run_verify_integrals(cfg, sum); break;
      case Command::symmetry_table: run_symmetry_table(cfg, sum); break;
      case Command::backlund_check: run_backlund_check(cfg, sum); break;
      case Command::convergence: run_convergence(cfg, sum); break;
      case Command::singular: run_singular(cfg, sum); break;
    }
  } catch (const Error& e) {
    const json j = {{"command", to_string(cfg.command)},
                    {"pass", false},
                    {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
    write_json((fs::path(cfg.out) / "error.json").string(), j);
    log << j.dump() << '\n';
    return 1;
  }
  return sum.finish(log);
}

}  // namespace invscheme::cli
