#include <cmath>

#include "doctest.h"
#include "invscheme/continuous.hpp"
#include "invscheme/errors.hpp"
#include "invscheme/symmetry.hpp"
#include "oracles.hpp"

using namespace invscheme;

TEST_CASE("schwarzian of affine, 1/x and exp") {
  CHECK(schwarzian({0, 0, 1, 0, 0}) == 0.0);
  CHECK(std::abs(schwarzian({1, 1, -1, 2, -6})) <= 1e-15);
  const double e = std::exp(0.7);
  CHECK(std::abs(schwarzian({0.7, e, e, e, e}) + 0.5) <= 1e-15);
  CHECK_THROWS_AS(schwarzian({0, 1, 0, 1, 1}), DomainError);
}

TEST_CASE("schwarz_solution jets") {
  auto j = schwarz_solution({1, 1, 0}, 0);
  CHECK(j.y == 1.0);
  CHECK(j.y1 == -1.0);
  CHECK(j.y2 == 2.0);
  CHECK(j.y3 == -6.0);

  j = schwarz_solution({0, 1, 5}, 7);
  CHECK(j.y == 6.0);
  CHECK(j.y1 == 0.0);
  CHECK_THROWS_AS(schwarzian(j), DomainError);

  j = schwarz_solution({-1, 2, 0}, 0);
  CHECK(j.y == 0.5);
  CHECK(j.y1 == 0.25);

  CHECK_THROWS_AS(schwarz_solution({1, -2, 0}, 2), PoleError);
  CHECK_THROWS_AS(schwarz_solution({0, 0, 1}, 2), DomainError);
}

TEST_CASE("schwarz_solution derivatives match finite differences") {
  oracle::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const SchwarzSolutionParams p{oracle::uniform(rng, -2, 2), oracle::uniform(rng, -2, 2),
                                  oracle::uniform(rng, -2, 2)};
    const double x = oracle::uniform(rng, -2, 2);
    if (std::abs(p.c1 * x + p.c2) < 0.3 || std::abs(p.c1) < 0.05) continue;
    const auto j = schwarz_solution(p, x);
    const auto fd = oracle::central([&](double v) { return 1.0 / (p.c1 * v + p.c2) + p.c3; }, x, 1e-3);
    CHECK(std::abs(j.y1 - fd.d1) <= 1e-4 * (1 + std::abs(j.y1)));
    CHECK(std::abs(j.y2 - fd.d2) <= 1e-3 * (1 + std::abs(j.y2)));
    CHECK(std::abs(j.y3 - fd.d3) <= 1e-2 * (1 + std::abs(j.y3)));
  }
}

TEST_CASE("Schwarz solutions have zero schwarzian (random sweep)") {
  oracle::Rng rng(12);
  int checked = 0;
  while (checked < 100) {
    const SchwarzSolutionParams p{oracle::uniform(rng, -3, 3), oracle::uniform(rng, -3, 3),
                                  oracle::uniform(rng, -3, 3)};
    const double x = oracle::uniform(rng, -3, 3);
    if (std::abs(p.c1 * x + p.c2) < 0.2 || std::abs(p.c1) < 0.05) continue;
    CHECK(std::abs(schwarzian(schwarz_solution(p, x))) <= 1e-9);
    ++checked;
  }
}

TEST_CASE("schwarzian is unchanged by Mobius maps of y") {
  oracle::Rng rng(13);
  int checked = 0;
  while (checked < 200) {
    const Jet3 j{0, oracle::uniform(rng, -2, 2), oracle::uniform(rng, 0.2, 2),
                 oracle::uniform(rng, -2, 2), oracle::uniform(rng, -2, 2)};
    const auto m = oracle::random_mobius(rng);
    if (std::abs(m.c * j.y + m.d) < 0.2) continue;
    const MobiusMap mm{m.a, m.b, m.c, m.d};
    const double before = schwarzian(j);
    const double after = schwarzian(prolong_jet(mm, j));
    CHECK(std::abs(after - before) <= 1e-10 * std::max(1.0, std::abs(before)));
    ++checked;
  }
}

TEST_CASE("ode2_residual on the general, constant and straight-line solutions") {
  const auto pt = ode2_solution({1, 2, 2}, 0);
  CHECK(pt.jet.y == 0.5);
  CHECK_FALSE(pt.principal_branch);
  CHECK(pt.c0_effective == -2.0);
  CHECK(std::abs(ode2_residual(pt.jet, pt.c0_effective)) <= 1e-12);
  // The printed constant is off-branch at x = 0 under the principal root.
  CHECK(std::abs(ode2_residual(pt.jet, 2.0) + 2.0) <= 1e-12);

  const auto right = ode2_solution({1, 2, 2}, 3);
  CHECK(right.principal_branch);
  CHECK(std::abs(ode2_residual(right.jet, 2.0)) <= 1e-12);

  CHECK(ode2_residual({0.3, 1.7, 0, 0, 0}, 0.4) == 0.0);
  // y = x + b with a0 = 1, c0 = -2.
  CHECK(std::abs(ode2_residual({0.5, 1.5, 1, 0, 0}, -2.0)) <= 1e-15);

  CHECK(ode2_solution({1, 1, 1}, 0).jet.y == 1.0);
  CHECK_THROWS_AS(ode2_solution({1, 2, 2}, 2), PoleError);
  CHECK_THROWS_AS(ode2_solution({0, 2, 2}, 1), DomainError);
}

TEST_CASE("ode2_solution random sweep satisfies its effective ODE") {
  oracle::Rng rng(14);
  int checked = 0;
  while (checked < 100) {
    const Ode2SolutionParams p{oracle::uniform(rng, -3, 3), oracle::uniform(rng, -3, 3),
                               oracle::uniform(rng, -3, 3)};
    const double x = oracle::uniform(rng, -3, 3);
    if (std::abs(p.a0) < 0.1 || std::abs(p.b0 - p.a0 * x) < 0.2) continue;
    const auto pt = ode2_solution(p, x);
    CHECK(pt.principal_branch == (p.b0 - p.a0 * x < 0));
    CHECK(std::abs(pt.c0_effective) == std::abs(p.c0));
    const double scale = 1 + std::abs(pt.jet.y2) + std::abs(pt.jet.y1 * pt.jet.y1);
    CHECK(std::abs(ode2_residual(pt.jet, pt.c0_effective)) <= 1e-12 * scale);
    ++checked;
  }
}

TEST_CASE("singular_slope_residual") {
  CHECK(singular_slope_residual(0, 3.7) == 0.0);
  CHECK(singular_slope_residual(1, -2) == 0.0);
  CHECK(singular_slope_residual(1, 0) == 2.0);
  CHECK_THROWS_AS(singular_slope_residual(-1, 0), DomainError);
}

TEST_CASE("ode2_first_integral") {
  const double at3 = ode2_first_integral(ode2_solution({1, 2, 2}, 3).jet);
  const double at5 = ode2_first_integral(ode2_solution({1, 2, 2}, 5).jet);
  CHECK(std::abs(at3 - 2) <= 1e-10);
  CHECK(std::abs(at5 - 2) <= 1e-10);
  CHECK(std::abs(ode2_first_integral({0.2, 1.2, 1, 0, 0}) + 2) <= 1e-15);
  CHECK_THROWS_AS(ode2_first_integral({0, 1, 0, 1, 0}), DomainError);

  // Drift along a solution branch.
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i <= 50; ++i) {
    const double v = ode2_first_integral(ode2_solution({0.7, -1.0, 1.3}, 0.1 + 0.1 * i).jet);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi - lo <= 1e-9 * std::abs(hi));
}

TEST_CASE("multiplier identity holds by finite differences") {
  CHECK(multiplier_identity_check({-1, 2, 0}, 0, 1e-4) <= 1e-6);
  CHECK(multiplier_identity_check({-1, 2, 5}, 1, 1e-4) <= 1e-6);
  CHECK_THROWS_AS(multiplier_identity_check({1, 1, 0}, 0, 1e-4), DomainError);
}

TEST_CASE("continuous Backlund invariants") {
  const auto a = continuous_backlund_invariants(schwarz_solution({-1, 2, 0}, 0));
  const auto b = continuous_backlund_invariants(schwarz_solution({-1, 2, 0}, 1));
  CHECK(std::abs(a.i1 - b.i1) <= 1e-10);
  CHECK(std::abs(a.i2 - b.i2) <= 1e-10);
  // Closed form: i1 = 2 sgn(c1 x + c2) sqrt(-c1), i2 = c3.
  CHECK(std::abs(a.i1 - 2.0) <= 1e-14);
  CHECK(std::abs(a.i2) <= 1e-14);

  const auto shifted = continuous_backlund_invariants(schwarz_solution({-1, 2, 3.5}, 0));
  CHECK(std::abs(shifted.i1 - a.i1) <= 1e-14);
  CHECK(std::abs(shifted.i2 - 3.5) <= 1e-14);

  CHECK_THROWS(continuous_backlund_invariants({0, 1, 1, 0, 0}));
}

TEST_CASE("continuous Backlund invariants: constancy and separation") {
  oracle::Rng rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const SchwarzSolutionParams p{-oracle::uniform(rng, 0.2, 3), oracle::uniform(rng, 2, 4),
                                  oracle::uniform(rng, -2, 2)};
    // c1 < 0 and c2 > 0: c1 x + c2 > 0 on x in [-1, 0.5].
    const double expect_i1 = 2 * std::sqrt(-p.c1);
    for (int i = 0; i <= 10; ++i) {
      const auto inv = continuous_backlund_invariants(schwarz_solution(p, -1 + 0.15 * i));
      CHECK(std::abs(inv.i1 - expect_i1) <= 1e-9 * expect_i1);
      CHECK(std::abs(inv.i2 - p.c3) <= 1e-9 * (1 + std::abs(p.c3)));
    }
  }
  const auto i_a = continuous_backlund_invariants(schwarz_solution({-1, 3, 0}, 0));
  const auto i_b = continuous_backlund_invariants(schwarz_solution({-2, 3, 0}, 0));
  CHECK(std::abs(i_a.i1 - i_b.i1) > 0.1);
}

TEST_CASE("continuous Backlund residual") {
  const SchwarzSolutionParams pu{-1, 2, 0.7}, py{-4, 5, -1};
  const double alpha = -continuous_backlund_invariants(schwarz_solution(pu, 0)).i2 /
                       continuous_backlund_invariants(schwarz_solution(py, 0)).i1;
  for (int i = 1; i <= 10; ++i) {
    const double x = -1 + 0.2 * i;
    CHECK(std::abs(continuous_backlund_residual(schwarz_solution(pu, x), schwarz_solution(py, x), alpha)) <= 1e-10);
  }
  // alpha = 0 and i2(u) = 0.
  CHECK(std::abs(continuous_backlund_residual(schwarz_solution({-1, 2, 0}, 0.5),
                                              schwarz_solution(py, 0.5), 0.0)) <= 1e-15);
  // Unrelated alpha: the residual is still constant in x.
  const double r0 = continuous_backlund_residual(schwarz_solution(pu, -1), schwarz_solution(py, -1), 1.3);
  for (int i = 1; i <= 10; ++i) {
    const double x = -1 + 0.2 * i;
    const double r = continuous_backlund_residual(schwarz_solution(pu, x), schwarz_solution(py, x), 1.3);
    CHECK(std::abs(r - r0) <= 1e-10);
  }
}
