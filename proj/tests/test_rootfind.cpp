#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hcgibbs/core.hpp"
#include "hcgibbs/error.hpp"
#include "hcgibbs/reductions.hpp"
#include "hcgibbs/rootfind.hpp"
#include "oracles.hpp"

using namespace hcgibbs;

namespace {

// ascending coefficients of prod (x - r)
std::vector<double> from_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> n(c.size() + 1, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      n[j + 1] += c[j];
      n[j] -= r * c[j];
    }
    c = n;
  }
  return c;
}

double toms(const ScalarFn& f, double a, double b) {
  std::uintmax_t it = 200;
  const auto r = boost::math::tools::toms748_solve(f, a, b, boost::math::tools::eps_tolerance<double>(50), it);
  return 0.5 * (r.first + r.second);
}

// Independent brute force for x = f(y), y = f(x): sign changes of f(f(x)) - x
// on a fine grid, each bracket solved by TOMS 748.
std::vector<double> composition_roots(const ScalarFn& f, double a, double b, int n) {
  auto g = [&](double x) { return f(f(x)) - x; };
  std::vector<double> out;
  double xp = a, gp = g(a);
  for (int j = 1; j <= n; ++j) {
    const double x = a + (b - a) * j / n, gx = g(x);
    if (gp == 0.0) out.push_back(xp);
    else if (gp * gx < 0.0) out.push_back(toms(g, xp, x));
    xp = x;
    gp = gx;
  }
  return out;
}

}  // namespace

TEST_CASE("bracketed roots") {
  auto r = bracketed_roots([](double x) { return x * x - 2; }, 0.0, 2.0);
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r.roots[0] - std::numbers::sqrt2) < 1e-13);

  r = bracketed_roots([](double x) { return x * std::pow(1 + 1.8 * x, 3) - 1; }, 0.0, 1.0);
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r.roots[0] - ti_fixed_point(3, 1.8)) < 1e-13);

  r = bracketed_roots([](double x) { return std::sin(x); }, 1.0, 10.0);
  REQUIRE(r.size() == 3);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(r.roots[j] - (j + 1) * std::numbers::pi) < 1e-12);
  CHECK(r.bracket_width == doctest::Approx(9.0 / kDefaultGrid));

  // NaN samples below 0 are skipped
  r = bracketed_roots([](double x) { return std::sqrt(x) - 1.0; }, -1.0, 4.0);
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r.roots[0] - 1.0) < 1e-13);

  CHECK(bracketed_roots([](double x) { return x * x + 1; }, -3.0, 3.0).empty());
  CHECK_THROWS_AS(bracketed_roots([](double x) { return x; }, 1.0, 0.0), DomainError);
}

TEST_CASE("bracketed roots agree with TOMS 748 on random cubics") {
  oracle::Rng rng(21);
  for (int rep = 0; rep < 100; ++rep) {
    const double r1 = rng.uniform(-5, -1), r2 = rng.uniform(-0.5, 0.5), r3 = rng.uniform(1, 5);
    const double s = rng.uniform(0.1, 10.0);
    const ScalarFn f = [=](double x) { return s * (x - r1) * (x - r2) * (x - r3); };
    const auto got = bracketed_roots(f, -6.0, 6.0);
    REQUIRE(got.size() == 3);
    CHECK(std::abs(got.roots[0] - toms(f, -6.0, -0.75)) < 1e-12);
    CHECK(std::abs(got.roots[1] - toms(f, -0.75, 0.75)) < 1e-12);
    CHECK(std::abs(got.roots[2] - toms(f, 0.75, 6.0)) < 1e-12);
  }
}

TEST_CASE("polynomial real roots") {
  auto r = poly_real_roots({2.0, -3.0, 1.0}, 0.0, 3.0);
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r.roots[0] - 1.0) < 1e-13);
  CHECK(std::abs(r.roots[1] - 2.0) < 1e-13);
  CHECK_FALSE(r.multiple[0]);

  // even multiplicity: no sign change, found as a touch point
  r = poly_real_roots(from_roots({1.0, 2.0, 2.0}), 0.0, 3.0);
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r.roots[1] - 2.0) < 1e-6);
  CHECK(r.multiple[1]);
  CHECK_FALSE(r.multiple[0]);

  // odd multiplicity: sign change plus the vanishing-derivative flag
  r = poly_real_roots(from_roots({1.5, 1.5, 1.5}), 1.0, 3.0);
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r.roots[0] - 1.5) < 1e-4);
  CHECK(r.multiple[0]);

  CHECK(poly_real_roots({1.0, 0.0, 1.0}, -5.0, 5.0).empty());
  CHECK_THROWS_AS(poly_real_roots({}, 0.0, 1.0), DomainError);
}

TEST_CASE("polynomial roots from random factored forms") {
  oracle::Rng rng(33);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = rng.integer(2, 10);
    std::vector<double> roots;
    for (int j = 0; j < n; ++j) roots.push_back(-4.0 + 8.0 * (j + rng.uniform(0.2, 0.8)) / n);
    const auto r = poly_real_roots(from_roots(roots), -4.0, 4.0);
    REQUIRE(r.size() == roots.size());
    for (int j = 0; j < n; ++j) CHECK(std::abs(r.roots[j] - roots[j]) < 1e-9);
  }
}

TEST_CASE("horner") {
  CHECK(horner({1.0, 2.0, 3.0}, 2.0) == 17.0);
  CHECK(horner({5.0}, 100.0) == 5.0);
}

TEST_CASE("symmetric system for gamma and h") {
  const ScalarFn g4 = [](double x) { return gamma_map(x, 6, 4.0); };
  auto pts = solve_symmetric_system(g4, 0.0, 1.0);
  REQUIRE(pts.size() == 1);
  const double xi4 = ti_fixed_point(6, 4.0);
  CHECK(std::abs(pts[0].x - xi4) < 1e-12);
  CHECK(pts[0].x == pts[0].y);
  CHECK(composition_roots(g4, 0.0, 1.0, 20000).size() == 1);

  // gamma is not monotone on [0, 1] at lambda = 10
  const ScalarFn g10 = [](double x) { return gamma_map(x, 6, 10.0); };
  CHECK_THROWS_AS(solve_symmetric_system(g10, 0.0, 1.0), DomainError);
  pts = solve_symmetric_system(g10, 0.0, 1.0, 1e-13, {kDefaultGrid, false});
  REQUIRE(pts.size() == 3);
  const double xi = ti_fixed_point(6, 10.0);
  CHECK(std::abs(pts[0].x - xi) < 1e-12);
  CHECK(pts[1].x < xi);
  CHECK(pts[1].y > xi);
  CHECK(std::abs(pts[2].x - pts[1].y) < 1e-12);
  CHECK(std::abs(pts[2].y - pts[1].x) < 1e-12);
  const auto brute = composition_roots(g10, 0.0, 1.0, 20000);
  REQUIRE(brute.size() == 3);
  CHECK(std::abs(brute[0] - pts[1].x) < 1e-11);
  CHECK(std::abs(brute[1] - xi) < 1e-11);
  CHECK(std::abs(brute[2] - pts[2].x) < 1e-11);
  for (const auto& p : pts) {
    CHECK(std::abs(g10(p.y) - p.x) < 1e-12);
    CHECK(std::abs(g10(p.x) - p.y) < 1e-12);
  }

  const ScalarFn h = [](double x) { return h_map(x, 1.6); };
  pts = solve_symmetric_system(h, 1.0 + 1e-9, 4.0);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].x == pts[0].y);
}

TEST_CASE("Kesten 2-cycles") {
  CHECK_FALSE(two_cycle_kesten([](double x) { return 1.0 - x; }, 0.5).has_value());

  const ScalarFn g10 = [](double x) { return gamma_map(x, 6, 10.0); };
  const double xi = ti_fixed_point(6, 10.0);
  const auto c = two_cycle_kesten(g10, xi);
  REQUIRE(c.has_value());
  CHECK(c->derivative < -1.0);
  CHECK(c->x1 < xi);
  CHECK(c->x2 > xi);
  CHECK(std::abs(g10(c->x1) - c->x2) < 1e-12);
  CHECK(std::abs(g10(c->x2) - c->x1) < 1e-12);
  CHECK(c->derivative == doctest::Approx(gamma_derivative_at_fixed_point(xi, 6, 10.0)).epsilon(1e-6));

  const ScalarFn g5 = [](double x) { return gamma_map(x, 6, 5.0); };
  const double xi5 = ti_fixed_point(6, 5.0);
  CHECK_FALSE(two_cycle_kesten(g5, xi5).has_value());
  CHECK(central_diff(g5, xi5) > -1.0);

  CHECK_THROWS_AS(two_cycle_kesten(g10, 0.5), DomainError);
}

TEST_CASE("central difference") {
  CHECK(central_diff([](double x) { return std::sin(x); }, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(central_diff([](double x) { return x * x * x; }, 2.0) == doctest::Approx(12.0).epsilon(1e-9));
}
