#include <cmath>
#include <numbers>

#include "doctest.h"
#include "extremal/errors.hpp"
#include "extremal/psi.hpp"

using namespace extremal;
using namespace extremal::engine;

TEST_CASE("product form equals 1 on the real sphere") {
  for (int m : {1, 2, 3, 5})
    for (double th : {0.0, 0.3, 1.1, 2.0, 2.9}) {
      const double c = std::cos(th), s = std::sin(th), nv = lp_norm(m, c, s);
      CHECK(psi_product(m, c / nv, s / nv) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("product form at (1, i) and homogeneity") {
  CHECK(psi_product(1, 1.0, cplx(0, 1)) == doctest::Approx(2.0));
  const cplx z1(0.3, -1.2), z2(2.0, 0.5);
  for (int m : {1, 3}) CHECK(psi_product(m, 2.5 * z1, 2.5 * z2) == doctest::Approx(2.5 * psi_product(m, z1, z2)));
  CHECK_THROWS_AS(psi_product(0, 1.0, 1.0), InputError);
}

TEST_CASE("Poisson form agrees with the product form") {
  const std::vector<std::pair<cplx, cplx>> pts{{1.0, cplx(0, 1)}, {cplx(1, 1), cplx(0.2, -0.7)}, {cplx(0.5, 0), cplx(3, 2)}};
  for (int m : {1, 2, 4})
    for (const auto& [z1, z2] : pts) {
      const auto p = psi_poisson([m](double t) { return lp_norm_profile(m, t); }, z1, z2);
      CHECK(p.converged);
      CHECK(p.value == doctest::Approx(psi_product(m, z1, z2)).epsilon(1e-6));
    }
  CHECK_THROWS_AS(psi_poisson([](double) { return 0.0; }, 0.0, 1.0), InputError);
}

TEST_CASE("homogeneous LP") {
  const auto g = sphere_grid([](double a, double b) { return lp_norm(1, a, b); }, 256);
  for (int n : {2, 4}) {
    const double v = psi_homogeneous_lp(g, n, 1.0, cplx(0, 1));
    CHECK(v >= 2.0 - 0.05);
    CHECK(v <= 2.0 * std::pow(1.0 / std::cos(std::numbers::pi / 16), 1.0 / n) * 1.01);
    const cplx z1(0.4, 0.1), z2(-0.3, 0.8);
    CHECK(psi_homogeneous_lp(g, n, 3.0 * z1, 3.0 * z2) == doctest::Approx(3.0 * psi_homogeneous_lp(g, n, z1, z2)).epsilon(1e-6));
    // real sphere points: within the polygon factor of 1
    const double r = psi_homogeneous_lp(g, n, g.points[10][0], g.points[10][1]);
    CHECK(r >= 1.0 - 1e-9);
    CHECK(r <= std::pow(1.0 / std::cos(std::numbers::pi / 16), 1.0 / n) + 1e-9);
  }
  CHECK_THROWS_AS(psi_homogeneous_lp(g, 13, 1.0, 1.0), InputError);
}
