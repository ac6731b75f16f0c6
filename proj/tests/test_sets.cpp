#include <cmath>
#include <numbers>

#include "doctest.h"
#include "extremal/errors.hpp"
#include "extremal/norms.hpp"
#include "extremal/sets.hpp"

using namespace extremal;
using namespace extremal::sets;
using poly::Polynomial;

namespace {

std::vector<CompactSet> all_sets() {
  return {CompactSet::interval(-1, 1),       CompactSet::interval(0, 3),
          CompactSet::disk(1),               CompactSet::disk(2.5),
          CompactSet::green_level(2),        CompactSet::disk_with_point(1, 2),
          CompactSet::product_interval_disk(0.25), CompactSet::product_interval_disk(0.8)};
}

double log_phi_t(const CompactSet& s, double t) { return std::log(closed_phi(s, std::exp(t))); }

}  // namespace

TEST_CASE("set validation") {
  CHECK_THROWS_AS(CompactSet::interval(1, 1), InputError);
  CHECK_THROWS_AS(CompactSet::disk(0), InputError);
  CHECK_THROWS_AS(CompactSet::green_level(1.0), InputError);
  CHECK_THROWS_AS(CompactSet::disk_with_point(1, 0.5), InputError);
  CHECK_THROWS_AS(CompactSet::product_interval_disk(-1), InputError);
}

TEST_CASE("grid sizes") {
  const auto I = CompactSet::interval(-1, 1);
  CHECK(discretize(I, 1).nodes.size() == 65);
  CHECK(discretize(I, 2).nodes.size() == 129);
  CHECK(discretize(CompactSet::disk(1), 1).nodes.size() == 64);
  CHECK(discretize(CompactSet::disk(1), 2).nodes.size() == 128);
  CHECK(discretize(CompactSet::disk_with_point(1, 2), 2).nodes.size() == 129);
  CHECK(discretize(CompactSet::disk_with_point(1, 2), 2).nodes.back() == poly::cplx(2.0, 0.0));
  CHECK_THROWS_AS(discretize(CompactSet::product_interval_disk(0.3), 2), UnsupportedError);
  const auto Gr = discretize(I, 2);
  CHECK(Gr.nodes.front().real() == doctest::Approx(1.0));
  CHECK(Gr.nodes.back().real() == doctest::Approx(-1.0));
  CHECK_NOTHROW(require_adequate(Gr, 5));
  CHECK_THROWS_AS(require_adequate(Gr, 6), InputError);
  CHECK(min_density_for_degree(CompactSet::disk(1), 8) == 3);
  CHECK(min_density_for_degree(I, 32) == 7);
  const auto E = discretize(CompactSet::green_level(2), 2);
  for (auto z : E.nodes) CHECK(siciak_upper(CompactSet::green_level(2), z * 0.999) <= 1.0 + 1e-9);
}

TEST_CASE("distances and Siciak bound") {
  CHECK(distance_to_set(CompactSet::interval(-1, 1), {0.0, 2.0}) == doctest::Approx(2.0));
  CHECK(distance_to_set(CompactSet::interval(-1, 1), {3.0, 0.0}) == doctest::Approx(2.0));
  CHECK(distance_to_set(CompactSet::disk(1), {0.0, 3.0}) == doctest::Approx(2.0));
  CHECK(distance_to_set(CompactSet::green_level(2), {3.0, 0.0}) == doctest::Approx(1.75));
  CHECK(distance_to_set(CompactSet::green_level(2), {0.0, 2.0}) == doctest::Approx(1.25));
  CHECK(distance_to_set(CompactSet::disk_with_point(1, 2), {2.5, 0.0}) == doctest::Approx(0.5));
  CHECK(siciak_upper(CompactSet::interval(-1, 1), 2.0) == doctest::Approx(2.0 + std::sqrt(3.0)));
  CHECK(siciak_upper(CompactSet::interval(0, 2), 3.0) == doctest::Approx(2.0 + std::sqrt(3.0)));
  CHECK(siciak_upper(CompactSet::green_level(2), 3.0) == doctest::Approx((3.0 + std::sqrt(8.0)) / 2.0));
}

TEST_CASE("norm evaluation") {
  const auto sup = NormSpec::sup_on(CompactSet::interval(-1, 1), 2);
  CHECK(sup(poly::chebyshev_T(5)) == doctest::Approx(1.0));
  const auto coeff = NormSpec::coeff(2, 1);
  CHECK(coeff(Polynomial::real({0, 0, 0, 1})) == doctest::Approx(1.0 / 6.0));
  CHECK(NormSpec::coeff(1, 2)(Polynomial::real({1, 1, 1})) == doctest::Approx(7.0));
  const auto l2 = NormSpec::integral(2);
  CHECK(l2(Polynomial::real({1})) == doctest::Approx(1.0));
  CHECK(l2(Polynomial::real({0, 1})) == doctest::Approx(1.0 / std::sqrt(3.0)));
  // |x| has a kink at 0, so Gauss-Legendre is only accurate to about 1e-3 here
  CHECK(NormSpec::integral(1)(Polynomial::real({0, 1})) == doctest::Approx(0.5).epsilon(5e-3));
  CHECK(NormSpec::integral(2, 0, 2)(Polynomial::real({-1, 1})) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK_THROWS_AS(NormSpec::coeff(0.5, 1), InputError);
  CHECK_THROWS_AS(NormSpec::integral(0.5), InputError);
}

TEST_CASE("Gauss-Legendre exactness") {
  for (int n : {1, 2, 5, 17, 40}) {
    const auto [x, w] = gauss_legendre(n);
    for (int k = 0; k < 2 * n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += w[i] * std::pow(x[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CHECK(std::abs(acc - exact) < 1e-13);
    }
  }
}

TEST_CASE("norm axioms spot check") {
  for (const auto& q : {NormSpec::sup_on(CompactSet::disk(1), 2), NormSpec::sup_on(CompactSet::interval(-1, 1), 2),
                        NormSpec::coeff(2, 1), NormSpec::integral(3)}) {
    const auto rep = check_norm_axioms(q);
    CHECK(rep.ok);
    CHECK(rep.pairs == 200);
    CHECK(rep.worst_triangle_slack >= -1e-10);
  }
}

TEST_CASE("closed profiles") {
  for (const auto& s : all_sets()) CHECK(closed_phi(s, 0.0) == 1.0);
  CHECK(closed_phi(CompactSet::disk(1), 2.0) == doctest::Approx(3.0));
  CHECK(closed_phi(CompactSet::interval(-1, 1), 1.0) == doctest::Approx(2.0 + std::sqrt(3.0)));
  CHECK(closed_phi(CompactSet::disk_with_point(1, 2), 1e-9) == doctest::Approx(2.0));
  CHECK(closed_phi(CompactSet::green_level(2), 0.0) == doctest::Approx(1.0));
  CHECK(*closed_capacity(CompactSet::interval(-1, 1)) == 0.5);
  CHECK(*closed_capacity(CompactSet::disk(1)) == 1.0);
}

TEST_CASE("phi(r)/r decreases to 1/C") {
  for (const auto& s : all_sets()) {
    double prev = INFINITY;
    for (int i = 0; i <= 120; ++i) {
      const double r = std::pow(10.0, 6.0 * i / 120.0);
      const double v = closed_phi(s, r) / r;
      CHECK(v <= prev * (1 + 1e-14));
      prev = v;
    }
    CHECK(std::abs(closed_phi(s, 1e6) / 1e6 - 1.0 / *closed_capacity(s)) <= 1e-4);
  }
}

TEST_CASE("u ratio matches finite differences of the profile") {
  const double d = 1e-3;
  for (const auto& s : all_sets()) {
    const auto kink = u_ratio_kink(s);
    for (int i = 0; i <= 80; ++i) {
      const double t = -3.0 + 8.0 * i / 80.0;
      if (kink && std::abs(t - *kink) < 3 * d) continue;
      const double up = log_phi_t(s, t + d), u0 = log_phi_t(s, t), um = log_phi_t(s, t - d);
      const double u1 = (up - um) / (2 * d), u2 = (up - 2 * u0 + um) / (d * d);
      const double want = closed_u_ratio(s, t);
      CHECK(std::abs(u2 / u1 - want) <= 1e-5 * std::abs(want) + 1e-9);
    }
  }
}

TEST_CASE("Laplacian registry") {
  CHECK_FALSE(has_closed_laplacian(CompactSet::product_interval_disk(0.3)));
  CHECK_THROWS_AS(closed_laplacian(CompactSet::product_interval_disk(0.3), 1.0), UnsupportedError);
  CHECK(closed_laplacian_limit(CompactSet::interval(-1, 1)) == 1.0);
  CHECK(closed_laplacian_limit(CompactSet::green_level(2)) == doctest::Approx(1.25));
  CHECK(closed_laplacian_limit(CompactSet::disk_with_point(1, 2)) == 2.0);
  CHECK(*u_ratio_kink(CompactSet::product_interval_disk(0.25)) == doctest::Approx(std::log(0.25)));
}
