#include <cmath>
#include <random>

#include "doctest.h"
#include "extremal/errors.hpp"
#include "extremal/poly.hpp"

using namespace extremal;
using namespace extremal::poly;

namespace {

// T_n in monomial form from the three-term recurrence, independent of the library.
std::vector<double> cheb_monomial(int n) {
  std::vector<double> a{1.0}, b{0.0, 1.0};
  if (n == 0) return a;
  for (int k = 2; k <= n; ++k) {
    std::vector<double> c(k + 1, 0.0);
    for (std::size_t j = 0; j < b.size(); ++j) c[j + 1] += 2.0 * b[j];
    for (std::size_t j = 0; j < a.size(); ++j) c[j] -= a[j];
    a = b;
    b = c;
  }
  return b;
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

TEST_CASE("chebyshev values") {
  CHECK(std::abs(eval(chebyshev_T(3), 2.0) - 26.0) < 1e-12);
  CHECK(std::abs(eval(derivative(chebyshev_T(4), 2), 1.0) - 80.0) < 1e-12);
  const auto t4 = cheb_monomial(4);
  CHECK(t4 == std::vector<double>{1.0, 0.0, -8.0, 0.0, 8.0});
  for (int n = 0; n <= 12; ++n) {
    const auto mono = Polynomial::real(cheb_monomial(n));
    for (double x : {-0.9, 0.3, 1.0, 1.7}) CHECK(std::abs(eval(chebyshev_T(n), x) - eval(mono, x)) < 1e-9 * std::pow(2.0, n));
  }
}

TEST_CASE("V. Markov value T_n^(k)(1)") {
  for (int n = 1; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      const double direct = eval(derivative(chebyshev_T(n), k), 1.0).real();
      const double closed = chebyshev_derivative_at_one(n, k);
      CHECK(std::abs(direct - closed) <= 1e-9 * std::max(1.0, std::abs(closed)));
      CHECK(std::abs(std::exp(log_chebyshev_derivative_at_one(n, k)) - closed) <= 1e-9 * closed);
    }
  CHECK(chebyshev_derivative_at_one(4, 2) == doctest::Approx(80.0));
  CHECK(chebyshev_derivative_at_one(3, 5) == 0.0);
}

TEST_CASE("log factorial and binomial") {
  long double acc = 0.0L;
  for (int j = 2; j <= 50; ++j) acc += std::log(static_cast<long double>(j));
  CHECK(std::abs(log_factorial(50) - static_cast<double>(acc)) < 1e-12);
  CHECK(std::abs(log_factorial(50) - 148.47776695177302) < 1e-9);
  CHECK(log_factorial(0) == 0.0);
  CHECK(std::abs(log_binomial(10, 3) - std::log(120.0)) < 1e-12);
  CHECK_THROWS_AS(log_binomial(3, 4), InputError);
  CHECK(std::abs(log_factorial(30000) - std::lgamma(30001.0)) < 1e-6);
}

TEST_CASE("h, g, g_hat") {
  CHECK(h(1.0) == 1.0);
  CHECK(std::abs(h(2.0) - (2.0 + std::sqrt(3.0))) < 1e-15);
  const double ratio = h(1e6) / 1e6;
  CHECK(ratio >= 1.999999);
  CHECK(ratio <= 2.0);
  CHECK(g(2.0) == doctest::Approx(1.25));
  CHECK(g_hat(2.0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(h(0.5), InputError);
  CHECK_THROWS_AS(g(0.999), InputError);
  CHECK_THROWS_AS(g_hat(-1.0), InputError);
  CHECK(std::abs(acosh1p(1e-12) / std::sqrt(2e-12) - 1.0) < 1e-12);
}

TEST_CASE("log T_n(1+r) without overflow") {
  for (int n : {1, 3, 8})
    for (double r : {1e-6, 0.01, 1.0, 5.0}) {
      const double direct = std::log(eval(chebyshev_T(n), 1.0 + r).real());
      CHECK(std::abs(log_chebyshev_T1p(n, r) - direct) <= 1e-9 * std::max(1.0, direct));
      CHECK(std::abs(log_chebyshev_T(n, 1.0 + r) - direct) <= 1e-9 * std::max(1.0, direct));
    }
  CHECK(std::isfinite(log_chebyshev_T1p(10000, 1e5)));
}

TEST_CASE("basis round trip and Clenshaw vs Horner") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int deg = 0; deg <= 30; ++deg) {
    std::vector<cplx> c(deg + 1);
    for (auto& v : c) v = cplx(u(rng), u(rng));
    c[deg] += 2.0;
    const Polynomial p(c);
    const Polynomial back = to_monomial(to_chebyshev(p));
    double err = 0.0;
    for (int j = 0; j <= deg; ++j) err = std::max(err, std::abs(back.coeffs()[j] - c[j]));
    CHECK(err <= 1e-10 * max_abs(c));

    // Clenshaw on the Chebyshev form of p against Horner on p itself, on [-1,1].
    const Polynomial pc = to_chebyshev(p);
    for (int i = 0; i < 64; ++i) {
      const double x = u(rng);
      const cplx a = eval(pc, x), b = eval(p, x);
      CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("derivative is linear in both bases") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (Basis basis : {Basis::Monomial, Basis::Chebyshev})
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<cplx> a(9), b(7);
      for (auto& v : a) v = cplx(u(rng), u(rng));
      for (auto& v : b) v = cplx(u(rng), u(rng));
      const Polynomial P(a, basis), Q(b, basis);
      const cplx s(u(rng), u(rng)), t(u(rng), u(rng));
      for (int k = 0; k <= 3; ++k) {
        const Polynomial lhs = derivative(combine(s, P, t, Q), k);
        const Polynomial rhs = combine(s, derivative(P, k), t, derivative(Q, k));
        const Polynomial diff = combine(1.0, lhs, -1.0, rhs);
        CHECK(max_abs(diff.coeffs()) <= 1e-12 * std::max(1.0, max_abs(lhs.coeffs())));
      }
    }
}

TEST_CASE("normalisation and degree cap") {
  const Polynomial p(std::vector<cplx>{1.0, 2.0, 0.0, 0.0});
  CHECK(p.degree() == 1);
  CHECK(Polynomial().is_zero());
  std::vector<cplx> big(32, 1.0);
  CHECK_THROWS_AS((void)Polynomial(big, Basis::Monomial), InputError);
  CHECK_NOTHROW((void)Polynomial(big, Basis::Chebyshev));
  CHECK_THROWS_AS(to_monomial(Polynomial(big, Basis::Chebyshev)), InputError);
  CHECK(derivative(chebyshev_T(2), 3).is_zero());
}
