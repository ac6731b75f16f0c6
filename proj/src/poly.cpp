#include "extremal/poly.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include "extremal/errors.hpp"

namespace extremal::poly {

namespace {

void trim(std::vector<cplx>& c) {
  while (c.size() > 1 && c.back() == cplx(0.0)) c.pop_back();
  if (c.empty()) c.push_back(0.0);
}

void check_monomial_cap(int degree) {
  if (degree > kMonomialDegreeCap)
    throw InputError("monomial basis limited to degree " + std::to_string(kMonomialDegreeCap) +
                     ", got " + std::to_string(degree));
}

// x * sum a_j T_j in Chebyshev coefficients.
std::vector<cplx> cheb_times_x(const std::vector<cplx>& a) {
  std::vector<cplx> out(a.size() + 1, 0.0);
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j == 0) {
      out[1] += a[0];
    } else {
      out[j + 1] += 0.5 * a[j];
      out[j - 1] += 0.5 * a[j];
    }
  }
  return out;
}

}  // namespace

Polynomial::Polynomial() : coeffs_{0.0}, basis_(Basis::Monomial) {}

Polynomial::Polynomial(std::vector<cplx> coeffs, Basis basis) : coeffs_(std::move(coeffs)), basis_(basis) {
  trim(coeffs_);
  if (basis_ == Basis::Monomial) check_monomial_cap(degree());
}

Polynomial Polynomial::real(const std::vector<double>& coeffs, Basis basis) {
  return Polynomial(std::vector<cplx>(coeffs.begin(), coeffs.end()), basis);
}

cplx Polynomial::operator()(cplx z) const { return eval(*this, z); }

cplx eval(const Polynomial& p, cplx z) {
  const auto& c = p.coeffs();
  if (p.basis() == Basis::Monomial) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  }
  // Clenshaw
  cplx b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    cplx b0 = c[k] + 2.0 * z * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + z * b1 - b2;
}

Polynomial derivative(const Polynomial& p, int k) {
  if (k < 0) throw InputError("derivative order must be >= 0");
  std::vector<cplx> c = p.coeffs();
  for (int step = 0; step < k; ++step) {
    const int n = static_cast<int>(c.size()) - 1;
    if (n == 0) return Polynomial(std::vector<cplx>{0.0}, p.basis());
    std::vector<cplx> d(n, 0.0);
    if (p.basis() == Basis::Monomial) {
      for (int j = 1; j <= n; ++j) d[j - 1] = static_cast<double>(j) * c[j];
    } else {
      std::vector<cplx> e(n + 2, 0.0);
      for (int j = n; j >= 1; --j) e[j - 1] = e[j + 1] + 2.0 * static_cast<double>(j) * c[j];
      e[0] *= 0.5;
      for (int j = 0; j < n; ++j) d[j] = e[j];
    }
    c = std::move(d);
  }
  return Polynomial(std::move(c), p.basis());
}

Polynomial chebyshev_T(int n) {
  if (n < 0) throw InputError("chebyshev_T needs n >= 0");
  std::vector<cplx> c(n + 1, 0.0);
  c[n] = 1.0;
  return Polynomial(std::move(c), Basis::Chebyshev);
}

Polynomial to_monomial(const Polynomial& p) {
  if (p.basis() == Basis::Monomial) return p;
  const int n = p.degree();
  check_monomial_cap(n);
  // monomial coefficients of T_0..T_n by recurrence
  std::vector<double> tprev{1.0}, tcur{0.0, 1.0};
  std::vector<cplx> out(n + 1, 0.0);
  const auto& c = p.coeffs();
  out[0] += c[0];
  if (n >= 1)
    for (int j = 0; j < 2; ++j) out[j] += c[1] * tcur[j];
  for (int k = 2; k <= n; ++k) {
    std::vector<double> tnext(k + 1, 0.0);
    for (int j = 0; j < k; ++j) tnext[j + 1] += 2.0 * tcur[j];
    for (int j = 0; j < k - 1; ++j) tnext[j] -= tprev[j];
    for (int j = 0; j <= k; ++j) out[j] += c[k] * tnext[j];
    tprev = std::move(tcur);
    tcur = std::move(tnext);
  }
  return Polynomial(std::move(out), Basis::Monomial);
}

Polynomial to_chebyshev(const Polynomial& p) {
  if (p.basis() == Basis::Chebyshev) return p;
  const auto& c = p.coeffs();
  // Horner in the Chebyshev basis
  std::vector<cplx> acc{c.back()};
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
    acc = cheb_times_x(acc);
    acc[0] += c[k];
  }
  return Polynomial(std::move(acc), Basis::Chebyshev);
}

Polynomial to_basis(const Polynomial& p, Basis basis) {
  return basis == Basis::Monomial ? to_monomial(p) : to_chebyshev(p);
}

Polynomial combine(cplx a, const Polynomial& p, cplx b, const Polynomial& q) {
  const Polynomial qq = to_basis(q, p.basis());
  std::vector<cplx> c(std::max(p.coeffs().size(), qq.coeffs().size()), 0.0);
  for (std::size_t j = 0; j < p.coeffs().size(); ++j) c[j] += a * p.coeffs()[j];
  for (std::size_t j = 0; j < qq.coeffs().size(); ++j) c[j] += b * qq.coeffs()[j];
  return Polynomial(std::move(c), p.basis());
}

double h(double t) {
  if (!(t >= 1.0)) throw InputError("h(t) needs t >= 1");
  // t + sqrt((t-1)(t+1)) keeps precision near t = 1
  return t + std::sqrt((t - 1.0) * (t + 1.0));
}

double g(double t) {
  if (!(t >= 1.0)) throw InputError("g(t) needs t >= 1");
  return 0.5 * (t + 1.0 / t);
}

double g_hat(double t) {
  if (!(t >= 1.0)) throw InputError("g_hat(t) needs t >= 1");
  return 0.5 * (t - 1.0 / t);
}

namespace {

constexpr int kLogFactorialTable = 20000;

const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogFactorialTable + 1, 0.0);
    long double acc = 0.0L;
    for (int n = 2; n <= kLogFactorialTable; ++n) {
      acc += std::log(static_cast<long double>(n));
      t[n] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw InputError("log_factorial needs n >= 0");
  if (n <= 20) {
    unsigned long long f = 1;
    for (int j = 2; j <= n; ++j) f *= static_cast<unsigned long long>(j);
    return std::log(static_cast<double>(f));
  }
  if (n <= kLogFactorialTable) return log_factorial_table()[n];
  long double acc = log_factorial_table()[kLogFactorialTable];
  for (int j = kLogFactorialTable + 1; j <= n; ++j) acc += std::log(static_cast<long double>(j));
  return static_cast<double>(acc);
}

double log_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw InputError("log_binomial needs 0 <= k <= n");
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_falling_factorial(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw InputError("log_falling_factorial needs 0 <= k <= n");
  return log_factorial(n) - log_factorial(n - k);
}

double log_chebyshev_derivative_at_one(int n, int k) {
  if (n < 0 || k < 0) throw InputError("chebyshev derivative needs n, k >= 0");
  if (k > n) return -INFINITY;
  double acc = 0.0;
  for (int j = 0; j < k; ++j)
    acc += std::log(static_cast<double>(n - j) * static_cast<double>(n + j)) - std::log(2.0 * j + 1.0);
  return acc;
}

double chebyshev_derivative_at_one(int n, int k) {
  if (k > n) return 0.0;
  double acc = 1.0;
  for (int j = 0; j < k; ++j)
    acc *= static_cast<double>(n - j) * static_cast<double>(n + j) / (2.0 * j + 1.0);
  return acc;
}

double log_chebyshev_T(int n, double x) {
  if (!(x >= 1.0)) throw InputError("log_chebyshev_T needs x >= 1");
  if (n == 0) return 0.0;
  const double a = static_cast<double>(n) * std::acosh(x);
  // log cosh(a) = a + log1p(exp(-2a)) - log 2
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

double acosh1p(double r) {
  if (!(r >= 0.0)) throw InputError("acosh1p needs r >= 0");
  return std::log1p(r + std::sqrt(r * (r + 2.0)));
}

double log_chebyshev_T1p(int n, double r) {
  if (n == 0) return 0.0;
  const double a = static_cast<double>(n) * acosh1p(r);
  if (a < 20.0) {
    const double s = std::sinh(0.5 * a);
    return std::log1p(2.0 * s * s);
  }
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

}  // namespace extremal::poly
