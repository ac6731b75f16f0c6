#pragma once

#include <complex>
#include <vector>

namespace extremal::poly {

using cplx = std::complex<double>;

enum class Basis { Monomial, Chebyshev };

// Monomial coefficients lose too much to cancellation past this degree.
inline constexpr int kMonomialDegreeCap = 30;

class Polynomial {
 public:
  Polynomial();
  explicit Polynomial(std::vector<cplx> coeffs, Basis basis = Basis::Monomial);
  static Polynomial real(const std::vector<double>& coeffs, Basis basis = Basis::Monomial);

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  Basis basis() const { return basis_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == cplx(0.0); }

  cplx operator()(cplx z) const;

 private:
  std::vector<cplx> coeffs_;
  Basis basis_;
};

cplx eval(const Polynomial& p, cplx z);
Polynomial derivative(const Polynomial& p, int k);
Polynomial chebyshev_T(int n);
Polynomial to_monomial(const Polynomial& p);
Polynomial to_chebyshev(const Polynomial& p);
Polynomial to_basis(const Polynomial& p, Basis basis);

// a*p + b*q; q is converted to p's basis first.
Polynomial combine(cplx a, const Polynomial& p, cplx b, const Polynomial& q);

// h(t) = t + sqrt(t^2-1), g(t) = (t + 1/t)/2, g_hat(t) = (t - 1/t)/2, all for t >= 1.
double h(double t);
double g(double t);
double g_hat(double t);

double log_factorial(int n);
double log_binomial(int n, int k);
double log_falling_factorial(int n, int k);  // log n!/(n-k)!

// T_n^{(k)}(1) = prod_{j<k} (n^2 - j^2)/(2j+1), and its log.
double chebyshev_derivative_at_one(int n, int k);
double log_chebyshev_derivative_at_one(int n, int k);

// log T_n(x) for x >= 1 without overflow.
double log_chebyshev_T(int n, double x);
// Same as log T_n(1 + r) and acosh(1 + r), accurate for tiny r >= 0.
double log_chebyshev_T1p(int n, double r);
double acosh1p(double r);

}  // namespace extremal::poly
