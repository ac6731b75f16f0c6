#include "extremal/psi.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "extremal/engine.hpp"
#include "extremal/errors.hpp"

namespace extremal::engine {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double psi_product(int m, cplx z1, cplx z2) {
  if (m < 1) throw InputError("psi_product needs m >= 1");
  const double re = (z1 * std::conj(z2)).real(), im = (z1 * std::conj(z2)).imag();
  const double s = std::norm(z1) + std::norm(z2);
  double acc = 0.0;
  for (int j = 1; j <= m; ++j) {
    // zeta_j = exp(i pi (2j-1) / 2m), all in the upper half plane
    const double th = kPi * (2.0 * j - 1.0) / (2.0 * m);
    const double factor = s - 2.0 * std::cos(th) * re + 2.0 * std::abs(std::sin(th) * im);
    acc += 0.5 * std::log(std::max(factor, 0.0));
  }
  return std::exp(acc / m);
}

double lp_norm(int m, double x1, double x2) {
  if (m < 1) throw InputError("lp_norm needs m >= 1");
  const double a = std::max(std::abs(x1), std::abs(x2));
  if (a == 0.0) return 0.0;
  return a * std::pow(std::pow(std::abs(x1) / a, 2.0 * m) + std::pow(std::abs(x2) / a, 2.0 * m), 1.0 / (2.0 * m));
}

double lp_norm_profile(int m, double t) { return std::log(lp_norm(m, 1.0, t)); }

PoissonResult psi_poisson(const std::function<double(double)>& u, cplx z1, cplx z2, double tol) {
  if (z1 == 0.0) throw InputError("psi_poisson needs z1 != 0");
  const cplx zeta = z2 / z1;
  const double x = zeta.real(), y = std::abs(zeta.imag());
  PoissonResult res;
  double pu = 0.0;
  if (y == 0.0) {
    pu = u(x);
  } else {
    boost::math::quadrature::tanh_sinh<double> integrator;
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    pu = integrator.integrate([&](double s) { return u(x + y * std::tan(s)); }, -kPi / 2, kPi / 2, tol, &err, &l1, &levels) /
         kPi;
    res.error = err / kPi;
    res.converged = std::isfinite(pu) && res.error <= tol * std::max(1.0, l1 / kPi);
  }
  if (!res.converged) throw NumericalError("psi_poisson: quadrature did not converge");
  res.value = std::abs(z1) * std::exp(pu);
  return res;
}

SphereGrid sphere_grid(const std::function<double(double, double)>& norm, int count) {
  if (count < 8) throw InputError("sphere grid needs at least 8 points");
  SphereGrid g;
  for (int j = 0; j < count; ++j) {
    const double th = kPi * j / count, c = std::cos(th), s = std::sin(th);
    const double nv = norm(c, s);
    if (!(nv > 0.0) || !std::isfinite(nv)) throw InputError("sphere grid: norm must be positive on the circle");
    g.points.push_back({c / nv, s / nv});
  }
  return g;
}

double psi_homogeneous_lp(const SphereGrid& grid, int n, cplx z1, cplx z2) {
  if (n < 1 || n > 12) throw InputError("psi_homogeneous_lp needs 1 <= n <= 12");
  if (grid.points.size() < sets::required_nodes(n))
    throw InputError("sphere grid too coarse for degree " + std::to_string(n));
  // P = sum_k c_k z1^(n-k) z2^k, c_k = a_k + i b_k
  const int nb = n + 1;
  LinearProgram lp(2 * nb);
  std::vector<double> row(2 * nb);
  std::vector<double> mono(nb);
  for (const auto& x : grid.points) {
    for (int k = 0; k <= n; ++k) mono[k] = std::pow(x[0], n - k) * std::pow(x[1], k);
    for (int a = 0; a < kPolygonSides; ++a) {
      const double c = std::cos(2.0 * kPi * a / kPolygonSides), s = std::sin(2.0 * kPi * a / kPolygonSides);
      for (int k = 0; k <= n; ++k) {
        row[k] = c * mono[k];
        row[nb + k] = -s * mono[k];
      }
      lp.add_row(row, Relation::LessEqual, 1.0);
    }
  }
  std::vector<cplx> v(nb);
  for (int k = 0; k <= n; ++k) v[k] = std::pow(z1, n - k) * std::pow(z2, k);
  double best = 0.0;
  for (int j = 0; j < kObjectiveAngles / kPolygonSides; ++j) {
    const cplx e = std::polar(1.0, 2.0 * kPi * j / kObjectiveAngles);
    for (int k = 0; k <= n; ++k) {
      const cplx ev = e * v[k];
      lp.objective[k] = ev.real();
      lp.objective[nb + k] = -ev.imag();
    }
    const auto sol = solve_lp(lp);
    if (sol.status != LPStatus::Optimal) throw NumericalError("psi LP " + to_string(sol.status));
    best = std::max(best, sol.value);
  }
  return std::pow(best, 1.0 / n);
}

}  // namespace extremal::engine
