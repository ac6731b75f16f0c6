#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace extremal::engine {

using cplx = std::complex<double>;

// Homogeneous extremal function of the unit sphere S_m of N_m(x) = (x1^2m + x2^2m)^(1/2m) in R^2,
// product form over the 2m-th roots of -1 in the upper half plane.
double psi_product(int m, cplx z1, cplx z2);

// u(t) = log N_m(1, t).
double lp_norm_profile(int m, double t);
double lp_norm(int m, double x1, double x2);

struct PoissonResult {
  double value = 0.0;
  double error = 0.0;  // quadrature error estimate in the exponent
  bool converged = true;
};

// |z1| exp Pu(z2/z1) with Pu(x + iy) = (1/pi) int u(x + |y| tan s) ds over s in (-pi/2, pi/2).
PoissonResult psi_poisson(const std::function<double(double)>& u, cplx z1, cplx z2, double tol = 1e-6);

// Points of the unit sphere {N(x) = 1} at equally spaced angles in [0, pi); the other half follows from P(-x) = (-1)^n P(x).
struct SphereGrid {
  std::vector<std::array<double, 2>> points;
};
SphereGrid sphere_grid(const std::function<double(double, double)>& norm, int count = 256);

// sup |P(z)|^(1/n) over homogeneous P of degree n with |P| <= 1 on the grid (polygon LP), n <= 12.
double psi_homogeneous_lp(const SphereGrid& grid, int n, cplx z1, cplx z2);

}  // namespace extremal::engine
