#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "extremal/lp.hpp"
#include "extremal/norms.hpp"
#include "extremal/poly.hpp"
#include "extremal/sets.hpp"

namespace extremal::engine {

using cplx = std::complex<double>;
using sets::CompactSet;
using sets::Grid;
using sets::NormSpec;

// Polygon relaxation: 16 half-planes per node, so the LP modulus can exceed the true one by this factor.
inline constexpr int kPolygonSides = 16;
inline constexpr int kObjectiveAngles = 64;
double polygon_gap();  // sec(pi/16) - 1

// Bound on ||P||_E / max_j |P(z_j)| for deg P <= n: the boundary pullback is a trigonometric
// polynomial of degree n, so its maximum drops by at most n^2 (gap/2)^2 / 2 at the nearest node.
// Complex grids also carry the polygon factor sec(pi/16).
double grid_norm_factor(const Grid& grid, int n);

// Constraint system {|P| <= 1 on the grid} for polynomials of degree <= n.
// Interval grids use real Chebyshev coefficients in the affine variable;
// other grids use complex coefficients in the scaled monomial basis (z/s)^k.
class GridLP {
 public:
  GridLP(const Grid& grid, int n);

  int degree() const { return n_; }
  bool is_real() const { return real_; }
  const Grid& grid() const { return grid_; }

  // d-th derivative of each basis function at w.
  std::vector<cplx> basis_values(cplx w, int deriv = 0) const;
  // max over the 64 objective angles of max Re(e^{i theta} L(P)) where L(P) = sum c_k values_k.
  double max_functional(const std::vector<cplx>& values) const;
  poly::Polynomial polynomial_from(const std::vector<double>& x) const;
  long lp_solves() const { return solves_; }

  const LinearProgram& constraints() const { return lp_; }

 private:
  Grid grid_;
  int n_;
  bool real_;
  double mid_ = 0.0, half_ = 1.0;  // interval affine map
  double scale_ = 1.0;             // monomial scaling
  LinearProgram lp_;
  mutable long solves_ = 0;
};

enum class PointMethod { Auto, LP };

// Phi_n(E, w) = sup{|P(w)| : ||P||_E <= 1, deg P <= n}.
double phi_n_point(const CompactSet& set, const Grid& grid, cplx w, int n, PointMethod method = PointMethod::Auto);

enum class MarkovMethod { ClosedForm, LP, LowerBound };
std::string to_string(MarkovMethod m);

struct MarkovValue {
  double value = 0.0;
  MarkovMethod method = MarkovMethod::ClosedForm;
  cplx argmax = 0.0;  // evaluation point of the derivative (LP only)
};

struct MarkovOptions {
  int coarse_points = 64;  // derivative evaluation sub-grid for complex sets
  int restarts = 20;       // integral norms
  std::uint64_t seed = 20240601;
};

// M_n(q, k) = sup{q(P^(k)) : q(P) <= 1, deg P <= n}.
MarkovValue markov_factor(const NormSpec& q, int n, int k, const MarkovOptions& opts = {});

struct MarkovTable {
  std::string descriptor;
  int nmax = 0;
  MarkovMethod method = MarkovMethod::ClosedForm;
  std::vector<std::vector<double>> log_values;  // [n][k], k = 0..n

  double log_value(int n, int k) const;
  double value(int n, int k) const;
};

MarkovTable markov_table(const NormSpec& q, int nmax, const MarkovOptions& opts = {});
// V. Markov table for [a,b] and the disk, from exact formulas.
MarkovTable closed_markov_table(const CompactSet& set, int nmax);
// Alternative closed expression for the interval table, reported next to the classical value.
double interval_markov_display(int n, int k);

struct RadialOptions {
  int coarse_points = 64;
  bool prune = true;
};

// phi_n(E, r) = sup over z in E, |zeta| <= r of Phi_n(E, z + zeta).
double phi_n_radial(const CompactSet& set, const Grid& grid, int n, double r, const RadialOptions& opts = {});
// Exact phi_n for the coefficient norm (maximum over the scaled monomials).
double phi_n_coeff(const sets::CoeffNorm& q, int n, double r);
double log_phi_n_coeff(const sets::CoeffNorm& q, int n, double r);

struct ExtremalCurve {
  std::string descriptor;
  int degree = 0;
  std::vector<double> t;
  std::vector<double> u;  // log phi_n(e^t)
  std::string method;
};

ExtremalCurve u_n_curve(const CompactSet& set, const Grid& grid, int n, const std::vector<double>& t_grid,
                        const RadialOptions& opts = {});

struct CapacityEstimate {
  double value = 0.0;
  double r_at_sup = 0.0;
  double tail_change = 0.0;  // relative change between the last two r samples
  bool heuristic = false;
  std::string method;
};

// C_n = sup_r r / phi_n(r)^(1/n) over a log grid r in [1e-4, 1e5].
CapacityEstimate capacity_Cn(const CompactSet& set, const Grid& grid, int n, int points_per_decade = 2,
                             const RadialOptions& opts = {});
// Registry value when known, else extrapolation of C_4, C_8 in 1/n (flagged heuristic).
CapacityEstimate capacity_C(const CompactSet& set, int density = 0);

struct MonicResult {
  double t_n = 0.0;        // norm of the returned minimiser
  double lower_bound = 0.0;
  poly::Polynomial minimizer;
  std::string method;
};

// t_n(q) = inf{q(P) : P monic of degree n}.
MonicResult chebyshev_monic(const NormSpec& q, int n);

// p = 2 radial sums and the one-dimensional ball functional.
double log_phi2_disk(int n, double r);
double log_phi2_interval(int n, double r);
inline double phi2_disk(int n, double r) { return std::exp(log_phi2_disk(n, r)); }
inline double phi2_interval(int n, double r) { return std::exp(log_phi2_interval(n, r)); }

struct ScaledInf {
  double value = 0.0;
  double log_value = 0.0;
  double r_star = 0.0;
};

// inf_r r^{-l} f(r) with f given as log f(r); golden section on log r in [-30, 30].
ScaledInf inf_r_scaled(const std::function<double(double)>& log_f, int l, double tol = 1e-10);

struct EEstimate {
  double value = 0.0;
  int n_at = 0;
  int l_at = 0;
  int truncation = 0;
  double last_increment = 0.0;  // sup at Nmax minus sup below Nmax (log scale)
};

// Truncated supremum from the Markov-factor definition of e(q).
EEstimate estimate_e(const MarkovTable& table, int nmax = 32);

struct SandwichReport {
  bool pass = false;
  double constant = 0.0;        // e or e^(sqrt2+sqrt6)
  double e_est = 0.0;
  double worst_lower = 0.0;     // min over (n,l) of inf / (M/l!)  (must be >= 1)
  double worst_upper = 0.0;     // max over (n,l) of inf / (const^l M/l!)  (must be <= 1)
  double worst_upper_est = 0.0; // max of inf / (e_est^l M/l!)
  int nmax = 0;
};

// log (sum_k (M_n(k)/k!)^2 r^(2k))^(1/2) from a Markov table.
double log_phi2_from_table(const MarkovTable& table, int n, double r);

SandwichReport e_sandwich_check(const CompactSet& set, int nmax = 10);

}  // namespace extremal::engine
