#pragma once

#include <functional>
#include <string>
#include <vector>

#include "extremal/engine.hpp"
#include "extremal/sets.hpp"

namespace extremal::radial {

using sets::CompactSet;

// rho(r) = log phi(r). Inside the functionals below phi_n(r) is taken as phi(r)^n.
struct RadialProfile {
  std::string source;
  std::function<double(double)> log_phi;
  bool closed = true;
  int nmax = 0;  // degree of the phi_n^(1/n) approximation when not closed

  double rho(double r) const;

  static RadialProfile closed_form(const CompactSet& set);
  // phi_n(r)^(1/n) from the radial LP at degree nmax (memoised; an under-estimate of phi).
  static RadialProfile from_lp(const CompactSet& set, int nmax = 32, int density = 0);
  static RadialProfile from_coeff(const sets::CoeffNorm& q, int nmax = 32);
  // closed form when registered, otherwise the LP approximation
  static RadialProfile for_set(const CompactSet& set);
};

// Supremum of a log-domain objective.
struct SupResult {
  double log_value = 0.0;
  double value = 1.0;
  double arg = 0.0;   // scalar argmax (grid sups)
  int n_at = 0;       // attaining degree (discrete sups)
  int k_at = 0;
  int truncation = 0;
  bool at_boundary = false;
  bool converged = true;
};

struct LogGridOptions {
  double lo = 1e-6;
  double hi = 1e6;
  int points = 961;
  double refine_tol = 5e-3;  // two refinement levels must agree within this relative change
};

// sup of f(x) over a log-spaced grid plus two refinement passes around the argmax; f returns log values.
SupResult sup_log_grid(const std::function<double(double)>& f, const LogGridOptions& opts = {});

// P_m(r) = sup_{n <= Nmax} phi(r / n^m)^n.
SupResult plesniak_P(const RadialProfile& p, double m, double r, int nmax = 256);
// Same supremum under its starred name; equal to P_m when phi_n = phi^n.
SupResult plesniak_P_star(const RadialProfile& p, double m, double r, int nmax = 256);
// B_m(r) = sup_{n <= Nmax, k <= Kmax} phi(r (k/n)^m)^(n/k).
SupResult plesniak_B(const RadialProfile& p, double m, double r, int nmax = 256, int kmax = 256);

struct BStar {
  SupResult direct;      // sup_sigma phi(r sigma)^(1 / sigma^(1/m))
  double via_A = 0.0;    // e^(A_m r^(1/m))
  double A = 0.0;
};
BStar B_star(const RadialProfile& p, double m, double r);

// B(gamma) = sup_r rho(r) / r^gamma; A_m = B(1/m); H_gamma = 1 / (B(gamma) gamma e)^(1/gamma).
SupResult B_gamma(const RadialProfile& p, double gamma);
SupResult A_const(const RadialProfile& p, double m);
double H_gamma(const RadialProfile& p, double gamma);

// C_P(m) = sup_t t / P_m(t).
SupResult C_P_const(const RadialProfile& p, double m, int nmax = 256);
// C_B(m) = sup_t t / B*_m(t) with B*_m(t) = e^(A_m t^(1/m)); equals H_(1/m).
struct CBResult {
  SupResult sup;
  double H = 0.0;
};
CBResult C_B_const(const RadialProfile& p, double m);

// R_k(r) = sup_n phi_n(r (k!/M_n(k))^(1/k))^(1/k); R(r) = sup over 1 <= k <= n as well.
SupResult R_k(const RadialProfile& p, const engine::MarkovTable& table, int k, double r, int nmax = 256);
struct RAll {
  SupResult sup;
  double a = 0.0;                 // sup_n sup_{k,l} M_n(l)^(1/l) / M_n(k)^(1/k)
  double majorant = 0.0;          // e^(a r), infinite when a is
};
RAll R_all(const RadialProfile& p, const engine::MarkovTable& table, double r, int nmax = 256);

struct Theorem511Report {
  double max_violation = 0.0;  // max of lhs / rhs - 1 (log-domain ratio exponentiated)
  double worst_r = 0.0;
  int worst_k = 0;
  int checked = 0;
  bool pass = false;
};
// P*_m(r k^m)^(1/k) <= max(sup_{sigma >= 1} phi(r sigma)^(1/sigma^(1/m)), phi(r) P*_m(r)).
Theorem511Report theorem_5_11_check(const RadialProfile& p, double m, const std::vector<double>& rs,
                                    const std::vector<int>& ks, int nmax = 256, double slack = 0.01);

struct LaplacianReport {
  double max_rel_error = 0.0;
  double worst_s = 0.0;
  int checked = 0;
  int skipped = 0;
  bool pass = false;
};
// Central differences (h = 1e-3 s) of log phi(s) against the registry Laplacian on s in [0.1, 10].
LaplacianReport laplacian_verify(const CompactSet& set, int points = 200, double tol = 1e-3);

struct MonnReport {
  std::vector<double> t;
  std::vector<double> estimate;  // e^t u''(t) / u'(t)
  std::vector<double> rel_error;
  double limit = 0.0;
  bool decreasing = false;
  bool pass = false;
};
MonnReport monn_limit_verify(const CompactSet& set, double tol = 1e-2);

}  // namespace extremal::radial
