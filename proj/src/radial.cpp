#include "extremal/radial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "extremal/errors.hpp"

namespace extremal::radial {

namespace {

double finite_or_ninf(double v) { return std::isnan(v) ? -INFINITY : v; }

SupResult finish(double log_value) {
  SupResult s;
  s.log_value = log_value;
  s.value = std::exp(log_value);
  return s;
}

// n rho(r / n^m) maximised over n <= nmax.
SupResult p_sup(const RadialProfile& p, double m, double r, int nmax) {
  if (!(m >= 1.0)) throw InputError("Plesniak functions need m >= 1");
  if (!(r >= 0.0)) throw InputError("Plesniak functions need r >= 0");
  if (nmax < 1) throw InputError("Nmax must be >= 1");
  double best = 0.0;
  int at = 1;
  for (int n = 1; n <= nmax; ++n) {
    const double v = n * p.rho(r / std::pow(n, m));
    if (v > best) {
      best = v;
      at = n;
    }
  }
  SupResult s = finish(best);
  s.n_at = at;
  s.truncation = nmax;
  s.at_boundary = at == nmax && r > 0.0;
  return s;
}

}  // namespace

double RadialProfile::rho(double r) const {
  if (r <= 0.0) return 0.0;
  return log_phi(r);
}

RadialProfile RadialProfile::closed_form(const CompactSet& set) {
  if (!sets::has_closed_phi(set)) throw UnsupportedError("no closed phi for " + set.describe());
  RadialProfile p;
  p.source = set.describe();
  p.log_phi = [set](double r) { return sets::closed_log_phi(set, r); };
  return p;
}

RadialProfile RadialProfile::from_lp(const CompactSet& set, int nmax, int density) {
  if (nmax < 1) throw InputError("profile degree must be >= 1");
  struct State {
    CompactSet set;
    sets::Grid grid;
    int n;
    std::mutex mu;
    std::map<double, double> memo;
  };
  const int d = density > 0 ? density : sets::min_density_for_degree(set, nmax);
  auto st = std::shared_ptr<State>(new State{set, sets::discretize(set, d), nmax, {}, {}});
  RadialProfile p;
  p.source = set.describe() + ";lp-n=" + std::to_string(nmax);
  p.closed = false;
  p.nmax = nmax;
  p.log_phi = [st](double r) {
    {
      std::lock_guard lock(st->mu);
      if (auto it = st->memo.find(r); it != st->memo.end()) return it->second;
    }
    const double v = std::log(engine::phi_n_radial(st->set, st->grid, st->n, r)) / st->n;
    std::lock_guard lock(st->mu);
    st->memo[r] = v;
    return v;
  };
  return p;
}

RadialProfile RadialProfile::from_coeff(const sets::CoeffNorm& q, int nmax) {
  if (nmax < 1) throw InputError("profile degree must be >= 1");
  RadialProfile p;
  p.source = "coeff?m=" + std::to_string(q.m) + "&tau=" + std::to_string(q.tau) + ";n=" + std::to_string(nmax);
  p.closed = false;
  p.nmax = nmax;
  p.log_phi = [q, nmax](double r) { return engine::log_phi_n_coeff(q, nmax, r) / nmax; };
  return p;
}

RadialProfile RadialProfile::for_set(const CompactSet& set) {
  return sets::has_closed_phi(set) ? closed_form(set) : from_lp(set);
}

SupResult sup_log_grid(const std::function<double(double)>& f, const LogGridOptions& opts) {
  if (!(opts.lo > 0.0) || !(opts.hi > opts.lo) || opts.points < 3) throw InputError("bad log grid");
  auto scan = [&](double lo, double hi, int& idx, double& arg) {
    const double a = std::log(lo), b = std::log(hi);
    double best = -INFINITY;
    idx = 0;
    arg = lo;
    for (int i = 0; i < opts.points; ++i) {
      const double x = std::exp(a + (b - a) * i / (opts.points - 1));
      const double v = finite_or_ninf(f(x));
      if (v > best) {
        best = v;
        idx = i;
        arg = x;
      }
    }
    return best;
  };
  int idx = 0;
  double arg = 0.0;
  const double coarse = scan(opts.lo, opts.hi, idx, arg);
  SupResult s;
  s.at_boundary = idx == 0 || idx == opts.points - 1;
  const double step = std::pow(opts.hi / opts.lo, 1.0 / (opts.points - 1));
  double level = coarse, prev = coarse;
  double width = step;
  for (int pass = 0; pass < 2; ++pass) {
    const double lo = std::max(opts.lo, arg / width), hi = std::min(opts.hi, arg * width);
    int i2 = 0;
    double a2 = arg;
    const double v = scan(lo, hi, i2, a2);
    prev = level;
    if (v >= level) {
      level = v;
      arg = a2;
    }
    width = std::pow(hi / lo, 1.0 / (opts.points - 1));
  }
  s.log_value = level;
  s.value = std::exp(level);
  s.arg = arg;
  s.converged = std::isfinite(level) && std::abs(level - prev) <= opts.refine_tol * std::max(1.0, std::abs(level));
  return s;
}

SupResult plesniak_P(const RadialProfile& p, double m, double r, int nmax) { return p_sup(p, m, r, nmax); }

SupResult plesniak_P_star(const RadialProfile& p, double m, double r, int nmax) { return p_sup(p, m, r, nmax); }

SupResult plesniak_B(const RadialProfile& p, double m, double r, int nmax, int kmax) {
  if (!(m > 0.0)) throw InputError("B_m needs m > 0");
  if (!(r >= 0.0)) throw InputError("B_m needs r >= 0");
  if (nmax < 1 || kmax < 1) throw InputError("Nmax and Kmax must be >= 1");
  double best = 0.0;
  int bn = 1, bk = 1;
  for (int n = 1; n <= nmax; ++n)
    for (int k = 1; k <= kmax; ++k) {
      const double v = static_cast<double>(n) / k * p.rho(r * std::pow(static_cast<double>(k) / n, m));
      if (v > best) {
        best = v;
        bn = n;
        bk = k;
      }
    }
  SupResult s = finish(best);
  s.n_at = bn;
  s.k_at = bk;
  s.truncation = nmax;
  s.at_boundary = r > 0.0 && (bn == nmax || bk == kmax);
  return s;
}

SupResult B_gamma(const RadialProfile& p, double gamma) {
  if (!(gamma > 0.0) || gamma > 1.0) throw InputError("B(gamma) needs 0 < gamma <= 1");
  return sup_log_grid([&](double r) { return std::log(p.rho(r)) - gamma * std::log(r); });
}

SupResult A_const(const RadialProfile& p, double m) {
  if (!(m >= 1.0)) throw InputError("A_m needs m >= 1");
  return B_gamma(p, 1.0 / m);
}

double H_gamma(const RadialProfile& p, double gamma) {
  const double b = B_gamma(p, gamma).value;
  return 1.0 / std::pow(b * gamma * std::numbers::e, 1.0 / gamma);
}

BStar B_star(const RadialProfile& p, double m, double r) {
  if (!(m >= 1.0)) throw InputError("B*_m needs m >= 1");
  if (!(r >= 0.0)) throw InputError("B*_m needs r >= 0");
  BStar b;
  b.A = A_const(p, m).value;
  if (r == 0.0) {
    b.direct = finish(0.0);
    b.via_A = 1.0;
    return b;
  }
  b.direct = sup_log_grid([&](double s) { return p.rho(r * s) / std::pow(s, 1.0 / m); });
  b.via_A = std::exp(b.A * std::pow(r, 1.0 / m));
  return b;
}

SupResult C_P_const(const RadialProfile& p, double m, int nmax) {
  SupResult s = sup_log_grid([&](double t) { return std::log(t) - p_sup(p, m, t, nmax).log_value; });
  s.truncation = nmax;
  return s;
}

CBResult C_B_const(const RadialProfile& p, double m) {
  const double A = A_const(p, m).value;
  CBResult c;
  c.sup = sup_log_grid([&](double t) { return std::log(t) - A * std::pow(t, 1.0 / m); });
  c.H = H_gamma(p, 1.0 / m);
  return c;
}

SupResult R_k(const RadialProfile& p, const engine::MarkovTable& table, int k, double r, int nmax) {
  if (k < 1) throw InputError("R_k needs k >= 1");
  if (!(r >= 0.0)) throw InputError("R_k needs r >= 0");
  const int top = std::min(nmax, table.nmax);
  const double lkf = poly::log_factorial(k);
  double best = 0.0;
  int at = k;
  for (int n = k; n <= top; ++n) {
    const double lm = table.log_value(n, k);
    if (!std::isfinite(lm)) continue;
    const double arg = r * std::exp((lkf - lm) / k);
    const double v = n * p.rho(arg) / k;
    if (v > best) {
      best = v;
      at = n;
    }
  }
  SupResult s = finish(best);
  s.n_at = at;
  s.k_at = k;
  s.truncation = top;
  s.at_boundary = r > 0.0 && at == top;
  return s;
}

RAll R_all(const RadialProfile& p, const engine::MarkovTable& table, double r, int nmax) {
  if (!(r >= 0.0)) throw InputError("R needs r >= 0");
  const int top = std::min(nmax, table.nmax);
  RAll out;
  double best = 0.0, a = 0.0;
  int bn = 1, bk = 1;
  for (int n = 1; n <= top; ++n) {
    double hi = -INFINITY, lo = INFINITY;
    for (int k = 1; k <= n; ++k) {
      const double lm = table.log_value(n, k);
      if (!std::isfinite(lm)) continue;
      hi = std::max(hi, lm / k);
      lo = std::min(lo, lm / k);
      const double v = n * p.rho(r * std::exp((poly::log_factorial(k) - lm) / k)) / k;
      if (v > best) {
        best = v;
        bn = n;
        bk = k;
      }
    }
    if (std::isfinite(hi)) a = std::max(a, std::exp(hi - lo));
  }
  out.sup = finish(best);
  out.sup.n_at = bn;
  out.sup.k_at = bk;
  out.sup.truncation = top;
  out.a = a;
  out.majorant = std::exp(a * r);
  return out;
}

Theorem511Report theorem_5_11_check(const RadialProfile& p, double m, const std::vector<double>& rs,
                                    const std::vector<int>& ks, int nmax, double slack) {
  Theorem511Report rep;
  rep.max_violation = -INFINITY;
  LogGridOptions tail;
  tail.lo = 1.0;
  tail.points = 481;
  for (double r : rs)
    for (int k : ks) {
      if (k < 1) throw InputError("theorem check needs k >= 1");
      ++rep.checked;
      if (r == 0.0) continue;  // both sides are 1
      const double lhs = p_sup(p, m, r * std::pow(k, m), nmax).log_value / k;
      const double first = sup_log_grid([&](double s) { return p.rho(r * s) / std::pow(s, 1.0 / m); }, tail).log_value;
      const double second = p.rho(r) + p_sup(p, m, r, nmax).log_value;
      const double viol = std::expm1(lhs - std::max(first, second));
      if (viol > rep.max_violation) {
        rep.max_violation = viol;
        rep.worst_r = r;
        rep.worst_k = k;
      }
    }
  if (!std::isfinite(rep.max_violation)) rep.max_violation = 0.0;
  rep.pass = rep.max_violation <= slack;
  return rep;
}

LaplacianReport laplacian_verify(const CompactSet& set, int points, double tol) {
  if (!sets::has_closed_laplacian(set)) throw UnsupportedError("no closed Laplacian for " + set.describe());
  if (points < 2) throw InputError("laplacian_verify needs at least two points");
  LaplacianReport rep;
  auto f = [&](double s) { return sets::closed_log_phi(set, s); };
  for (int i = 0; i < points; ++i) {
    const double s = 0.1 * std::pow(100.0, static_cast<double>(i) / (points - 1));
    const double h = 1e-3 * s;
    const double fp = f(s + h), f0 = f(s), fm = f(s - h);
    const double d1 = (fp - fm) / (2.0 * h), d2 = (fp - 2.0 * f0 + fm) / (h * h);
    if (!(d1 > 0.0) || !std::isfinite(d2)) {
      ++rep.skipped;
      continue;
    }
    const double exact = sets::closed_laplacian(set, s);
    const double err = std::abs(d2 + d1 / s - exact) / std::abs(exact);
    ++rep.checked;
    if (err > rep.max_rel_error) {
      rep.max_rel_error = err;
      rep.worst_s = s;
    }
  }
  rep.pass = rep.checked > 0 && rep.max_rel_error <= tol;
  return rep;
}

MonnReport monn_limit_verify(const CompactSet& set, double tol) {
  if (!sets::has_closed_laplacian(set)) throw UnsupportedError("no Laplacian limit for " + set.describe());
  MonnReport rep;
  rep.limit = sets::closed_laplacian_limit(set);
  auto u = [&](double t) { return sets::closed_log_phi(set, std::exp(t)); };
  constexpr double d = 0.1;
  for (double t : {8.0, 10.0, 12.0}) {
    const double p2 = u(t + 2 * d), p1 = u(t + d), z = u(t), m1 = u(t - d), m2 = u(t - 2 * d);
    const double d1 = (-p2 + 8 * p1 - 8 * m1 + m2) / (12 * d);
    const double d2 = (-p2 + 16 * p1 - 30 * z + 16 * m1 - m2) / (12 * d * d);
    const double est = std::exp(t) * d2 / d1;
    rep.t.push_back(t);
    rep.estimate.push_back(est);
    rep.rel_error.push_back(std::abs(est - rep.limit) / rep.limit);
  }
  rep.decreasing = rep.rel_error[0] >= rep.rel_error[1] && rep.rel_error[1] >= rep.rel_error[2];
  rep.pass = rep.decreasing && *std::max_element(rep.rel_error.begin(), rep.rel_error.end()) <= tol;
  return rep;
}

}  // namespace extremal::radial
