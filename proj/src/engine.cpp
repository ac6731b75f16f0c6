#include "extremal/engine.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "extremal/errors.hpp"

namespace extremal::engine {

namespace {

constexpr double kPi = std::numbers::pi;

// Monomial coefficients of p(alpha*x + beta) from those of p(y).
std::vector<cplx> compose_affine(const std::vector<cplx>& c, double alpha, double beta) {
  std::vector<cplx> acc{c.back()};
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
    std::vector<cplx> next(acc.size() + 1, 0.0);
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j + 1] += alpha * acc[j];
      next[j] += beta * acc[j];
    }
    next[0] += c[k];
    acc = std::move(next);
  }
  return acc;
}

double lp_value_or_throw(const LPSolution& s, const char* what) {
  if (s.status != LPStatus::Optimal)
    throw NumericalError(std::string(what) + ": LP " + to_string(s.status));
  if (s.primal_violation > 1e-7) throw NumericalError(std::string(what) + ": LP solution violates constraints");
  return s.value;
}

}  // namespace

double polygon_gap() { return 1.0 / std::cos(kPi / kPolygonSides) - 1.0; }

double grid_norm_factor(const Grid& grid, int n) {
  const bool real = grid.parent.is_real();
  // boundary node count: Chebyshev-Lobatto angles are pi/M apart, circle angles 2pi/M
  const double M = real ? static_cast<double>(grid.nodes.size() - 1)
                        : static_cast<double>(grid.nodes.size() - (grid.parent.kind() == sets::SetKind::DiskWithPoint));
  const double half_gap = real ? kPi / (2.0 * M) : kPi / M;
  const double drop = 0.5 * n * n * half_gap * half_gap;
  if (drop >= 0.5) throw NumericalError("grid too coarse for a norm factor");
  return (real ? 1.0 : 1.0 + polygon_gap()) / (1.0 - drop);
}

GridLP::GridLP(const Grid& grid, int n) : grid_(grid), n_(n), real_(grid.parent.is_real()) {
  if (n < 0) throw InputError("degree must be >= 0");
  sets::require_adequate(grid, n);
  if (real_) {
    const auto& iv = std::get<sets::Interval>(grid.parent.variant());
    mid_ = 0.5 * (iv.a + iv.b);
    half_ = 0.5 * (iv.b - iv.a);
    lp_ = LinearProgram(n + 1);
    std::vector<double> row(n + 1), neg(n + 1);
    for (const auto& z : grid.nodes) {
      const double y = (z.real() - mid_) / half_;
      double t0 = 1.0, t1 = y;
      for (int k = 0; k <= n; ++k) {
        double tk = k == 0 ? 1.0 : (k == 1 ? y : 2.0 * y * t1 - t0);
        if (k >= 2) {
          t0 = t1;
          t1 = tk;
        }
        row[k] = tk;
        neg[k] = -tk;
      }
      lp_.add_row(row, Relation::LessEqual, 1.0);
      lp_.add_row(neg, Relation::LessEqual, 1.0);
    }
  } else {
    if (n > 20) throw InputError("complex-coefficient LP limited to degree 20");
    scale_ = 0.0;
    for (const auto& z : grid.nodes) scale_ = std::max(scale_, std::abs(z));
    const int nv = 2 * (n + 1);
    lp_ = LinearProgram(nv);
    std::vector<double> row(nv);
    std::vector<cplx> b(n + 1);
    for (const auto& z : grid.nodes) {
      cplx p = 1.0;
      for (int k = 0; k <= n; ++k) {
        b[k] = p;
        p *= z / scale_;
      }
      for (int a = 0; a < kPolygonSides; ++a) {
        const cplx e = std::polar(1.0, 2.0 * kPi * a / kPolygonSides);
        for (int k = 0; k <= n; ++k) {
          const cplx eb = e * b[k];
          row[k] = eb.real();
          row[n + 1 + k] = -eb.imag();
        }
        lp_.add_row(row, Relation::LessEqual, 1.0);
      }
    }
  }
}

std::vector<cplx> GridLP::basis_values(cplx w, int deriv) const {
  std::vector<cplx> v(n_ + 1, 0.0);
  if (real_) {
    const cplx y = (w - mid_) / half_;
    const double jac = std::pow(1.0 / half_, deriv);
    for (int k = 0; k <= n_; ++k) {
      if (k < deriv) continue;
      v[k] = poly::eval(poly::derivative(poly::chebyshev_T(k), deriv), y) * jac;
    }
  } else {
    for (int k = deriv; k <= n_; ++k) {
      double ff = 1.0;
      for (int j = 0; j < deriv; ++j) ff *= static_cast<double>(k - j);
      v[k] = ff * std::pow(w, k - deriv) / std::pow(scale_, k);
    }
  }
  return v;
}

double GridLP::max_functional(const std::vector<cplx>& values) const {
  LinearProgram lp = lp_;
  const int nb = n_ + 1;
  double best = -INFINITY;
  auto solve_angle = [&](double theta) {
    const cplx e = std::polar(1.0, theta);
    for (int k = 0; k < nb; ++k) {
      const cplx ev = e * values[k];
      if (real_) {
        lp.objective[k] = ev.real();
      } else {
        lp.objective[k] = ev.real();
        lp.objective[nb + k] = -ev.imag();
      }
    }
    ++solves_;
    best = std::max(best, lp_value_or_throw(solve_lp(lp), "extremal LP"));
  };
  if (real_) {
    bool real_values = true;
    for (const auto& v : values) real_values = real_values && v.imag() == 0.0;
    if (real_values) {
      solve_angle(0.0);
    } else {
      for (int j = 0; j < kObjectiveAngles / 2; ++j) solve_angle(2.0 * kPi * j / kObjectiveAngles);
    }
  } else {
    // the polygon is invariant under rotation by 2pi/16, so 64 angles reduce to 4
    for (int j = 0; j < kObjectiveAngles / kPolygonSides; ++j) solve_angle(2.0 * kPi * j / kObjectiveAngles);
  }
  return best;
}

poly::Polynomial GridLP::polynomial_from(const std::vector<double>& x) const {
  if (real_) {
    std::vector<cplx> c(x.begin(), x.begin() + n_ + 1);
    poly::Polynomial cheb(c, poly::Basis::Chebyshev);
    if (mid_ == 0.0 && half_ == 1.0) return cheb;
    const auto mono = poly::to_monomial(cheb);
    return poly::Polynomial(compose_affine(mono.coeffs(), 1.0 / half_, -mid_ / half_));
  }
  std::vector<cplx> c(n_ + 1);
  for (int k = 0; k <= n_; ++k) c[k] = cplx(x[k], x[n_ + 1 + k]) / std::pow(scale_, k);
  return poly::Polynomial(std::move(c));
}

double phi_n_point(const CompactSet& set, const Grid& grid, cplx w, int n, PointMethod method) {
  if (n < 0) throw InputError("degree must be >= 0");
  if (method == PointMethod::Auto) {
    if (const auto* d = std::get_if<sets::Disk>(&set.variant())) return std::pow(std::max(1.0, std::abs(w) / d->radius), n);
  }
  GridLP model(grid, n);
  return model.max_functional(model.basis_values(w));
}

MonicResult chebyshev_monic(const NormSpec& q, int n) {
  if (n < 0) throw InputError("degree must be >= 0");
  MonicResult res;
  if (n == 0) {
    res.minimizer = poly::Polynomial::real({1.0});
    res.t_n = res.lower_bound = q(res.minimizer);
    res.method = "trivial";
    return res;
  }
  switch (q.kind()) {
    case sets::NormKind::Coeff: {
      const auto& c = std::get<sets::CoeffNorm>(q.variant());
      std::vector<double> co(n + 1, 0.0);
      co[n] = 1.0;
      res.minimizer = n <= poly::kMonomialDegreeCap ? poly::Polynomial::real(co) : poly::Polynomial();
      res.t_n = res.lower_bound = std::exp(-(c.m - 1.0) * poly::log_factorial(n) + n * std::log(c.tau));
      res.method = "closed-form";
      return res;
    }
    case sets::NormKind::Sup: {
      const auto& sup = std::get<sets::SupOnSet>(q.variant());
      sets::require_adequate(sup.grid, n);
      if (sup.set.is_real()) {
        const auto& iv = std::get<sets::Interval>(sup.set.variant());
        const double mid = 0.5 * (iv.a + iv.b), half = 0.5 * (iv.b - iv.a);
        const double lead = std::pow(half, n) * std::pow(2.0, 1 - n);
        LinearProgram lp(n + 1);
        lp.objective[n] = -1.0;
        std::vector<double> row(n + 1), neg(n + 1);
        for (const auto& z : sup.grid.nodes) {
          const double y = (z.real() - mid) / half;
          double tprev = 1.0, tcur = y;
          double tn = 0.0;
          for (int k = 0; k <= n; ++k) {
            double tk;
            if (k == 0) tk = 1.0;
            else if (k == 1) tk = y;
            else {
              tk = 2.0 * y * tcur - tprev;
              tprev = tcur;
              tcur = tk;
            }
            if (k < n) {
              row[k] = tk;
              neg[k] = -tk;
            } else {
              tn = tk;
            }
          }
          row[n] = neg[n] = -1.0;
          lp.add_row(row, Relation::LessEqual, -lead * tn);
          lp.add_row(neg, Relation::LessEqual, lead * tn);
        }
        const auto s = solve_lp(lp);
        res.lower_bound = -lp_value_or_throw(s, "chebyshev_monic");
        std::vector<cplx> c(n + 1);
        for (int k = 0; k < n; ++k) c[k] = s.x[k];
        c[n] = lead;
        poly::Polynomial cheb(c, poly::Basis::Chebyshev);
        if (mid == 0.0 && half == 1.0) {
          res.minimizer = cheb;
        } else {
          res.minimizer = poly::Polynomial(compose_affine(poly::to_monomial(cheb).coeffs(), 1.0 / half, -mid / half));
        }
        res.t_n = q(res.minimizer);
        res.method = "lp";
        return res;
      }
      if (n > 20) throw InputError("complex-coefficient LP limited to degree 20");
      double scale = 0.0;
      for (const auto& z : sup.grid.nodes) scale = std::max(scale, std::abs(z));
      const int nv = 2 * n + 1;
      LinearProgram lp(nv);
      lp.objective[2 * n] = -1.0;
      std::vector<double> row(nv);
      for (const auto& z : sup.grid.nodes) {
        std::vector<cplx> b(n + 1);
        cplx p = 1.0;
        for (int k = 0; k <= n; ++k) {
          b[k] = p;
          p *= z / scale;
        }
        const cplx lead = std::pow(z, n);
        for (int a = 0; a < kPolygonSides; ++a) {
          const cplx e = std::polar(1.0, 2.0 * kPi * a / kPolygonSides);
          for (int k = 0; k < n; ++k) {
            const cplx eb = e * b[k];
            row[k] = eb.real();
            row[n + k] = -eb.imag();
          }
          row[2 * n] = -1.0;
          lp.add_row(row, Relation::LessEqual, -(e * lead).real());
        }
      }
      const auto s = solve_lp(lp);
      res.lower_bound = -lp_value_or_throw(s, "chebyshev_monic");
      std::vector<cplx> c(n + 1);
      for (int k = 0; k < n; ++k) c[k] = cplx(s.x[k], s.x[n + k]) / std::pow(scale, k);
      c[n] = 1.0;
      res.minimizer = poly::Polynomial(std::move(c));
      res.t_n = q(res.minimizer);
      res.method = "lp-polygon";
      return res;
    }
    case sets::NormKind::Integral: {
      const auto& in = std::get<sets::IntegralNorm>(q.variant());
      if (n > in.max_degree) throw InputError("degree exceeds the integral norm's degree bound");
      const auto [xq, wq] = sets::gauss_legendre(sets::integral_node_count(in.p, in.max_degree));
      const int N = static_cast<int>(xq.size());
      const double mid = 0.5 * (in.interval.a + in.interval.b), half = 0.5 * (in.interval.b - in.interval.a);
      // monic in x: work in y with leading coefficient half^n on y^n
      Eigen::MatrixXd V(N, n);
      Eigen::VectorXd lead(N);
      for (int i = 0; i < N; ++i) {
        for (int k = 0; k < n; ++k) V(i, k) = std::pow(xq[i], k);
        lead(i) = std::pow(half, n) * std::pow(xq[i], n);
      }
      Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
      auto values = [&](const Eigen::VectorXd& coef) { return Eigen::VectorXd(V * coef + lead); };
      auto norm_of = [&](const Eigen::VectorXd& coef) {
        const Eigen::VectorXd v = values(coef);
        double acc = 0.0;
        for (int i = 0; i < N; ++i) acc += wq[i] * std::pow(std::abs(v(i)), in.p);
        return std::pow(0.5 * acc, 1.0 / in.p);
      };
      if (in.p == 1.0) {
        // min sum w_i s_i, s_i >= |P(x_i)|
        LinearProgram lp(n + N);
        for (int i = 0; i < N; ++i) lp.objective[n + i] = -0.5 * wq[i];
        std::vector<double> row(n + N, 0.0);
        for (int i = 0; i < N; ++i) {
          std::fill(row.begin(), row.end(), 0.0);
          for (int k = 0; k < n; ++k) row[k] = V(i, k);
          row[n + i] = -1.0;
          lp.add_row(row, Relation::LessEqual, -lead(i));
          for (int k = 0; k < n; ++k) row[k] = -V(i, k);
          lp.add_row(row, Relation::LessEqual, lead(i));
        }
        const auto s = solve_lp(lp);
        res.lower_bound = -lp_value_or_throw(s, "chebyshev_monic");
        for (int k = 0; k < n; ++k) a(k) = s.x[k];
        res.method = "lp-quadrature";
      } else {
        // iteratively reweighted least squares; a single solve when p = 2
        Eigen::VectorXd wts(N);
        for (int i = 0; i < N; ++i) wts(i) = wq[i];
        double prev = INFINITY;
        for (int it = 0; it < 500; ++it) {
          Eigen::VectorXd sw = wts.cwiseSqrt();
          Eigen::MatrixXd A = sw.asDiagonal() * V;
          Eigen::VectorXd rhs = -(sw.asDiagonal() * lead);
          Eigen::VectorXd cand = A.colPivHouseholderQr().solve(rhs);
          const double val = norm_of(cand);
          if (val < prev) a = cand;
          if (in.p == 2.0 || std::abs(prev - val) <= 1e-14 * val) break;
          prev = std::min(prev, val);
          const Eigen::VectorXd v = values(cand);
          for (int i = 0; i < N; ++i) wts(i) = wq[i] * std::pow(std::abs(v(i)) + 1e-12, in.p - 2.0);
        }
        res.lower_bound = 0.0;
        res.method = in.p == 2.0 ? "least-squares" : "irls";
      }
      std::vector<cplx> cy(n + 1);
      for (int k = 0; k < n; ++k) cy[k] = a(k);
      cy[n] = std::pow(half, n);
      res.minimizer = poly::Polynomial(compose_affine(cy, 1.0 / half, -mid / half));
      res.t_n = q(res.minimizer);
      if (in.p == 2.0) res.lower_bound = res.t_n;
      return res;
    }
  }
  throw UnsupportedError("chebyshev_monic: unknown norm");
}

double log_phi2_disk(int n, double r) {
  if (n < 0 || !(r >= 0.0)) throw InputError("phi2 needs n >= 0 and r >= 0");
  if (r == 0.0) return 0.0;
  std::vector<double> terms(n + 1);
  for (int k = 0; k <= n; ++k) terms[k] = 2.0 * (poly::log_binomial(n, k) + k * std::log(r));
  const double m = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - m);
  return 0.5 * (m + std::log(acc));
}

double log_phi2_interval(int n, double r) {
  if (n < 0 || !(r >= 0.0)) throw InputError("phi2 needs n >= 0 and r >= 0");
  if (r == 0.0) return 0.0;
  std::vector<double> terms(n + 1);
  for (int k = 0; k <= n; ++k)
    terms[k] = 2.0 * (poly::log_chebyshev_derivative_at_one(n, k) - poly::log_factorial(k) + k * std::log(r));
  const double m = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - m);
  return 0.5 * (m + std::log(acc));
}

ScaledInf inf_r_scaled(const std::function<double(double)>& log_f, int l, double tol) {
  auto obj = [&](double s) { return log_f(std::exp(s)) - l * s; };
  double lo = -30.0, hi = 30.0;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = obj(x1), f2 = obj(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = obj(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = obj(x2);
    }
  }
  const double s = 0.5 * (lo + hi);
  ScaledInf out;
  out.log_value = std::min({obj(s), f1, f2});
  out.value = std::exp(out.log_value);
  out.r_star = std::exp(s);
  return out;
}

double log_phi2_from_table(const MarkovTable& table, int n, double r) {
  if (n < 0 || n > table.nmax || !(r >= 0.0)) throw InputError("phi2: n outside the Markov table");
  if (r == 0.0) return 0.0;
  std::vector<double> terms(n + 1);
  for (int k = 0; k <= n; ++k) terms[k] = 2.0 * (table.log_value(n, k) - poly::log_factorial(k) + k * std::log(r));
  const double m = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - m);
  return 0.5 * (m + std::log(acc));
}

EEstimate estimate_e(const MarkovTable& table, int nmax) {
  const int N = std::min(nmax, table.nmax);
  if (N < 1) throw InputError("estimate_e needs Nmax >= 1");
  EEstimate est;
  est.truncation = N;
  double best = -INFINITY, best_below = -INFINITY;
  for (int n = 1; n <= N; ++n)
    for (int l = 1; l <= n; ++l) {
      const double base = (table.log_value(n, l) - poly::log_factorial(l)) / l;
      double m = -INFINITY;
      std::vector<double> terms(n + 1);
      for (int k = 0; k <= n; ++k) {
        terms[k] = table.log_value(n, k) - poly::log_factorial(k) - k * base;
        m = std::max(m, terms[k]);
      }
      double acc = 0.0;
      for (double t : terms) acc += std::exp(t - m);
      const double v = (m + std::log(acc)) / l;
      if (v > best) {
        best = v;
        est.n_at = n;
        est.l_at = l;
      }
      if (n < N) best_below = std::max(best_below, v);
    }
  est.value = std::exp(best);
  est.last_increment = N > 1 ? best - best_below : 0.0;
  return est;
}

SandwichReport e_sandwich_check(const CompactSet& set, int nmax) {
  SandwichReport rep;
  rep.nmax = nmax;
  if (set.kind() == sets::SetKind::Disk) {
    rep.constant = std::exp(1.0);
  } else if (set.kind() == sets::SetKind::Interval) {
    rep.constant = std::exp(std::sqrt(2.0) + std::sqrt(6.0));
  } else {
    throw UnsupportedError("e sandwich check needs a disk or an interval");
  }
  const MarkovTable table = closed_markov_table(set, nmax);
  const auto est = estimate_e(table, nmax);
  rep.e_est = est.value;
  rep.worst_lower = INFINITY;
  rep.worst_upper = 0.0;
  rep.worst_upper_est = 0.0;
  for (int n = 1; n <= nmax; ++n)
    for (int l = 1; l <= n; ++l) {
      const auto inf = inf_r_scaled([&](double r) { return log_phi2_from_table(table, n, r); }, l);
      const double base = table.log_value(n, l) - poly::log_factorial(l);
      rep.worst_lower = std::min(rep.worst_lower, std::exp(inf.log_value - base));
      rep.worst_upper = std::max(rep.worst_upper, std::exp(inf.log_value - base - l * std::log(rep.constant)));
      rep.worst_upper_est = std::max(rep.worst_upper_est, std::exp(inf.log_value - base - l * std::log(rep.e_est)));
    }
  rep.pass = rep.worst_lower >= 1.0 - 1e-9 && rep.worst_upper <= 1.0 + 1e-9 && rep.worst_upper_est <= 1.0 + 1e-9 &&
             rep.e_est <= rep.constant;
  return rep;
}

}  // namespace extremal::engine
