#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "extremal/engine.hpp"
#include "extremal/errors.hpp"

namespace extremal::engine {

namespace {

std::vector<std::size_t> derivative_points(const Grid& grid, int coarse) {
  std::vector<std::size_t> idx;
  const bool sym = grid.parent.conjugation_symmetric();
  if (grid.parent.is_real()) {
    // x -> -x symmetry in the affine variable: keep one half
    for (std::size_t j = 0; j < grid.nodes.size(); ++j)
      if (2 * j <= grid.nodes.size() - 1) idx.push_back(j);
    return idx;
  }
  for (std::size_t j : sets::coarse_subgrid(grid, coarse))
    if (!sym || grid.nodes[j].imag() >= -1e-12) idx.push_back(j);
  return idx;
}

MarkovValue lp_markov(const GridLP& model, const std::vector<std::size_t>& points, int k) {
  MarkovValue best;
  best.method = MarkovMethod::LP;
  best.value = -INFINITY;
  for (std::size_t j : points) {
    const cplx x = model.grid().nodes[j];
    const double v = model.max_functional(model.basis_values(x, k));
    if (v > best.value) {
      best.value = v;
      best.argmax = x;
    }
  }
  return best;
}

// Ascent on log q(P^(k)) - log q(P) over real Chebyshev coefficients.
MarkovValue integral_markov(const sets::IntegralNorm& in, int n, int k, const MarkovOptions& opts) {
  if (n > in.max_degree) throw InputError("degree exceeds the integral norm's degree bound");
  const auto [xq, wq] = sets::gauss_legendre(sets::integral_node_count(in.p, in.max_degree));
  const int N = static_cast<int>(xq.size());
  const double half = 0.5 * (in.interval.b - in.interval.a);
  Eigen::MatrixXd V(N, n + 1), D(N, n + 1);
  for (int c = 0; c <= n; ++c) {
    const auto T = poly::chebyshev_T(c);
    const auto Tk = poly::derivative(T, k);
    for (int i = 0; i < N; ++i) {
      V(i, c) = poly::eval(T, xq[i]).real();
      D(i, c) = poly::eval(Tk, xq[i]).real() / std::pow(half, k);
    }
  }
  const double p = in.p;
  auto log_q = [&](const Eigen::MatrixXd& M, const Eigen::VectorXd& a, Eigen::VectorXd* grad) {
    const Eigen::VectorXd v = M * a;
    double s = 0.0;
    Eigen::VectorXd gw = Eigen::VectorXd::Zero(N);
    for (int i = 0; i < N; ++i) {
      const double av = std::abs(v(i));
      s += wq[i] * std::pow(av, p);
      if (grad) gw(i) = wq[i] * std::pow(av, p - 1.0) * (v(i) >= 0 ? 1.0 : -1.0);
    }
    if (grad) *grad = M.transpose() * gw / s;
    return std::log(0.5 * s) / p;
  };
  auto f = [&](const Eigen::VectorXd& a, Eigen::VectorXd* grad) {
    Eigen::VectorXd g1, g2;
    const double v = log_q(D, a, grad ? &g1 : nullptr) - log_q(V, a, grad ? &g2 : nullptr);
    if (grad) *grad = g1 - g2;
    return v;
  };
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  double best = -INFINITY;
  for (int rs = 0; rs < opts.restarts; ++rs) {
    Eigen::VectorXd a(n + 1);
    for (int c = 0; c <= n; ++c) a(c) = nd(rng);
    if (rs == 0) a(n) += 3.0;  // start near T_n
    Eigen::VectorXd g;
    double fv = f(a, &g);
    double step = 1.0;
    for (int it = 0; it < 3000; ++it) {
      const double gn = g.squaredNorm();
      if (gn < 1e-26) break;
      bool moved = false;
      while (step > 1e-14) {
        Eigen::VectorXd cand = a + step * g;
        cand /= std::exp(log_q(V, cand, nullptr));  // project back to q(P) = 1
        Eigen::VectorXd gc;
        const double fc = f(cand, &gc);
        if (fc >= fv + 1e-4 * step * gn) {
          const double gain = fc - fv;
          a = cand;
          fv = fc;
          g = gc;
          step *= 2.0;
          moved = true;
          if (gain < 1e-15 * std::max(1.0, std::abs(fv))) it = 3000;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    best = std::max(best, fv);
  }
  MarkovValue out;
  out.value = std::exp(best);
  out.method = MarkovMethod::LowerBound;
  return out;
}

}  // namespace

std::string to_string(MarkovMethod m) {
  switch (m) {
    case MarkovMethod::ClosedForm: return "ClosedForm";
    case MarkovMethod::LP: return "LP";
    case MarkovMethod::LowerBound: return "LowerBound";
  }
  return "?";
}

double MarkovTable::log_value(int n, int k) const {
  if (n < 0 || n > nmax || k < 0) throw InputError("Markov table index out of range");
  if (k > n) return -INFINITY;
  return log_values[n][k];
}

double MarkovTable::value(int n, int k) const { return std::exp(log_value(n, k)); }

double interval_markov_display(int n, int k) {
  if (k > n) return 0.0;
  double acc = 2.0 * poly::log_falling_factorial(n, k);
  for (int j = 1; j <= k; ++j) acc -= std::log(2.0 * j - 1.0);
  return std::exp(acc);
}

namespace {

// log M_n(k) for the closed-form norms, without forming the value.
std::optional<double> closed_log_markov(const NormSpec& q, int n, int k) {
  if (const auto* c = std::get_if<sets::CoeffNorm>(&q.variant()))
    return c->m * poly::log_falling_factorial(n, k) - k * std::log(c->tau);
  if (const auto* sup = std::get_if<sets::SupOnSet>(&q.variant()))
    if (const auto* d = std::get_if<sets::Disk>(&sup->set.variant()))
      return poly::log_falling_factorial(n, k) - k * std::log(d->radius);
  return std::nullopt;
}

}  // namespace

MarkovValue markov_factor(const NormSpec& q, int n, int k, const MarkovOptions& opts) {
  if (n < 0 || k < 0 || k > n) throw InputError("markov_factor needs 0 <= k <= n");
  MarkovValue out;
  if (k == 0) {
    out.value = 1.0;
    return out;
  }
  switch (q.kind()) {
    case sets::NormKind::Coeff: {
      const auto& c = std::get<sets::CoeffNorm>(q.variant());
      out.value = std::exp(c.m * poly::log_falling_factorial(n, k) - k * std::log(c.tau));
      return out;
    }
    case sets::NormKind::Sup: {
      const auto& sup = std::get<sets::SupOnSet>(q.variant());
      if (const auto* d = std::get_if<sets::Disk>(&sup.set.variant())) {
        out.value = std::exp(poly::log_falling_factorial(n, k) - k * std::log(d->radius));
        return out;
      }
      GridLP model(sup.grid, n);
      return lp_markov(model, derivative_points(sup.grid, opts.coarse_points), k);
    }
    case sets::NormKind::Integral:
      return integral_markov(std::get<sets::IntegralNorm>(q.variant()), n, k, opts);
  }
  throw UnsupportedError("markov_factor: unknown norm");
}

MarkovTable markov_table(const NormSpec& q, int nmax, const MarkovOptions& opts) {
  if (nmax < 0) throw InputError("markov_table needs Nmax >= 0");
  MarkovTable t;
  t.descriptor = q.describe();
  t.nmax = nmax;
  t.log_values.resize(nmax + 1);
  t.log_values[0] = {0.0};
  bool lp_path = false;
  const sets::SupOnSet* sup = std::get_if<sets::SupOnSet>(&q.variant());
  if (sup && sup->set.kind() != sets::SetKind::Disk) {
    sets::require_adequate(sup->grid, nmax);
    lp_path = true;
  }
  t.method = lp_path ? MarkovMethod::LP
             : q.kind() == sets::NormKind::Integral ? MarkovMethod::LowerBound
                                                    : MarkovMethod::ClosedForm;
  std::vector<std::size_t> points;
  if (lp_path) points = derivative_points(sup->grid, opts.coarse_points);
  for (int n = 1; n <= nmax; ++n) {
    t.log_values[n].assign(n + 1, 0.0);
    if (lp_path) {
      GridLP model(sup->grid, n);
      for (int k = 1; k <= n; ++k) t.log_values[n][k] = std::log(lp_markov(model, points, k).value);
    } else {
      for (int k = 1; k <= n; ++k) {
        const auto closed = closed_log_markov(q, n, k);
        t.log_values[n][k] = closed ? *closed : std::log(markov_factor(q, n, k, opts).value);
      }
    }
  }
  return t;
}

MarkovTable closed_markov_table(const CompactSet& set, int nmax) {
  MarkovTable t;
  t.descriptor = set.describe() + ";classical";
  t.nmax = nmax;
  t.method = MarkovMethod::ClosedForm;
  t.log_values.resize(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    t.log_values[n].assign(n + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
      if (const auto* d = std::get_if<sets::Disk>(&set.variant())) {
        t.log_values[n][k] = poly::log_falling_factorial(n, k) - k * std::log(d->radius);
      } else if (const auto* iv = std::get_if<sets::Interval>(&set.variant())) {
        t.log_values[n][k] = poly::log_chebyshev_derivative_at_one(n, k) + k * std::log(2.0 / (iv->b - iv->a));
      } else {
        throw UnsupportedError("closed Markov table needs a disk or an interval");
      }
    }
  }
  return t;
}

}  // namespace extremal::engine
