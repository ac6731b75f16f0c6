#include "extremal/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "extremal/errors.hpp"

namespace extremal::engine {

LinearProgram::LinearProgram(std::size_t n) : num_vars(n), objective(n, 0.0) {}

void LinearProgram::add_row(std::span<const double> row, Relation rel, double b) {
  if (row.size() != num_vars) throw InputError("LP row has wrong length");
  coeffs.insert(coeffs.end(), row.begin(), row.end());
  relations.push_back(rel);
  rhs.push_back(b);
}

void LinearProgram::set_bounds(std::size_t var, double lo, double hi) {
  if (var >= num_vars) throw InputError("LP bound on unknown variable");
  if (lower.empty()) {
    lower.assign(num_vars, -std::numeric_limits<double>::infinity());
    upper.assign(num_vars, std::numeric_limits<double>::infinity());
  }
  lower[var] = lo;
  upper[var] = hi;
}

std::string to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
    case LPStatus::Stalled: return "stalled";
  }
  return "?";
}

namespace {

constexpr double kOptTol = 1e-10;
constexpr double kPivTol = 1e-9;

enum class StdStatus { Optimal, Infeasible, Unbounded, Stalled };

struct StdResult {
  StdStatus status = StdStatus::Stalled;
  std::vector<double> y;
  std::vector<double> pi;  // multipliers of the equality rows
  std::vector<int> basis;
  long pivots = 0;
};

// min cost.y  s.t.  mat y = rhs, y >= 0.  mat is d x n row-major.
class Tableau {
 public:
  Tableau(int d, int n, const std::vector<double>& mat, const std::vector<double>& rhs)
      : d_(d), n_(n), w_(n + d + 1), t_(static_cast<std::size_t>(d + 1) * (n + d + 1), 0.0), sign_(d, 1.0), basis_(d) {
    for (int j = 0; j < d; ++j) {
      sign_[j] = rhs[j] < 0.0 ? -1.0 : 1.0;
      double* row = &at(j, 0);
      const double* src = &mat[static_cast<std::size_t>(j) * n];
      for (int k = 0; k < n; ++k) row[k] = sign_[j] * src[k];
      row[n + j] = 1.0;
      row[w_ - 1] = std::abs(rhs[j]);
      basis_[j] = n + j;
    }
  }

  double& at(int r, int c) { return t_[static_cast<std::size_t>(r) * w_ + c]; }

  void phase1_objective() {
    double* obj = &at(d_, 0);
    std::fill(obj, obj + w_, 0.0);
    for (int j = 0; j < d_; ++j) {
      const double* row = &at(j, 0);
      for (int k = 0; k < n_; ++k) obj[k] -= row[k];
      obj[w_ - 1] -= row[w_ - 1];
    }
  }

  void phase2_objective(const std::vector<double>& cost) {
    double* obj = &at(d_, 0);
    std::fill(obj, obj + w_, 0.0);
    for (int k = 0; k < n_; ++k) obj[k] = cost[k];
    for (int j = 0; j < d_; ++j) {
      const int b = basis_[j];
      const double cb = b < n_ ? cost[b] : 0.0;
      if (cb == 0.0) continue;
      const double* row = &at(j, 0);
      for (int k = 0; k < w_; ++k) obj[k] -= cb * row[k];
    }
  }

  double artificial_sum() {
    double s = 0.0;
    for (int j = 0; j < d_; ++j)
      if (basis_[j] >= n_) s += std::max(0.0, at(j, w_ - 1));
    return s;
  }

  void pivot(int r, int k) {
    double* prow = &at(r, 0);
    const double inv = 1.0 / prow[k];
    for (int c = 0; c < w_; ++c) prow[c] *= inv;
    prow[k] = 1.0;
    for (int i = 0; i <= d_; ++i) {
      if (i == r) continue;
      double* row = &at(i, 0);
      const double f = row[k];
      if (f == 0.0) continue;
      for (int c = 0; c < w_; ++c) row[c] -= f * prow[c];
      row[k] = 0.0;
    }
    basis_[r] = k;
    ++pivots_;
  }

  // Returns Optimal, Unbounded or Stalled.
  StdStatus run(const LPOptions& opts) {
    int degenerate_run = 0;
    while (true) {
      if (pivots_ >= opts.max_pivots) return StdStatus::Stalled;
      const bool bland = degenerate_run >= opts.degenerate_run_before_bland;
      const double* obj = &at(d_, 0);
      int enter = -1;
      double best = -kOptTol;
      for (int k = 0; k < n_; ++k) {
        if (obj[k] < best) {
          enter = k;
          if (bland) break;
          best = obj[k];
        }
      }
      if (enter < 0) return StdStatus::Optimal;
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_piv = 0.0;
      for (int i = 0; i < d_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivTol) continue;
        const double ratio = std::max(0.0, at(i, w_ - 1)) / a;
        const double tie = leave < 0 ? 0.0 : 1e-12 * (1.0 + best_ratio);
        if (leave < 0 || ratio < best_ratio - tie) {
          leave = i;
          best_ratio = ratio;
          best_piv = a;
        } else if (ratio <= best_ratio + tie) {
          const bool better = bland ? basis_[i] < basis_[leave] : a > best_piv;
          if (better) {
            leave = i;
            best_ratio = std::min(best_ratio, ratio);
            best_piv = a;
          }
        }
      }
      if (leave < 0) return StdStatus::Unbounded;
      degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
    }
  }

  // Pivot zero-level artificials out where a structural column allows it.
  void drive_out_artificials() {
    for (int j = 0; j < d_; ++j) {
      if (basis_[j] < n_) continue;
      int best = -1;
      double bv = kPivTol;
      const double* row = &at(j, 0);
      for (int k = 0; k < n_; ++k)
        if (std::abs(row[k]) > bv) {
          bv = std::abs(row[k]);
          best = k;
        }
      if (best >= 0) pivot(j, best);
    }
  }

  StdResult result(StdStatus status) {
    StdResult res;
    res.status = status;
    res.pivots = pivots_;
    res.basis = basis_;
    res.y.assign(n_, 0.0);
    for (int j = 0; j < d_; ++j)
      if (basis_[j] < n_) res.y[basis_[j]] = std::max(0.0, at(j, w_ - 1));
    res.pi.assign(d_, 0.0);
    for (int j = 0; j < d_; ++j) res.pi[j] = -sign_[j] * at(d_, n_ + j);
    return res;
  }

  long pivots() const { return pivots_; }

 private:
  int d_, n_, w_;
  std::vector<double> t_;
  std::vector<double> sign_;
  std::vector<int> basis_;
  long pivots_ = 0;
};

StdResult solve_standard(int d, int n, const std::vector<double>& mat, const std::vector<double>& rhs,
                         const std::vector<double>& cost, const LPOptions& opts) {
  Tableau tab(d, n, mat, rhs);
  tab.phase1_objective();
  StdStatus st = tab.run(opts);
  if (st == StdStatus::Stalled) return tab.result(st);
  double scale = 1.0;
  for (double v : rhs) scale = std::max(scale, std::abs(v));
  if (tab.artificial_sum() > 1e-9 * scale) return tab.result(StdStatus::Infeasible);
  tab.drive_out_artificials();
  tab.phase2_objective(cost);
  st = tab.run(opts);
  return tab.result(st);
}

}  // namespace

LPSolution solve_lp(const LinearProgram& lp, const LPOptions& opts) {
  const std::size_t d = lp.num_vars;
  if (lp.objective.size() != d) throw InputError("LP objective has wrong length");
  // primal rows after scaling: a_i x (<=|=) b_i
  std::vector<double> A;
  std::vector<double> b;
  std::vector<bool> eq;
  auto push = [&](const double* row, bool is_eq, double rhs) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s = std::max(s, std::abs(row[j]));
    if (s == 0.0) {
      if ((is_eq && rhs != 0.0) || (!is_eq && rhs < 0.0)) return false;
      return true;
    }
    for (std::size_t j = 0; j < d; ++j) A.push_back(row[j] / s);
    b.push_back(rhs / s);
    eq.push_back(is_eq);
    return true;
  };
  LPSolution sol;
  bool trivially_infeasible = false;
  for (std::size_t i = 0; i < lp.num_rows(); ++i)
    if (!push(lp.coeffs.data() + i * d, lp.relations[i] == Relation::Equal, lp.rhs[i])) trivially_infeasible = true;
  if (!lp.lower.empty()) {
    std::vector<double> e(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      if (std::isfinite(lp.lower[j])) {
        e[j] = -1.0;
        push(e.data(), false, -lp.lower[j]);
      }
      if (std::isfinite(lp.upper[j])) {
        e[j] = 1.0;
        push(e.data(), false, lp.upper[j]);
      }
      e[j] = 0.0;
    }
  }
  if (trivially_infeasible) {
    sol.status = LPStatus::Infeasible;
    return sol;
  }
  const std::size_t m = b.size();
  if (d == 0) {
    sol.status = LPStatus::Optimal;
    return sol;
  }

  // Dual columns: one per <= row, two per = row.
  std::vector<std::size_t> col_row;
  std::vector<double> col_sign;
  for (std::size_t i = 0; i < m; ++i) {
    col_row.push_back(i);
    col_sign.push_back(1.0);
    if (eq[i]) {
      col_row.push_back(i);
      col_sign.push_back(-1.0);
    }
  }
  const int n = static_cast<int>(col_row.size());
  std::vector<double> mat(d * static_cast<std::size_t>(n));
  std::vector<double> cost(n);
  for (int k = 0; k < n; ++k) {
    const double* row = &A[col_row[k] * d];
    for (std::size_t j = 0; j < d; ++j) mat[j * n + k] = col_sign[k] * row[j];
    cost[k] = col_sign[k] * b[col_row[k]];
  }
  double cs = 0.0;
  for (double v : lp.objective) cs = std::max(cs, std::abs(v));
  std::vector<double> c(d, 0.0);
  if (cs > 0.0)
    for (std::size_t j = 0; j < d; ++j) c[j] = lp.objective[j] / cs;

  StdResult dual = solve_standard(static_cast<int>(d), n, mat, c, cost, opts);
  sol.pivots = dual.pivots;
  if (dual.status == StdStatus::Stalled) {
    sol.status = LPStatus::Stalled;
    return sol;
  }
  if (dual.status == StdStatus::Unbounded) {
    sol.status = LPStatus::Infeasible;
    return sol;
  }
  if (dual.status == StdStatus::Infeasible) {
    std::vector<double> zero(d, 0.0);
    StdResult ray = solve_standard(static_cast<int>(d), n, mat, zero, cost, opts);
    sol.pivots += ray.pivots;
    sol.status = ray.status == StdStatus::Unbounded ? LPStatus::Infeasible
                 : ray.status == StdStatus::Stalled ? LPStatus::Stalled
                                                    : LPStatus::Unbounded;
    return sol;
  }

  auto violation = [&](const std::vector<double>& x) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double ax = 0.0;
      for (std::size_t j = 0; j < d; ++j) ax += A[i * d + j] * x[j];
      const double r = ax - b[i];
      worst = std::max(worst, eq[i] ? std::abs(r) : r);
    }
    return worst;
  };

  std::vector<double> x = dual.pi;
  double viol = violation(x);
  // Polish on the active rows of the optimal basis.
  std::vector<std::size_t> active;
  for (int bidx : dual.basis)
    if (bidx < n) active.push_back(col_row[bidx]);
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());
  if (active.size() == d) {
    Eigen::MatrixXd M(d, d);
    Eigen::VectorXd rhs(d);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t j = 0; j < d; ++j) M(r, j) = A[active[r] * d + j];
      rhs(r) = b[active[r]];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    Eigen::VectorXd xs = lu.solve(rhs);
    if (xs.allFinite()) {
      std::vector<double> xp(xs.data(), xs.data() + d);
      const double vp = violation(xp);
      if (vp <= viol) {
        x = std::move(xp);
        viol = vp;
      }
    }
  }
  double comp = 0.0;
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
    if (dual.y[k] <= 1e-9) continue;
    const std::size_t i = col_row[k];
    double ax = 0.0;
    for (std::size_t j = 0; j < d; ++j) ax += A[i * d + j] * x[j];
    comp = std::max(comp, std::abs(ax - b[i]));
  }
  sol.status = LPStatus::Optimal;
  sol.x = std::move(x);
  sol.primal_violation = std::max(0.0, viol);
  sol.complementarity = comp;
  sol.value = 0.0;
  for (std::size_t j = 0; j < d; ++j) sol.value += lp.objective[j] * sol.x[j];
  return sol;
}

}  // namespace extremal::engine
