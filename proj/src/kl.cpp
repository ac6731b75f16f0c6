#include "extremal/kl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "extremal/errors.hpp"

namespace extremal::kl {

namespace {

using engine::MarkovTable;

// 11/12 + 1/(2e) + log(2 pi)/2
const double kFactorialLogC = 11.0 / 12.0 + 1.0 / (2.0 * std::numbers::e) + 0.5 * std::log(2.0 * std::numbers::pi);

double lbinom(int n, int k) { return poly::log_binomial(n, k); }
double lfact(int n) { return poly::log_factorial(n); }
double lratio(int n, int k) { return std::log(static_cast<double>(n) / k); }

double param(const std::map<std::string, double>& p, const std::string& key, double def) {
  auto it = p.find(key);
  return it == p.end() ? def : it->second;
}

int table_top(const MarkovTable& t, int nmax) { return nmax > 0 ? std::min(nmax, t.nmax) : t.nmax; }

const std::vector<double>& exponent_grid() {
  static const std::vector<double> g = [] {
    std::vector<double> v;
    for (int i = 0; i <= 12; ++i) v.push_back(1.0 + 0.25 * i);
    return v;
  }();
  return g;
}

// Per-row residuals; growth compares the maxima over the windows (N/4, N/2] and (N/2, N].
struct Envelope {
  std::vector<double> rows;  // rows[n - 1]
  void push(double v) { rows.push_back(v); }
  double last() const { return *std::max_element(rows.begin(), rows.end()); }
  double window_max(std::size_t lo, std::size_t hi) const {  // rows lo+1..hi
    return *std::max_element(rows.begin() + lo, rows.begin() + hi);
  }
  double growth() const {
    const std::size_t n = rows.size();
    if (n < 4) return 0.0;
    return window_max(n / 2, n) - window_max(n / 4, n / 2);
  }
};

FitPoint finish_fit(double m, const Envelope& e) {
  FitPoint f;
  f.m = m;
  f.M = std::exp(e.last());
  f.growth = e.growth();
  f.feasible = f.growth <= kGrowthTolerance;
  return f;
}

Fit collect(std::vector<FitPoint> pts, int nmax) {
  Fit fit;
  fit.nmax = nmax;
  fit.frontier = std::move(pts);
  for (const auto& p : fit.frontier)
    if (p.feasible) {
      fit.best = p;
      break;
    }
  return fit;
}

void require_table(const MarkovTable& t) {
  if (t.nmax < 1) throw InputError("Markov table is empty");
}

}  // namespace

TriangleSequence TriangleSequence::from_markov_table(const MarkovTable& table) {
  require_table(table);
  TriangleSequence s;
  s.name = "table:" + table.descriptor;
  s.max_n = table.nmax;
  s.log_phi = [table](int n, int k) { return table.log_value(n, k); };
  return s;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c{
      {"ex63_1", "kk", "k^k", true},
      {"ex63_2", "exp_sigma", "e^(sigma k)", true},
      {"ex63_3", "ratio_pow", "(n/k)^(km)", true},
      {"ex63_4", "kk_ratio_pow", "k^k (n/k)^(km)", true},
      {"ex63_5", "exp_kk_ratio_pow", "e^(k sigma) k^k (n/k)^(km)", true},
      {"ex63_6", "two_pow", "2^(n-k) n^k", true},
      {"ex65_1", "factorial", "k!", false},
      {"ex65_2", "binom_pow", "C(n,k)^m", false},
      {"ex65_3", "factorial_binom_pow", "k! C(n,k)^m", false},
      {"ex65_4", "factorial_exp_root", "k! e^-k exp((1+1/s) k^(s/(1+s)) n^(1/(1+s)))", false},
      {"ex65_5", "ratio_log_pow", "(n/k)^(km) (1+log(n/k))^(mk)", false},
  };
  return c;
}

TriangleSequence builtin(const std::string& name, const std::map<std::string, double>& params) {
  const CatalogEntry* entry = nullptr;
  for (const auto& e : catalog())
    if (e.name == name || e.alias == name) entry = &e;
  if (!entry) throw InputError("unknown KL sequence '" + name + "'");
  const std::string id = entry->name;
  static const std::map<std::string, std::set<std::string>> accepted{
      {"ex63_1", {}},          {"ex63_2", {"sigma"}},  {"ex63_3", {"m"}},      {"ex63_4", {"m"}},
      {"ex63_5", {"sigma", "m"}}, {"ex63_6", {}},     {"ex65_1", {}},         {"ex65_2", {"m"}},
      {"ex65_3", {"m"}},       {"ex65_4", {"s"}},      {"ex65_5", {"m"}}};
  for (const auto& [k, v] : params) {
    if (!accepted.at(id).count(k)) throw InputError("sequence " + id + " has no parameter '" + k + "'");
    if (!std::isfinite(v)) throw InputError("parameter '" + k + "' must be finite");
  }
  const double sigma = param(params, "sigma", 1.0), m = param(params, "m", 2.0), s = param(params, "s", 1.0);
  if (!(m > 0.0)) throw InputError("m must be > 0");
  if (!(s > 0.0) || s > 1.0) throw InputError("s must lie in (0, 1]");

  TriangleSequence q;
  std::ostringstream nm;
  nm << id;
  if (!params.empty()) {
    char sep = '?';
    for (const auto& [k, v] : params) {
      nm << sep << k << '=' << v;
      sep = '&';
    }
  }
  q.name = nm.str();
  if (entry->kl_star) q.stated_log_C = 0.0;
  if (id == "ex63_1") {
    q.log_phi = [](int, int k) { return k * std::log(static_cast<double>(k)); };
  } else if (id == "ex63_2") {
    q.log_phi = [sigma](int, int k) { return sigma * k; };
  } else if (id == "ex63_3") {
    q.log_phi = [m](int n, int k) { return k * m * lratio(n, k); };
  } else if (id == "ex63_4") {
    q.log_phi = [m](int n, int k) { return k * std::log(static_cast<double>(k)) + k * m * lratio(n, k); };
  } else if (id == "ex63_5") {
    q.log_phi = [sigma, m](int n, int k) {
      return k * sigma + k * std::log(static_cast<double>(k)) + k * m * lratio(n, k);
    };
  } else if (id == "ex63_6") {
    q.log_phi = [](int n, int k) { return (n - k) * std::numbers::ln2 + k * std::log(static_cast<double>(n)); };
  } else if (id == "ex65_1") {
    q.log_phi = [](int, int k) { return lfact(k); };
    q.stated_log_C = kFactorialLogC;
  } else if (id == "ex65_2") {
    q.log_phi = [m](int n, int k) { return m * lbinom(n, k); };
    q.stated_log_C = m;
  } else if (id == "ex65_3") {
    q.log_phi = [m](int n, int k) { return lfact(k) + m * lbinom(n, k); };
    q.stated_log_C = m + kFactorialLogC;
  } else if (id == "ex65_4") {
    q.log_phi = [s](int n, int k) {
      return lfact(k) - k + (1.0 + 1.0 / s) * std::pow(k, s / (1.0 + s)) * std::pow(n, 1.0 / (1.0 + s));
    };
    q.stated_log_C = kFactorialLogC + 1.0 + 1.0 / s;
  } else {
    q.log_phi = [m](int n, int k) { return k * m * lratio(n, k) + m * k * std::log1p(lratio(n, k)); };
  }
  return q;
}

TriangleSequence parse_sequence(const std::string& spec) {
  std::string body = spec.rfind("kl:", 0) == 0 ? spec.substr(3) : spec;
  std::map<std::string, double> params;
  const auto q = body.find('?');
  if (q != std::string::npos) {
    std::stringstream ss(body.substr(q + 1));
    std::string item;
    while (std::getline(ss, item, '&')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw InputError("bad sequence parameter '" + item + "'");
      const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(val, &used);
      } catch (const std::exception&) {
        throw InputError("parameter '" + key + "' is not a number");
      }
      if (used != val.size()) throw InputError("parameter '" + key + "' is not a number");
      if (!params.emplace(key, v).second) throw InputError("duplicate parameter '" + key + "'");
    }
    body = body.substr(0, q);
  }
  return builtin(body, params);
}

KLReport kl_constant(const TriangleSequence& seq, int nmax) {
  const int top = std::min(nmax, seq.max_n);
  if (top < 2) throw InputError("kl_constant needs Nmax >= 2");
  KLReport rep;
  rep.nmax = top;
  double worst = -INFINITY;
  for (int n = 2; n <= top; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const double p1 = seq.log_psi(n, 1), pn = seq.log_psi(n, n);
    if (!std::isfinite(p1) || !std::isfinite(pn)) throw NumericalError(seq.name + ": log phi not finite");
    for (int k = 1; k <= n; ++k) {
      const double theta = k == 1 ? 0.0 : (k == n ? 1.0 : std::log(static_cast<double>(k)) / ln);
      const double pk = seq.log_psi(n, k);
      if (!std::isfinite(pk)) throw NumericalError(seq.name + ": log phi not finite");
      const double excess = pk - (1.0 - theta) * p1 - theta * pn;
      if (k == 1 || k == n) rep.endpoint_excess = std::max(rep.endpoint_excess, std::abs(excess));
      if (excess > worst) {
        worst = excess;
        rep.worst_n = n;
        rep.worst_k = k;
      }
    }
  }
  if (rep.endpoint_excess > 1e-12) throw NumericalError(seq.name + ": nonzero excess at an interpolation endpoint");
  // excesses below 1e-12 are rounding in the log-domain interpolation
  rep.minimal_log_C = worst > 1e-12 ? worst : 0.0;
  rep.is_KL_star = rep.minimal_log_C == 0.0;
  return rep;
}

bool kl_star_check(const TriangleSequence& seq, int nmax) { return kl_constant(seq, nmax).is_KL_star; }

KLReport markov_table_kl(const MarkovTable& table, int nmax) {
  return kl_constant(TriangleSequence::from_markov_table(table), table_top(table, nmax));
}

TriangleSequence product(const TriangleSequence& a, const TriangleSequence& b) {
  TriangleSequence s;
  s.name = a.name + "*" + b.name;
  s.max_n = std::min(a.max_n, b.max_n);
  s.log_phi = [a, b](int n, int k) { return a.log_phi(n, k) + b.log_phi(n, k); };
  return s;
}

TriangleSequence power(const TriangleSequence& a, double m) {
  if (!(m > 0.0)) throw InputError("power needs m > 0");
  TriangleSequence s;
  s.name = "(" + a.name + ")^" + std::to_string(m);
  s.max_n = a.max_n;
  s.log_phi = [a, m](int n, int k) { return m * a.log_phi(n, k); };
  return s;
}

TriangleSequence maximum(const TriangleSequence& a, const TriangleSequence& b) {
  TriangleSequence s;
  s.name = "max(" + a.name + "," + b.name + ")";
  s.max_n = std::min(a.max_n, b.max_n);
  s.log_phi = [a, b](int n, int k) { return std::max(a.log_phi(n, k), b.log_phi(n, k)); };
  return s;
}

ClosureReport kl_closure_tests(const TriangleSequence& a, const TriangleSequence& b, double m, int nmax) {
  constexpr double tol = 1e-9;
  ClosureReport r;
  r.log_C1 = kl_constant(a, nmax).minimal_log_C;
  r.log_C2 = kl_constant(b, nmax).minimal_log_C;
  r.log_C_product = kl_constant(product(a, b), nmax).minimal_log_C;
  r.log_C_power = kl_constant(power(a, m), nmax).minimal_log_C;
  r.log_C_max = kl_constant(maximum(a, b), nmax).minimal_log_C;
  const int top = std::min({nmax, a.max_n, b.max_n});
  r.log_A1 = INFINITY;
  r.log_A2 = -INFINITY;
  for (int n = 2; n <= top; ++n)
    for (int k = 1; k <= n; ++k) {
      const double d = a.log_psi(n, k) - b.log_psi(n, k);
      r.log_A1 = std::min(r.log_A1, d);
      r.log_A2 = std::max(r.log_A2, d);
    }
  const double scale = 1.0 + std::abs(r.log_C1) + std::abs(r.log_C2);
  r.product_ok = r.log_C_product <= r.log_C1 + r.log_C2 + tol * scale;
  r.power_ok = r.log_C_power <= m * r.log_C1 + tol * scale * std::max(1.0, m);
  r.max_ok = r.log_C_max <= std::max(r.log_C1, r.log_C2) + tol * scale;
  r.equivalence_ok = std::abs(r.log_C1 - r.log_C2) <= r.log_A2 - r.log_A1 + tol * scale;
  return r;
}

HCPParams vm_to_hcp(const VMParams& vm) {
  if (!(vm.m >= 1.0) || !(vm.M > 0.0)) throw InputError("VM parameters need m >= 1, M > 0");
  return {1.0 / vm.m, vm.m * std::pow(vm.M, 1.0 / vm.m)};
}

VMParams hcp_to_vm(const HCPParams& h) {
  if (!(h.gamma > 0.0) || h.gamma > 1.0 || !(h.B > 0.0)) throw InputError("HCP parameters need 0 < gamma <= 1, B > 0");
  return {std::pow(h.gamma * std::numbers::e * h.B, 1.0 / h.gamma), 1.0 / h.gamma};
}

double hcp_capacity_floor(const HCPParams& h) {
  if (!(h.gamma > 0.0) || h.gamma > 1.0 || !(h.B > 0.0)) throw InputError("HCP parameters need 0 < gamma <= 1, B > 0");
  return 1.0 / std::pow(h.gamma * std::numbers::e * h.B, 1.0 / h.gamma);
}

double vm_capacity_floor(const VMParams& vm) {
  if (!(vm.m >= 1.0) || !(vm.M > 0.0)) throw InputError("VM parameters need m >= 1, M > 0");
  return std::exp(-vm.m) / vm.M;
}

double am_vn_bound(const AMParams& am, int n, double r) {
  if (!(am.m >= 1.0) || !(am.M > 0.0) || n < 1 || !(r >= 0.0)) throw InputError("bad AM bound arguments");
  return am.M * std::pow(n, am.m - 1.0) * r;
}

double am_vn_at_one(const AMParams& am, int n) {
  if (!(am.m >= 1.0) || !(am.M > 0.0) || n < 1) throw InputError("bad AM bound arguments");
  return am.M + (am.m - 1.0) * std::log(static_cast<double>(n));
}

double vm_vn_bound(const VMParams& vm, double r) {
  if (!(vm.m >= 1.0) || !(vm.M > 0.0) || !(r >= 0.0)) throw InputError("bad VM bound arguments");
  return vm.m * std::pow(vm.M, 1.0 / vm.m) * std::pow(r, 1.0 / vm.m);
}

VnBoundCurves am_to_vn_bounds(const AMParams& am, int n, const std::vector<double>& r) {
  VnBoundCurves c;
  c.r = r;
  const VMParams vm{am.M, am.m};
  for (double x : r) {
    c.am_linear.push_back(am_vn_bound(am, n, x));
    c.vm_root.push_back(vm_vn_bound(vm, x));
  }
  c.am_at_one = am_vn_at_one(am, n);
  return c;
}

Fit am_fit(const MarkovTable& table) {
  require_table(table);
  std::vector<FitPoint> pts;
  for (double m : exponent_grid()) {
    Envelope e;
    for (int n = 1; n <= table.nmax; ++n) e.push(table.log_value(n, 1) - m * std::log(static_cast<double>(n)));
    pts.push_back(finish_fit(m, e));
  }
  return collect(std::move(pts), table.nmax);
}

Fit vm_fit(const MarkovTable& table) {
  require_table(table);
  std::vector<FitPoint> pts;
  for (double m : exponent_grid()) {
    Envelope e;
    for (int n = 1; n <= table.nmax; ++n) {
      const double ln = std::log(static_cast<double>(n));
      double row = -INFINITY;
      for (int k = 1; k <= n; ++k)
        row = std::max(row, (table.log_value(n, k) - k * m * ln + (m - 1.0) * lfact(k)) / k);
      e.push(row);
    }
    pts.push_back(finish_fit(m, e));
  }
  return collect(std::move(pts), table.nmax);
}

Growth mn_n_growth(const MarkovTable& table) {
  require_table(table);
  Envelope e;
  for (int n = 1; n <= table.nmax; ++n) e.push((table.log_value(n, n) - lfact(n)) / n);
  Growth g;
  g.A = std::exp(e.last());
  g.growth = e.growth();
  g.feasible = g.growth <= kGrowthTolerance;
  return g;
}

namespace {

MarkovTable truncate(const MarkovTable& t, int top) {
  MarkovTable out = t;
  out.nmax = top;
  out.log_values.resize(top + 1);
  return out;
}

}  // namespace

Theorem68Report theorem_6_8_check(const MarkovTable& full, int nmax) {
  require_table(full);
  const MarkovTable table = truncate(full, table_top(full, nmax));
  Theorem68Report r;
  r.kl = markov_table_kl(table, table.nmax);
  const double kl_growth =
      table.nmax >= 4 ? r.kl.minimal_log_C - markov_table_kl(table, table.nmax / 2).minimal_log_C : 0.0;
  r.am = am_fit(table);
  r.vm = vm_fit(table);
  r.mnn = mn_n_growth(table);
  r.premise = kl_growth <= kGrowthTolerance && r.am.best.has_value() && r.mnn.feasible;
  r.vm_feasible = r.vm.best.has_value();
  r.consistent = r.vm_feasible == r.premise;
  bool chain_ok = true;
  if (r.premise) {
    // psi(n,1) <= M n^m and psi(n,n) <= A (n!)^(1/n) <= A n, interpolated in log k / log n,
    // give M(n,k) <= (C max(M, A))^k n^(km) / k^(k(m-1)) <= (C max(M, A))^k n^(km) / (k!)^(m-1).
    const double m = r.am.best->m;
    r.chain_M = std::exp(r.kl.minimal_log_C) * std::max(r.am.best->M, r.mnn.A);
    r.chain_slack = INFINITY;
    for (int n = 1; n <= table.nmax; ++n)
      for (int k = 1; k <= n; ++k) {
        const double bound = k * std::log(r.chain_M) + k * m * std::log(static_cast<double>(n)) - (m - 1.0) * lfact(k);
        r.chain_slack = std::min(r.chain_slack, bound - table.log_value(n, k));
      }
    chain_ok = r.chain_slack >= -1e-9;
  }
  r.pass = r.consistent && chain_ok;
  return r;
}

Theorem69Report theorem_6_9_check(const MarkovTable& table, const TriangleSequence& majorant, double alpha, double A,
                                  double B, double rel_tol) {
  require_table(table);
  if (!(A > 0.0) || !(B > 0.0)) throw InputError("majorant check needs A, B > 0");
  Theorem69Report r;
  const int top = std::min(table.nmax, majorant.max_n);
  r.majorant_kl = kl_constant(majorant, std::max(top, 2));
  double dom = -INFINITY, first = -INFINITY, diag = -INFINITY;
  for (int n = 1; n <= top; ++n) {
    for (int k = 1; k <= n; ++k) dom = std::max(dom, table.log_value(n, k) - majorant.log_phi(n, k));
    first = std::max(first, majorant.log_phi(n, 1) - std::log(A) - alpha * std::log(static_cast<double>(n)));
    diag = std::max(diag, majorant.log_phi(n, n) - n * std::log(B) - lfact(n));
  }
  r.worst_domination = std::exp(dom);
  r.worst_first = std::exp(first);
  r.worst_diagonal = std::exp(diag);
  r.dominated = r.worst_domination <= 1.0 + rel_tol;
  r.endpoints_ok = r.worst_first <= 1.0 + rel_tol && r.worst_diagonal <= 1.0 + rel_tol;
  r.vm = vm_fit(table);
  r.pass = r.dominated && r.endpoints_ok && r.vm.best.has_value();
  return r;
}

MStarReport m_star_check(const MarkovTable& table, double m) {
  require_table(table);
  if (!(m >= 1.0)) throw InputError("M* check needs m >= 1");
  MStarReport r;
  r.m = m;
  Envelope a, b;
  double worst = -INFINITY;
  std::vector<double> x;
  for (int n = 1; n <= table.nmax; ++n) {
    x.assign(n + 1, 0.0);
    for (int l = 1; l <= n; ++l) x[l] = (table.log_value(n, l) - lfact(l)) / l;
    double row = -INFINITY;
    for (int l = 1; l <= n; ++l)
      for (int k = l; k <= n; ++k) {
        const double v = x[l] - x[k] - m * std::log(static_cast<double>(k) / l);
        if (v > row) row = v;
        if (v > worst) {
          worst = v;
          r.worst_n = n;
          r.worst_l = l;
          r.worst_k = k;
        }
      }
    a.push(row);
    b.push(x[n]);
  }
  r.a_min = std::exp(a.last());
  r.growth = a.growth();
  r.satisfied = r.growth <= kGrowthTolerance;
  r.b = std::exp(b.last());
  r.vm_M = r.a_min * r.b;
  return r;
}

double disk_point_lower(int n, int k) {
  if (k < 1 || k > n) throw InputError("disk_point_lower needs 1 <= k <= n");
  // (n-1)...(n-k+1) has k-1 factors
  double acc = 0.0;
  for (int j = 1; j < k; ++j) acc += std::log(static_cast<double>(n - j));
  return std::exp(acc - k * std::numbers::ln2) * (n + k * (std::ldexp(1.0, n) - 1.0) / 3.0);
}

double disk_point_upper(int n, int k) {
  if (k < 1 || k > n) throw InputError("disk_point_upper needs 1 <= k <= n");
  return std::exp(k + (n - k) * std::numbers::ln2 + k * std::log(static_cast<double>(n)));
}

double disk_point_witness(int n, int k) {
  if (k < 1 || k > n) throw InputError("disk_point_witness needs 1 <= k <= n");
  const double h = std::ldexp(1.0, n - 1);
  const double a = (2.0 * h - 1.0) / (h + 1.0);
  // P = z^n - a z^(n-1); ||P|| over D u {2} is 1 + a = (2 - a) 2^(n-1)
  const double norm = std::max(1.0 + a, (2.0 - a) * h);
  const double c1 = std::exp(poly::log_falling_factorial(n, k));
  const double c2 = k <= n - 1 ? a * std::exp(poly::log_falling_factorial(n - 1, k)) : 0.0;
  auto dk = [&](engine::cplx z) {
    engine::cplx v = c1 * std::pow(z, n - k);
    if (c2 != 0.0) v -= c2 * std::pow(z, n - 1 - k);
    return std::abs(v);
  };
  double best = dk(2.0);
  constexpr int samples = 4096;
  for (int j = 0; j < samples; ++j) best = std::max(best, dk(std::polar(1.0, 2.0 * std::numbers::pi * j / samples)));
  return best / norm;
}

DiskPointReport disk_point_bounds_check(int nmax, int kmax) {
  if (nmax < 1 || nmax > 10) throw InputError("disk_point_bounds_check needs 1 <= Nmax <= 10");
  if (kmax < 1) throw InputError("disk_point_bounds_check needs kmax >= 1");
  const auto E = sets::CompactSet::disk_with_point(1.0, 2.0);
  const auto grid = sets::discretize(E, sets::min_density_for_degree(E, nmax));
  const auto q = sets::NormSpec::sup_on(grid);
  DiskPointReport rep;
  rep.pass = true;
  for (int n = 1; n <= nmax; ++n)
    for (int k = 1; k <= std::min(n, kmax); ++k) {
      DiskPointRow row;
      row.n = n;
      row.k = k;
      row.lp = engine::markov_factor(q, n, k).value;
      row.lower = disk_point_lower(n, k);
      row.upper = disk_point_upper(n, k);
      row.witness = disk_point_witness(n, k);
      row.ok = row.lower <= row.lp * (1 + 1e-9) && row.lp <= row.upper && row.witness <= row.lp * (1 + 1e-6) &&
               row.lower <= row.witness * (1 + 1e-12);
      rep.pass = rep.pass && row.ok;
      rep.rows.push_back(row);
    }
  return rep;
}

}  // namespace extremal::kl
