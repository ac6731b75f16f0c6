#include "extremal/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "extremal/errors.hpp"
#include "extremal/kl.hpp"
#include "extremal/psi.hpp"
#include "extremal/radial.hpp"

namespace extremal::cli {

namespace {

using sets::CompactSet;
using sets::NormSpec;

const double kE = std::numbers::e;

std::string tag(const std::string& base, int n, int k = -1) {
  std::string s = base + "[n=" + std::to_string(n);
  if (k >= 0) s += ",k=" + std::to_string(k);
  return s + "]";
}

std::string real_tag(const std::string& base, double x) { return base + "[" + format_number(x) + "]"; }

double min_second_difference(const std::vector<double>& u) {
  double worst = INFINITY;
  for (std::size_t i = 1; i + 1 < u.size(); ++i) worst = std::min(worst, u[i + 1] - 2.0 * u[i] + u[i - 1]);
  return worst;
}

}  // namespace

SuiteReport markov_oracle_checks() {
  SuiteReport r{"markov-oracle", {}};
  const auto I = CompactSet::interval(-1, 1);
  const auto table = engine::markov_table(NormSpec::sup_on(I, sets::min_density_for_degree(I, 8)), 8);
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k) {
      const double exact = poly::chebyshev_derivative_at_one(n, k);
      worst = std::max(worst, std::abs(table.value(n, k) / exact - 1.0));
    }
  r.add(upper_check("interval LP M(n,k) vs T_n^(k)(1), n<=8, max rel err", worst, 0.005, 0.0, "oracle"));
  r.add(approx_check("interval LP M(4,2)", table.value(4, 2), 80.0, 0.005, "oracle"));
  const auto disk = NormSpec::sup_on(CompactSet::disk(1), 2);
  r.add(approx_check("disk M(4,2)", engine::markov_factor(disk, 4, 2).value, 12.0, 1e-12, "closed form"));
  r.add(approx_check("coeff m=2 M(3,1)", engine::markov_factor(NormSpec::coeff(2, 1), 3, 1).value, 9.0, 1e-12,
                     "closed form"));
  return r;
}

SuiteReport radial_closed_checks() {
  SuiteReport r{"radial-closed", {}};
  const auto D = CompactSet::disk(1);
  const auto gd = sets::discretize(D, 2);
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n)
    for (double x : {0.5, 1.0, 2.0})
      worst = std::max(worst, std::abs(engine::phi_n_radial(D, gd, n, x) / std::pow(1.0 + x, n) - 1.0));
  r.add(upper_check("disk phi_n(r) vs (1+r)^n, n<=8, max rel err", worst, 1e-12, 0.0, "closed form"));

  const auto I = CompactSet::interval(-1, 1);
  const double h2 = poly::h(2.0);
  double prev = 0.0;
  bool increasing = true;
  double root32 = 0.0;
  for (int n : {8, 16, 32}) {
    const auto grid = sets::discretize(I, sets::min_density_for_degree(I, n));
    const double v = std::pow(engine::phi_n_radial(I, grid, n, 1.0), 1.0 / n);
    increasing = increasing && v > prev;
    prev = v;
    root32 = v;
    r.add(upper_check(tag("interval phi_n(1)^(1/n) <= h(2)", n), v, h2, 1e-9, "closed form"));
  }
  r.add(bool_check("interval phi_n(1)^(1/n) increasing in n", increasing, "closed form"));
  r.add(approx_check("interval phi_32(1)^(1/32) within 2% of h(2)", root32, h2, 0.02, "closed form",
                     "exact value is T_32(2)^(1/32) = 2^(-1/32) h(2), 2.14% below"));
  return r;
}

SuiteReport convexity_checks(const std::vector<int>& degrees, int points) {
  SuiteReport r{"convexity", {}};
  if (points < 3) throw InputError("convexity needs at least 3 t-points");
  std::vector<double> t;
  for (int i = 0; i < points; ++i) t.push_back(-4.0 + 8.0 * i / (points - 1));
  for (const auto& set : {CompactSet::disk(1), CompactSet::interval(-1, 1), CompactSet::green_level(2),
                          CompactSet::disk_with_point(1, 2)}) {
    for (int n : degrees) {
      const auto grid = sets::discretize(set, sets::min_density_for_degree(set, n));
      const auto curve = engine::u_n_curve(set, grid, n, t);
      r.add(lower_check(tag("min second difference of u_n, " + set.describe(), n), min_second_difference(curve.u),
                        0.0, 1e-8, "scan", curve.method));
    }
  }
  return r;
}

SuiteReport capacity_checks() {
  SuiteReport r{"capacity", {}};
  const auto D = CompactSet::disk(1);
  const auto I = CompactSet::interval(-1, 1);
  r.add(approx_check("C(disk)", engine::capacity_C(D).value, 1.0, 0.01, "closed form"));
  r.add(approx_check("C(interval)", engine::capacity_C(I).value, 0.5, 0.01, "closed form"));
  for (int n = 1; n <= 8; ++n) {
    const auto q = NormSpec::sup_on(sets::discretize(I, sets::min_density_for_degree(I, n)));
    r.add(approx_check(tag("t_n(interval)", n), engine::chebyshev_monic(q, n).t_n, std::ldexp(1.0, 1 - n), 0.005,
                       "oracle"));
  }
  for (int n : {2, 4, 8}) {
    const auto grid = sets::discretize(I, std::max(3, sets::min_density_for_degree(I, n)));
    const double cn = engine::capacity_Cn(I, grid, n, 1).value;
    const double tn = engine::chebyshev_monic(NormSpec::sup_on(grid), n).t_n;
    r.add(lower_check(tag("t_n^(1/n) >= C_n, interval", n), std::pow(tn, 1.0 / n), cn, 1e-3, "bound"));
  }
  const auto gd = sets::discretize(D, 2);
  for (int n : {2, 4}) {
    const double cn = engine::capacity_Cn(D, gd, n, 1).value;
    const double tn = engine::chebyshev_monic(NormSpec::sup_on(gd), n).t_n;
    r.add(lower_check(tag("t_n^(1/n) >= C_n, disk", n), std::pow(tn, 1.0 / n), cn, 1e-3, "bound"));
  }
  return r;
}

SuiteReport kl_catalog_checks(std::uint64_t seed) {
  SuiteReport r{"kl-catalog", {}};
  for (const auto& e : kl::catalog()) {
    const auto seq = kl::builtin(e.name);
    const auto rep = kl::kl_constant(seq, 500);
    if (e.kl_star) {
      r.add(upper_check(e.name + " KL* constant, Nmax=500", rep.minimal_log_C, 1e-12, 0.0, "closed form"));
    } else if (seq.stated_log_C) {
      r.add(upper_check(e.name + " log C <= stated, Nmax=500", rep.minimal_log_C, *seq.stated_log_C, 1e-12,
                        "closed form"));
    } else {
      Check c = bool_check(e.name + " log C reported, Nmax=500", std::isfinite(rep.minimal_log_C), "scan",
                           "no stated constant; measured " + format_number(rep.minimal_log_C));
      c.measured = rep.minimal_log_C;
      c.status = Status::Flagged;
      r.add(c);
    }
    const auto half = kl::kl_constant(seq, 250);
    r.add(bool_check(e.name + " constant monotone in Nmax", half.minimal_log_C <= rep.minimal_log_C, "scan"));
  }
  r.add(upper_check("binom_pow m=2 log C, Nmax=300",
                    kl::kl_constant(kl::builtin("binom_pow", {{"m", 2.0}}), 300).minimal_log_C, 2.0, 1e-12,
                    "closed form"));

  // closure laws on random catalog pairs
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> sigma(0.1, 3.0), mexp(1.0, 3.0), sdist(0.05, 1.0);
  const std::vector<std::string> names{"kk",        "exp_sigma", "ratio_pow",           "kk_ratio_pow",
                                       "two_pow",   "factorial", "binom_pow",           "factorial_binom_pow",
                                       "factorial_exp_root",     "ratio_log_pow"};
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  auto make = [&](const std::string& n) {
    std::map<std::string, double> p;
    if (n == "exp_sigma") p["sigma"] = sigma(rng);
    if (n == "ratio_pow" || n == "kk_ratio_pow" || n == "binom_pow" || n == "factorial_binom_pow" ||
        n == "ratio_log_pow")
      p["m"] = mexp(rng);
    if (n == "factorial_exp_root") p["s"] = sdist(rng);
    return kl::builtin(n, p);
  };
  int failures = 0;
  for (int i = 0; i < 50; ++i) {
    const auto a = make(names[pick(rng)]);
    const auto b = make(names[pick(rng)]);
    if (!kl::kl_closure_tests(a, b, mexp(rng), 200).pass()) ++failures;
  }
  Check closure = bool_check("closure laws on 50 random pairs", failures == 0, "scan");
  closure.measured = failures;
  closure.target = 0;
  r.add(closure);

  const auto h = kl::vm_to_hcp({1.0, 2.0});
  r.add(bool_check("vm_to_hcp({m:2,M:1}) = {1/2, 2}", std::abs(h.gamma - 0.5) < 1e-15 && std::abs(h.B - 2.0) < 1e-15,
                   "closed form"));
  const auto back = kl::hcp_to_vm(h);
  r.add(approx_check("round trip M inflation e^m", back.M, std::exp(2.0), 1e-12, "closed form"));

  // LP and closed interval tables agree in class and constant
  const auto I = CompactSet::interval(-1, 1);
  const auto lp = engine::markov_table(NormSpec::sup_on(I, sets::min_density_for_degree(I, 8)), 8);
  const auto cf = engine::closed_markov_table(I, 8);
  const auto klp = kl::markov_table_kl(lp, 8), kcf = kl::markov_table_kl(cf, 8);
  r.add(bool_check("interval LP vs closed table: same class", klp.is_KL_star == kcf.is_KL_star, "oracle"));
  r.add(approx_check("interval LP vs closed table: constant", std::exp(klp.minimal_log_C),
                     std::exp(kcf.minimal_log_C), 0.02, "oracle"));
  const auto disk = kl::markov_table_kl(engine::closed_markov_table(CompactSet::disk(1), 200), 200);
  r.add(upper_check("disk table log C", disk.minimal_log_C, 1.0 + *kl::builtin("factorial").stated_log_C, 1e-12,
                    "closed form"));
  return r;
}

SuiteReport markov_chain_checks(const RunConfig& cfg) {
  SuiteReport r{"markov-chain", {}};
  const auto res = resolve(cfg, cfg.nmax.value_or(8));
  if (!res.norm) throw UnsupportedError("markov-chain needs a norm with Markov factors");
  const int nmax = cfg.nmax.value_or(8);
  const bool closed_set = res.set && res.norm->kind() == sets::NormKind::Sup &&
                          (res.set->kind() == sets::SetKind::Interval || res.set->kind() == sets::SetKind::Disk);
  const auto table = closed_set ? engine::closed_markov_table(*res.set, std::max(nmax, 200))
                                : engine::markov_table(*res.norm, nmax);
  const auto vm = kl::vm_fit(table);
  if (!vm.best) {
    Check c = bool_check("V. Markov fit feasible", false, "scan", "no exponent in [1,4] fits the table");
    c.status = Status::Flagged;
    r.add(c);
    return r;
  }
  const kl::VMParams p{vm.best->M, vm.best->m};
  const auto h = kl::vm_to_hcp(p);
  r.add(approx_check("HCP gamma = 1/m", h.gamma, 1.0 / p.m, 1e-12, "closed form"));
  r.add(approx_check("HCP B = m M^(1/m)", h.B, p.m * std::pow(p.M, 1.0 / p.m), 1e-12, "closed form"));

  // measured capacity; for norms without a set the Chebyshev-number proxy is flagged
  double cap = 0.0;
  bool heuristic = false;
  if (res.set && res.norm->kind() == sets::NormKind::Sup) {
    const auto est = engine::capacity_C(*res.set);
    cap = est.value;
    heuristic = est.heuristic;
  } else {
    const int n = std::min(nmax, 20);
    cap = std::pow(engine::chebyshev_monic(*res.norm, n).t_n, 1.0 / n);
    heuristic = true;
  }
  const double floor = kl::vm_capacity_floor(p);
  Check fl = lower_check("capacity >= e^(-m)/M", cap, floor, 0.0, "bound",
                         heuristic ? "capacity measured as t_n^(1/n) at the largest n" : "");
  if (heuristic && fl.status == Status::Pass) fl.status = Status::Flagged;
  r.add(fl);
  r.add(lower_check("gamma e B C^gamma >= 1", h.gamma * kE * h.B * std::pow(cap, h.gamma), 1.0, 1e-12, "bound"));
  r.add(approx_check("HCP capacity floor = 1/(gamma e B)^(1/gamma)", kl::hcp_capacity_floor(h),
                     1.0 / std::pow(h.gamma * kE * h.B, 1.0 / h.gamma), 1e-12, "closed form"));

  if (res.set && sets::has_closed_phi(*res.set)) {
    double worst = -INFINITY;
    for (int i = 0; i < 200; ++i) {
      const double x = std::pow(10.0, -3.0 + 6.0 * i / 199.0);
      worst = std::max(worst, sets::closed_log_phi(*res.set, x) - kl::vm_vn_bound(p, x));
    }
    r.add(upper_check("log phi(r) - m M^(1/m) r^(1/m) on 200 r-points", worst, 0.0, 0.0, "bound"));
  }
  return r;
}

SuiteReport plesniak_checks() {
  SuiteReport r{"plesniak", {}};
  const auto pd = radial::RadialProfile::closed_form(CompactSet::disk(1));
  const auto pi = radial::RadialProfile::closed_form(CompactSet::interval(-1, 1));
  for (double x : {0.25, 0.5, 1.0, 2.0})
    r.add(approx_check(real_tag("P_1(disk, r) vs e^r", x), radial::plesniak_P(pd, 1, x, 256).value, std::exp(x), 0.01,
                       "closed form"));
  r.add(approx_check("B_2(interval, 2) vs e^2", radial::plesniak_B(pi, 2, 2, 256, 256).value, kE * kE, 0.02,
                     "closed form"));
  const auto cb = radial::C_B_const(pi, 2);
  r.add(approx_check("C_B(interval, 2) vs 2/e^2", cb.sup.value, 2.0 / (kE * kE), 0.015, "closed form"));
  r.add(approx_check("C_B(interval, 2) vs H_(1/2)", cb.sup.value, cb.H, 1e-3, "closed form"));
  r.add(approx_check("B(1/2) interval vs sqrt 2", radial::B_gamma(pi, 0.5).value, std::sqrt(2.0), 0.01,
                     "closed form"));
  r.add(approx_check("C_P(disk, 1) vs 1/e", radial::C_P_const(pd, 1).value, 1.0 / kE, 0.01, "closed form"));
  r.add(bool_check("P* scaling inequality, disk m=1",
                   radial::theorem_5_11_check(pd, 1, {0.1, 0.5, 1.0, 2.0}, {1, 2, 3, 5}).pass, "bound"));
  return r;
}

SuiteReport sandwich_checks() {
  SuiteReport r{"e-sandwich", {}};
  const auto d = engine::e_sandwich_check(CompactSet::disk(1), 10);
  r.add(lower_check("disk inf / C(n,l), min", d.worst_lower, 1.0, 1e-9, "bound"));
  r.add(upper_check("disk inf / (e^l C(n,l)), max", d.worst_upper, 1.0, 1e-9, "bound"));
  const auto i = engine::e_sandwich_check(CompactSet::interval(-1, 1), 10);
  r.add(lower_check("interval inf / (M/l!), min", i.worst_lower, 1.0, 1e-9, "bound"));
  r.add(upper_check("interval inf / (e^((sqrt2+sqrt6)l) M/l!), max", i.worst_upper, 1.0, 1e-9, "bound"));
  Check e = upper_check("interval e estimate <= e^(sqrt2+sqrt6)", i.e_est, std::exp(std::sqrt(2.0) + std::sqrt(6.0)),
                        0.0, "bound", "e^(sqrt2+sqrt3) = " + format_number(std::exp(std::sqrt(2.0) + std::sqrt(3.0))));
  r.add(e);
  return r;
}

SuiteReport laplacian_checks() {
  SuiteReport r{"laplacian", {}};
  for (const auto& set : {CompactSet::disk(1), CompactSet::disk(2), CompactSet::interval(-1, 1),
                          CompactSet::interval(0, 3), CompactSet::green_level(2), CompactSet::disk_with_point(1, 2)}) {
    const auto lap = radial::laplacian_verify(set);
    r.add(upper_check("Laplacian max rel err, " + set.describe(), lap.max_rel_error, 1e-3, 0.0, "closed form"));
    const auto monn = radial::monn_limit_verify(set);
    r.add(upper_check("limit probe rel err, " + set.describe(), monn.rel_error.back(), 0.01, 0.0, "closed form"));
  }
  return r;
}

SuiteReport disk_point_checks() {
  SuiteReport r{"disk-point", {}};
  const auto rep = kl::disk_point_bounds_check(10, 3);
  for (const auto& row : rep.rows) {
    r.add(lower_check(tag("LP >= lower bound", row.n, row.k), row.lp * (1 + 1e-9), row.lower, 0.0, "bound"));
    r.add(upper_check(tag("LP <= upper bound", row.n, row.k), row.lp, row.upper, 0.0, "bound"));
    r.add(approx_check(tag("witness attains lower bound", row.n, row.k), row.witness, row.lower, 1e-9, "oracle"));
  }
  const auto dp = CompactSet::disk_with_point(1, 2);
  const auto table = engine::markov_table(NormSpec::sup_on(dp, 4), 8);
  for (double m : {1.0, 2.0}) {
    const auto s = kl::m_star_check(table, m);
    Check c = bool_check(real_tag("M* condition violated, disk with point, m", m), !s.satisfied, "scan",
                         "a growth over last doubling " + format_number(s.growth));
    c.measured = s.a_min;
    r.add(c);
  }
  const auto coeff = kl::m_star_check(engine::markov_table(NormSpec::coeff(2, 1), 60), 2);
  Check c = bool_check("M* condition satisfied, coeff m=2", coeff.satisfied, "scan");
  c.measured = coeff.a_min;
  r.add(c);
  return r;
}

SuiteReport vm_chain_checks() {
  SuiteReport r{"vm-chain", {}};
  const auto D = CompactSet::disk(1), I = CompactSet::interval(-1, 1);
  for (const auto& [name, table] : {std::pair{std::string("disk"), engine::closed_markov_table(D, 120)},
                                    std::pair{std::string("interval"), engine::closed_markov_table(I, 120)}}) {
    const auto t = kl::theorem_6_8_check(table);
    r.add(bool_check(name + ": KL + AM + diagonal growth premise", t.premise, "scan"));
    r.add(bool_check(name + ": VM feasible", t.vm_feasible, "scan"));
    r.add(lower_check(name + ": chain slack", t.chain_slack, 0.0, 1e-9, "bound"));
  }
  const auto coeff = kl::theorem_6_8_check(engine::markov_table(NormSpec::coeff(2, 1), 60));
  r.add(bool_check("coeff m=2: AM feasible", coeff.am.best.has_value(), "scan"));
  r.add(bool_check("coeff m=2: VM infeasible", !coeff.vm_feasible, "scan"));
  r.add(bool_check("coeff m=2: diagonal growth violated", !coeff.mnn.feasible, "scan"));
  r.add(bool_check("coeff m=2: consistent", coeff.consistent, "scan"));

  const auto maj_i = kl::product(kl::builtin("exp_sigma", {{"sigma", std::numbers::ln2}}),
                                 kl::builtin("factorial_binom_pow", {{"m", 2.0}}));
  const auto di = kl::theorem_6_9_check(engine::closed_markov_table(I, 100), maj_i, 2, 2, 2);
  r.add(upper_check("interval: M(n,k) / (2^k k! C(n,k)^2), max", di.worst_domination, 1.0, 1e-6, "bound"));
  r.add(bool_check("interval: majorant endpoints and VM", di.pass, "bound"));
  const auto maj_d = kl::builtin("factorial_binom_pow", {{"m", 1.0}});
  const auto dd = kl::theorem_6_9_check(engine::closed_markov_table(D, 100), maj_d, 1, 1, 1);
  r.add(upper_check("disk: M(n,k) / (k! C(n,k)), max", dd.worst_domination, 1.0, 1e-6, "bound"));
  r.add(bool_check("disk: majorant endpoints and VM", dd.pass, "bound"));
  return r;
}

SuiteReport psi_checks() {
  SuiteReport r{"psi", {}};
  using engine::cplx;
  double worst_sphere = 0.0;
  for (int m : {1, 2, 3})
    for (int j = 0; j < 32; ++j) {
      const double a = std::numbers::pi * j / 32.0;
      const double x1 = std::cos(a), x2 = std::sin(a);
      const double nrm = engine::lp_norm(m, x1, x2);
      worst_sphere = std::max(worst_sphere, std::abs(engine::psi_product(m, x1 / nrm, x2 / nrm) - 1.0));
    }
  r.add(upper_check("product form on the real sphere, |value - 1|", worst_sphere, 1e-6, 0.0, "closed form"));

  const auto grid = engine::sphere_grid([](double a, double b) { return engine::lp_norm(1, a, b); }, 128);
  const cplx z1(1.0, 0.0), z2(0.0, 1.0);
  const int n = 4;
  const double base = engine::psi_homogeneous_lp(grid, n, z1, z2);
  double worst_h = 0.0;
  for (double lam : {0.5, 2.0, 3.0})
    worst_h = std::max(worst_h, std::abs(engine::psi_homogeneous_lp(grid, n, lam * z1, lam * z2) / (lam * base) - 1.0));
  r.add(upper_check("LP homogeneity, rel err", worst_h, 1e-6, 0.0, "closed form"));

  Check x = approx_check("product vs LP at (1,i), m=1", engine::psi_product(1, z1, z2), base, 0.05, "oracle",
                         "cross-check only");
  x.status = Status::Flagged;
  r.add(x);
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"closed-forms", "convexity", "markov-chain", "plesniak",
                                          "kl-catalog",   "laplacian", "disk-point",   "all"};
  return n;
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw InputError("unknown suite '" + name + "'");
  SuiteReport out{name, {}};
  const bool all = name == "all";
  if (all || name == "closed-forms") {
    out.append(markov_oracle_checks());
    out.append(radial_closed_checks());
    out.append(capacity_checks());
    out.append(sandwich_checks());
    out.append(psi_checks());
  }
  if (all || name == "convexity") out.append(convexity_checks());
  if (all || name == "markov-chain") {
    out.append(markov_chain_checks(cfg));
    out.append(vm_chain_checks());
  }
  if (all || name == "plesniak") out.append(plesniak_checks());
  if (all || name == "kl-catalog") out.append(kl_catalog_checks(cfg.seed.value_or(kDefaultSeed)));
  if (all || name == "laplacian") out.append(laplacian_checks());
  if (all || name == "disk-point") out.append(disk_point_checks());
  return out;
}

}  // namespace extremal::cli
