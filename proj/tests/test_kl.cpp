#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "extremal/errors.hpp"
#include "extremal/kl.hpp"

using namespace extremal;
using namespace extremal::kl;
using sets::CompactSet;

namespace {

const double kFactorialC = 11.0 / 12.0 + 1.0 / (2.0 * std::numbers::e) + 0.5 * std::log(2.0 * std::numbers::pi);

engine::MarkovTable closed_interval(int nmax) { return engine::closed_markov_table(CompactSet::interval(-1, 1), nmax); }
engine::MarkovTable closed_disk(int nmax) { return engine::closed_markov_table(CompactSet::disk(1), nmax); }
engine::MarkovTable coeff_table(int nmax) { return engine::markov_table(sets::NormSpec::coeff(2, 1), nmax); }

}  // namespace

TEST_CASE("catalog KL* entries have constant 1") {
  for (const auto& e : catalog()) {
    if (!e.kl_star) continue;
    const auto r = kl_constant(builtin(e.name), 500);
    INFO(e.name);
    CHECK(r.is_KL_star);
    CHECK(r.minimal_log_C <= 1e-12);
    CHECK(r.endpoint_excess <= 1e-12);
  }
  CHECK(kl_constant(parse_sequence("kl:kk")).minimal_log_C == 0.0);
  CHECK(kl_star_check(builtin("exp_sigma", {{"sigma", 0.3}})));
}

TEST_CASE("catalog KL entries stay below their stated constants") {
  for (const auto& e : catalog()) {
    if (e.kl_star) continue;
    const auto seq = builtin(e.name);
    const auto r = kl_constant(seq, 500);
    INFO(e.name);
    if (seq.stated_log_C) CHECK(r.minimal_log_C <= *seq.stated_log_C + 1e-12);
  }
  // log k! / (k log k) increases in k, so k! has no positive interpolation excess
  const auto f = kl_constant(parse_sequence("kl:factorial"), 500);
  CHECK(f.is_KL_star);
  CHECK(f.minimal_log_C <= kFactorialC);
  const auto b = kl_constant(parse_sequence("kl:binom_pow?m=2"), 500);
  CHECK_FALSE(b.is_KL_star);
  CHECK(b.minimal_log_C <= 2.0);
  for (double m : {0.5, 1.0, 3.0}) {
    const auto s = builtin("binom_pow", {{"m", m}});
    CHECK(kl_constant(s, 300).minimal_log_C <= m + 1e-12);
    CHECK(kl_constant(builtin("factorial_binom_pow", {{"m", m}}), 300).minimal_log_C <= m + kFactorialC + 1e-12);
  }
}

TEST_CASE("sequence parsing") {
  CHECK(parse_sequence("ex65_2").name == "ex65_2");
  CHECK(parse_sequence("kl:binom_pow?m=3").log_phi(4, 2) == doctest::Approx(3 * std::log(6.0)));
  CHECK(parse_sequence("exp_sigma?sigma=2").log_phi(5, 3) == doctest::Approx(6.0));
  CHECK_THROWS_AS(parse_sequence("kl:nope"), InputError);
  CHECK_THROWS_AS(parse_sequence("kl:factorial?m=2"), InputError);
  CHECK_THROWS_AS(parse_sequence("kl:binom_pow?m=x"), InputError);
  CHECK_THROWS_AS(parse_sequence("kl:binom_pow?m=2&m=3"), InputError);
  CHECK_THROWS_AS(parse_sequence("kl:factorial_exp_root?s=2"), InputError);
  CHECK_THROWS_AS(kl_constant(builtin("kk"), 1), InputError);
}

TEST_CASE("non-finite values are rejected") {
  TriangleSequence s{"bad", [](int n, int k) { return n == 7 && k == 3 ? NAN : 0.0; }};
  CHECK_THROWS_AS(kl_constant(s, 20), NumericalError);
}

TEST_CASE("closure under product, power, maximum and equivalence") {
  const auto r = kl_closure_tests(builtin("factorial"), builtin("binom_pow", {{"m", 1.0}}), 2.0);
  CHECK(r.pass());
  // exact power scaling
  CHECK(r.log_C_power == doctest::Approx(2.0 * r.log_C1).epsilon(1e-12));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  const std::vector<std::string> names{"kk", "exp_sigma", "ratio_pow", "two_pow", "factorial", "binom_pow",
                                       "factorial_binom_pow", "factorial_exp_root", "ratio_log_pow"};
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  for (int i = 0; i < 50; ++i) {
    auto make = [&](const std::string& n) {
      std::map<std::string, double> p;
      if (n == "exp_sigma") p["sigma"] = u(rng);
      if (n == "ratio_pow" || n == "binom_pow" || n == "factorial_binom_pow" || n == "ratio_log_pow") p["m"] = u(rng);
      if (n == "factorial_exp_root") p["s"] = std::min(1.0, u(rng) / 3.0);
      return builtin(n, p);
    };
    const auto a = make(names[pick(rng)]), b = make(names[pick(rng)]);
    const auto c = kl_closure_tests(a, b, u(rng), 120);
    INFO(a.name << " / " << b.name);
    CHECK(c.pass());
  }
}

TEST_CASE("Markov parameter transforms") {
  const auto h = vm_to_hcp({1.0, 2.0});
  CHECK(h.gamma == doctest::Approx(0.5));
  CHECK(h.B == doctest::Approx(2.0));
  const auto v = hcp_to_vm(h);
  CHECK(v.m == doctest::Approx(2.0));
  // round trip inflates M by e^m
  CHECK(v.M == doctest::Approx(std::exp(2.0)));
  CHECK(hcp_capacity_floor(h) == doctest::Approx(1.0 / std::exp(2.0)));
  CHECK(vm_capacity_floor({1.0, 2.0}) == doctest::Approx(std::exp(-2.0)));
  CHECK(vm_vn_bound({1.0, 2.0}, 4.0) == doctest::Approx(4.0));
  CHECK(am_vn_at_one({1.0, 2.0}, 8) == doctest::Approx(1.0 + std::log(8.0)));
  const auto c = am_to_vn_bounds({1.0, 2.0}, 4, {0.5, 1.0});
  CHECK(c.am_linear[1] == doctest::Approx(4.0));
  CHECK_THROWS_AS(vm_to_hcp({1.0, 0.5}), InputError);
  CHECK_THROWS_AS(hcp_to_vm({1.5, 1.0}), InputError);
}

TEST_CASE("A. and V. Markov fits") {
  const auto disk = closed_disk(200);
  const auto am = am_fit(disk);
  REQUIRE(am.best);
  CHECK(am.best->m == 1.0);
  CHECK(am.best->M == doctest::Approx(1.0));
  const auto iv = vm_fit(closed_interval(200));
  REQUIRE(iv.best);
  CHECK(iv.best->m == 2.0);
  CHECK(iv.best->M == doctest::Approx(1.0));
  const auto coeff = coeff_table(60);
  const auto ca = am_fit(coeff);
  REQUIRE(ca.best);
  CHECK(ca.best->m == 2.0);
  CHECK_FALSE(vm_fit(coeff).best);
  CHECK_FALSE(mn_n_growth(coeff).feasible);
  CHECK(mn_n_growth(closed_interval(200)).A == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("AM + KL + diagonal growth versus VM") {
  for (const auto& t : {closed_disk(120), closed_interval(120), coeff_table(60)}) {
    const auto r = theorem_6_8_check(t);
    INFO(t.descriptor);
    CHECK(r.consistent);
    CHECK(r.pass);
    if (r.premise) CHECK(r.chain_slack >= -1e-9);
  }
  CHECK_FALSE(theorem_6_8_check(coeff_table(60)).premise);
  CHECK(theorem_6_8_check(closed_interval(120)).premise);
}

TEST_CASE("interval majorant 2^k k! C(n,k)^2 gives V. Markov") {
  // T_n^(k)(1) / (k! C(n,k)^2) reaches 2^(n-1) at k = n
  const auto maj = product(builtin("exp_sigma", {{"sigma", std::numbers::ln2}}),
                           builtin("factorial_binom_pow", {{"m", 2.0}}));
  const auto r = theorem_6_9_check(closed_interval(100), maj, 2, 2, 2);
  CHECK(r.dominated);
  CHECK(r.endpoints_ok);
  CHECK(r.pass);
  CHECK(r.majorant_kl.minimal_log_C <= 2.0 + kFactorialC);
  CHECK_FALSE(theorem_6_9_check(closed_interval(20), builtin("factorial_binom_pow", {{"m", 2.0}}), 2, 1, 1).dominated);
  // k! alone is too small to dominate the interval table
  CHECK_FALSE(theorem_6_9_check(closed_interval(20), builtin("factorial"), 2, 1, 1).dominated);
}

TEST_CASE("M* condition") {
  const auto d = m_star_check(closed_disk(100), 1);
  CHECK(d.satisfied);
  // C(n,l)^(1/l) <= e n / l and C(n,k)^(1/k) >= n / k
  CHECK(d.a_min <= std::numbers::e);
  CHECK(d.b == doctest::Approx(1.0));
  CHECK(m_star_check(closed_interval(100), 2).satisfied);
  const auto c = m_star_check(coeff_table(60), 2);
  CHECK(c.satisfied);
  CHECK(std::isfinite(c.a_min));
  // M(n,n) = (n!)^2 admits no b^n n! bound: b tracks (n!)^(1/n)
  CHECK(c.b / m_star_check(coeff_table(30), 2).b > 1.8);
  const auto q = sets::NormSpec::sup_on(CompactSet::disk_with_point(1, 2), 4);
  const auto dp = engine::markov_table(q, 8);
  CHECK_FALSE(m_star_check(dp, 1).satisfied);
  CHECK_FALSE(m_star_check(dp, 2).satisfied);
}

TEST_CASE("disk with an exterior point") {
  CHECK(disk_point_lower(4, 1) == doctest::Approx(4.5));
  CHECK(disk_point_upper(4, 1) == doctest::Approx(std::exp(1.0) * 8 * 4));
  for (int n = 1; n <= 10; ++n)
    for (int k = 1; k <= std::min(n, 3); ++k) {
      INFO(n << "," << k);
      // witness attains the lower bound
      CHECK(disk_point_witness(n, k) == doctest::Approx(disk_point_lower(n, k)).epsilon(1e-12));
      CHECK(disk_point_lower(n, k) <= disk_point_upper(n, k));
    }
  const auto rep = disk_point_bounds_check(6, 3);
  for (const auto& row : rep.rows) {
    INFO(row.n << "," << row.k << " lp " << row.lp << " lower " << row.lower);
    CHECK(row.ok);
  }
  CHECK(rep.pass);
  CHECK_THROWS_AS(disk_point_lower(2, 3), InputError);
}

TEST_CASE("LP Markov table KL constant agrees with the closed table") {
  const auto q = sets::NormSpec::sup_on(CompactSet::interval(-1, 1), 3);
  const auto lp = markov_table_kl(engine::markov_table(q, 8), 8).minimal_log_C;
  const auto cf = markov_table_kl(closed_interval(8), 8).minimal_log_C;
  CHECK(std::abs(std::exp(lp) / std::exp(cf) - 1) <= 0.02);
}

TEST_CASE("Markov tables classified as KL") {
  const auto d = markov_table_kl(closed_disk(200), 200);
  CHECK(d.minimal_log_C <= 1.0 + kFactorialC);
  CHECK(std::isfinite(markov_table_kl(coeff_table(100), 100).minimal_log_C));
  CHECK_THROWS_AS(am_fit(engine::MarkovTable{}), InputError);
}
