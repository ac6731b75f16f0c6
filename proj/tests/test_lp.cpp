#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "doctest.h"
#include "extremal/lp.hpp"

using namespace extremal::engine;

namespace {

LinearProgram make(std::size_t n, std::vector<double> obj) {
  LinearProgram lp(n);
  lp.objective = std::move(obj);
  return lp;
}

// Vertex enumeration oracle for tiny LPs with <= rows only.
double brute_force_max(const LinearProgram& lp) {
  const std::size_t d = lp.num_vars, m = lp.num_rows();
  double best = -INFINITY;
  std::vector<std::size_t> pick(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      Eigen::MatrixXd M(d, d);
      Eigen::VectorXd b(d);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t j = 0; j < d; ++j) M(r, j) = lp.row(pick[r])[j];
        b(r) = lp.rhs[pick[r]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      if (!lu.isInvertible()) return;
      Eigen::VectorXd x = lu.solve(b);
      for (std::size_t i = 0; i < m; ++i) {
        double ax = 0.0;
        for (std::size_t j = 0; j < d; ++j) ax += lp.row(i)[j] * x(j);
        if (ax > lp.rhs[i] + 1e-9) return;
      }
      double v = 0.0;
      for (std::size_t j = 0; j < d; ++j) v += lp.objective[j] * x(j);
      best = std::max(best, v);
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("tiny textbook LPs") {
  auto lp = make(1, {1.0});
  lp.add_row(std::vector<double>{1.0}, Relation::LessEqual, 3.0);
  auto s = solve_lp(lp);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.value == doctest::Approx(3.0).epsilon(1e-12));

  auto lp2 = make(2, {1.0, 1.0});
  lp2.add_row(std::vector<double>{1.0, 1.0}, Relation::LessEqual, 1.0);
  lp2.set_bounds(0, 0.0, INFINITY);
  lp2.set_bounds(1, 0.0, INFINITY);
  s = solve_lp(lp2);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.x[0] >= -1e-12);
  CHECK(s.x[1] >= -1e-12);

  auto lp3 = make(2, {1.0, 2.0});
  lp3.add_row(std::vector<double>{1.0, 1.0}, Relation::Equal, 1.0);
  lp3.set_bounds(0, 0.0, INFINITY);
  lp3.set_bounds(1, 0.0, INFINITY);
  s = solve_lp(lp3);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.x[1] == doctest::Approx(1.0));
}

TEST_CASE("infeasible and unbounded") {
  auto lp = make(1, {1.0});
  lp.add_row(std::vector<double>{1.0}, Relation::LessEqual, 1.0);
  lp.add_row(std::vector<double>{-1.0}, Relation::LessEqual, -2.0);
  CHECK(solve_lp(lp).status == LPStatus::Infeasible);

  auto lp2 = make(1, {1.0});
  lp2.add_row(std::vector<double>{-1.0}, Relation::LessEqual, 0.0);
  CHECK(solve_lp(lp2).status == LPStatus::Unbounded);

  auto lp3 = make(2, {0.0, 1.0});
  lp3.add_row(std::vector<double>{1.0, 0.0}, Relation::LessEqual, 1.0);
  lp3.add_row(std::vector<double>{-1.0, 0.0}, Relation::LessEqual, -2.0);
  CHECK(solve_lp(lp3).status == LPStatus::Infeasible);

  auto lp4 = make(1, {1.0});
  lp4.add_row(std::vector<double>{0.0}, Relation::LessEqual, -1.0);
  CHECK(solve_lp(lp4).status == LPStatus::Infeasible);
}

TEST_CASE("Beale cycling example terminates") {
  auto lp = make(4, {0.75, -20.0, 0.5, -6.0});
  lp.add_row(std::vector<double>{0.25, -8.0, -1.0, 9.0}, Relation::LessEqual, 0.0);
  lp.add_row(std::vector<double>{0.5, -12.0, -0.5, 3.0}, Relation::LessEqual, 0.0);
  lp.add_row(std::vector<double>{0.0, 0.0, 1.0, 0.0}, Relation::LessEqual, 1.0);
  for (std::size_t j = 0; j < 4; ++j) lp.set_bounds(j, 0.0, INFINITY);
  LPOptions opts;
  opts.degenerate_run_before_bland = 0;  // pure Bland
  for (auto o : {LPOptions{}, opts}) {
    const auto s = solve_lp(lp, o);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(s.value == doctest::Approx(1.25).epsilon(1e-10));
  }
}

TEST_CASE("random LPs match vertex enumeration") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 2 + trial % 3;
    LinearProgram lp(d);
    for (auto& c : lp.objective) c = nd(rng);
    std::vector<double> row(d);
    for (std::size_t j = 0; j < d; ++j) {
      std::fill(row.begin(), row.end(), 0.0);
      row[j] = 1.0;
      lp.add_row(row, Relation::LessEqual, 2.0);
      row[j] = -1.0;
      lp.add_row(row, Relation::LessEqual, 2.0);
    }
    for (int i = 0; i < 6; ++i) {
      for (auto& v : row) v = nd(rng);
      lp.add_row(row, Relation::LessEqual, std::abs(nd(rng)) + 0.1);
    }
    const auto s = solve_lp(lp);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(s.value == doctest::Approx(brute_force_max(lp)).epsilon(1e-9));
    CHECK(s.primal_violation <= 1e-8);
    CHECK(s.complementarity <= 1e-6);
  }
}

TEST_CASE("pivot cap reports stalled") {
  auto lp = make(2, {1.0, 1.0});
  lp.add_row(std::vector<double>{1.0, 2.0}, Relation::LessEqual, 4.0);
  lp.add_row(std::vector<double>{3.0, 1.0}, Relation::LessEqual, 6.0);
  lp.set_bounds(0, 0.0, INFINITY);
  lp.set_bounds(1, 0.0, INFINITY);
  LPOptions o;
  o.max_pivots = 1;
  CHECK(solve_lp(lp, o).status == LPStatus::Stalled);
  CHECK(solve_lp(lp).value == doctest::Approx(2.8));
}

TEST_CASE("wide LP: polygon constraints on many points") {
  // max Re(c) over |c| relaxed to a 16-gon: value is sec(pi/16) at the vertex angle.
  const double pi = std::acos(-1.0);
  LinearProgram lp(2);
  lp.objective = {std::cos(pi / 16), std::sin(pi / 16)};
  for (int a = 0; a < 16; ++a) {
    const double th = 2 * pi * a / 16;
    for (int rep = 0; rep < 500; ++rep) lp.add_row(std::vector<double>{std::cos(th), -std::sin(th)}, Relation::LessEqual, 1.0);
  }
  const auto s = solve_lp(lp);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.value == doctest::Approx(1.0 / std::cos(pi / 16)).epsilon(1e-12));
}
