#include <algorithm>
#include <cmath>
#include <numbers>

#include "extremal/engine.hpp"
#include "extremal/errors.hpp"

namespace extremal::engine {

namespace {

constexpr double kPi = std::numbers::pi;

struct Candidate {
  cplx w;
  double bound;
};

}  // namespace

double phi_n_radial(const CompactSet& set, const Grid& grid, int n, double r, const RadialOptions& opts) {
  if (n < 0) throw InputError("degree must be >= 0");
  if (!(r >= 0.0) || !std::isfinite(r)) throw InputError("radius must be finite and >= 0");
  if (r == 0.0 || n == 0) return 1.0;
  const bool disk = set.kind() == sets::SetKind::Disk;
  const bool sym = set.conjugation_symmetric();
  // keep directions within one angular step of the outward normal
  const double slack = 1.0 - std::cos(2.0 * kPi / kObjectiveAngles) + 1e-12;
  const double kappa = grid_norm_factor(grid, n);
  std::vector<Candidate> cands;
  for (std::size_t j : sets::coarse_subgrid(grid, opts.coarse_points)) {
    const cplx z = grid.nodes[j];
    for (int a = 0; a < kObjectiveAngles; ++a) {
      const cplx w = z + std::polar(r, 2.0 * kPi * a / kObjectiveAngles);
      if (sym && w.imag() < -1e-12 * (1.0 + std::abs(w))) continue;
      if (sets::distance_to_set(set, w) < r * (1.0 - slack)) continue;
      cands.push_back({w, kappa * std::pow(sets::siciak_upper(set, w), n)});
    }
  }
  if (cands.empty()) throw NumericalError("phi_n_radial: no candidate points survived the distance filter");
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.bound > b.bound; });
  double best = 1.0;
  if (disk) {
    for (const auto& c : cands) best = std::max(best, phi_n_point(set, grid, c.w, n));
    return best;
  }
  GridLP model(grid, n);
  for (const auto& c : cands) {
    if (opts.prune && best >= c.bound) break;
    best = std::max(best, model.max_functional(model.basis_values(c.w)));
  }
  return best;
}

double log_phi_n_coeff(const sets::CoeffNorm& q, int n, double r) {
  if (n < 0 || !(r >= 0.0)) throw InputError("phi_n_coeff needs n >= 0 and r >= 0");
  if (r == 0.0) return 0.0;
  double best = 0.0;
  for (int j = 1; j <= n; ++j) {
    double m = -INFINITY;
    std::vector<double> terms(j + 1);
    for (int l = 0; l <= j; ++l) {
      terms[l] = poly::log_binomial(j, l) + (q.m - 1.0) * (poly::log_factorial(j) - poly::log_factorial(l)) +
                 (l - j) * std::log(q.tau) + (j - l) * std::log(r);
      m = std::max(m, terms[l]);
    }
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - m);
    best = std::max(best, m + std::log(acc));
  }
  return best;
}

double phi_n_coeff(const sets::CoeffNorm& q, int n, double r) { return std::exp(log_phi_n_coeff(q, n, r)); }

ExtremalCurve u_n_curve(const CompactSet& set, const Grid& grid, int n, const std::vector<double>& t_grid,
                        const RadialOptions& opts) {
  ExtremalCurve c;
  c.descriptor = set.describe();
  c.degree = n;
  c.t = t_grid;
  c.method = set.kind() == sets::SetKind::Disk ? "closed-form" : (set.is_real() ? "lp" : "lp-polygon");
  for (double t : t_grid) c.u.push_back(std::log(phi_n_radial(set, grid, n, std::exp(t), opts)));
  return c;
}

CapacityEstimate capacity_Cn(const CompactSet& set, const Grid& grid, int n, int points_per_decade,
                             const RadialOptions& opts) {
  if (n < 1) throw InputError("capacity_Cn needs n >= 1");
  if (points_per_decade < 1) throw InputError("capacity_Cn needs at least one point per decade");
  CapacityEstimate est;
  est.method = "sup over log r grid [1e-4, 1e5]";
  const int count = 9 * points_per_decade;
  double prev = 0.0;
  for (int j = 0; j <= count; ++j) {
    const double r = std::pow(10.0, -4.0 + static_cast<double>(j) / points_per_decade);
    const double v = r / std::pow(phi_n_radial(set, grid, n, r, opts), 1.0 / n);
    if (v > est.value) {
      est.value = v;
      est.r_at_sup = r;
    }
    if (j == count) est.tail_change = std::abs(v - prev) / v;
    prev = v;
  }
  return est;
}

CapacityEstimate capacity_C(const CompactSet& set, int density) {
  if (auto c = sets::closed_capacity(set)) {
    CapacityEstimate est;
    est.value = *c;
    est.method = "registry";
    return est;
  }
  const int d = density > 0 ? density : sets::min_density_for_degree(set, 8);
  const Grid grid = sets::discretize(set, d);
  const double c4 = capacity_Cn(set, grid, 4).value, c8 = capacity_Cn(set, grid, 8).value;
  // log C_n ~ log C + b/n
  const double b = (std::log(c4) - std::log(c8)) / (0.25 - 0.125);
  CapacityEstimate est;
  est.value = std::exp(std::log(c8) - b / 8.0);
  est.heuristic = true;
  est.method = "extrapolated from C_4, C_8";
  return est;
}

}  // namespace extremal::engine
