#include "extremal/norms.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>

#include "extremal/errors.hpp"

namespace extremal::sets {

using poly::Polynomial;

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int count) {
  if (count < 1) throw InputError("gauss_legendre needs at least one node");
  static std::mutex mu;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(count); it != cache.end()) return it->second;
  }
  std::vector<double> x(count), w(count);
  const int n = count;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = z;
        p0 = 1.0;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(count, std::make_pair(x, w)).first->second;
}

int integral_node_count(double p, int degree) {
  return static_cast<int>(std::ceil(p * degree / 2.0)) + 8;
}

double norm_eval(const NormSpec& q, const Polynomial& p) {
  switch (q.kind()) {
    case NormKind::Sup: {
      const auto& s = std::get<SupOnSet>(q.variant());
      double best = 0.0;
      for (const auto& z : s.grid.nodes) best = std::max(best, std::abs(poly::eval(p, z)));
      return best;
    }
    case NormKind::Coeff: {
      const auto& c = std::get<CoeffNorm>(q.variant());
      const Polynomial mono = poly::to_monomial(p);
      double acc = 0.0;
      for (int j = 0; j <= mono.degree(); ++j) {
        const double a = std::abs(mono.coeffs()[j]);
        if (a == 0.0) continue;
        acc += a * std::exp(-(c.m - 1.0) * poly::log_factorial(j) + j * std::log(c.tau));
      }
      return acc;
    }
    case NormKind::Integral: {
      const auto& in = std::get<IntegralNorm>(q.variant());
      if (p.degree() > in.max_degree) throw InputError("polynomial degree exceeds the integral norm's degree bound");
      const auto [x, w] = gauss_legendre(integral_node_count(in.p, in.max_degree));
      const double mid = 0.5 * (in.interval.a + in.interval.b), half = 0.5 * (in.interval.b - in.interval.a);
      double acc = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(std::abs(poly::eval(p, mid + half * x[i])), in.p);
      return std::pow(0.5 * acc, 1.0 / in.p);
    }
  }
  return 0.0;
}

double NormSpec::operator()(const Polynomial& p) const { return norm_eval(*this, p); }

std::string NormSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind()) {
    case NormKind::Sup: {
      const auto& s = std::get<SupOnSet>(v_);
      os << "sup[" << s.set.describe() << ";density=" << s.grid.density << "]";
      break;
    }
    case NormKind::Coeff: {
      const auto& c = std::get<CoeffNorm>(v_);
      os << "coeff?m=" << c.m << "&tau=" << c.tau;
      break;
    }
    case NormKind::Integral: {
      const auto& in = std::get<IntegralNorm>(v_);
      os << "integral?p=" << in.p << "&a=" << in.interval.a << "&b=" << in.interval.b;
      break;
    }
  }
  return os.str();
}

NormAxiomReport check_norm_axioms(const NormSpec& q, std::uint64_t seed, int pairs) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_int_distribution<int> deg(0, 8);
  const bool complex_coeffs = q.kind() == NormKind::Sup && !std::get<SupOnSet>(q.variant()).set.is_real();
  auto random_poly = [&] {
    std::vector<poly::cplx> c(deg(rng) + 1);
    for (auto& v : c) v = complex_coeffs ? poly::cplx(nd(rng), nd(rng)) : poly::cplx(nd(rng), 0.0);
    return Polynomial(std::move(c));
  };
  NormAxiomReport rep;
  rep.pairs = pairs;
  for (int i = 0; i < pairs; ++i) {
    const Polynomial P = random_poly(), Q = random_poly();
    const double a = q(P), b = q(Q), s = q(poly::combine(1.0, P, 1.0, Q));
    const double scale = std::max({a + b, 1e-300});
    rep.worst_triangle_slack = std::min(rep.worst_triangle_slack, (a + b - s) / scale);
    const double lam = 1.0 + std::abs(nd(rng));
    const double hl = q(poly::combine(lam, P, 0.0, Q));
    rep.worst_homogeneity_error = std::max(rep.worst_homogeneity_error, std::abs(hl - lam * a) / std::max(lam * a, 1e-300));
  }
  rep.ok = rep.worst_triangle_slack >= -1e-10 && rep.worst_homogeneity_error <= 1e-10;
  return rep;
}

namespace {

NormSpec checked(NormSpec q) {
  const auto rep = check_norm_axioms(q);
  if (!rep.ok) throw NumericalError("norm axiom spot-check failed for " + q.describe());
  return q;
}

}  // namespace

NormSpec NormSpec::sup_on(const CompactSet& set, int density) { return sup_on(discretize(set, density)); }

NormSpec NormSpec::sup_on(Grid grid) {
  CompactSet set = grid.parent;
  return checked(NormSpec(SupOnSet{std::move(set), std::move(grid)}));
}

NormSpec NormSpec::coeff(double m, double tau) {
  if (!std::isfinite(m) || !(m >= 1.0)) throw InputError("coefficient norm needs m >= 1");
  if (!std::isfinite(tau) || !(tau > 0.0)) throw InputError("coefficient norm needs tau > 0");
  return checked(NormSpec(CoeffNorm{m, tau}));
}

NormSpec NormSpec::integral(double p, double a, double b, int max_degree) {
  if (max_degree < 0 || max_degree > 200) throw InputError("integral norm degree bound must be in [0, 200]");
  if (!std::isfinite(p) || !(p >= 1.0)) throw InputError("integral norm needs p >= 1");
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) throw InputError("integral norm needs a < b");
  return checked(NormSpec(IntegralNorm{p, Interval{a, b}, max_degree}));
}

}  // namespace extremal::sets
