#include "extremal/sets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "extremal/errors.hpp"
#include "extremal/poly.hpp"

namespace extremal::sets {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void unsupported(const CompactSet& set, const char* what) {
  throw UnsupportedError(std::string(what) + " not available for " + set.kind_name());
}

double interval_c(const Interval& s) { return 2.0 / (s.b - s.a); }

double siciak_unit_interval(cplx w) {
  const cplx s = std::sqrt(w * w - 1.0);
  return std::max({std::abs(w + s), std::abs(w - s), 1.0});
}

double ellipse_boundary_distance(double R, cplx w) {
  const double ga = poly::g(R), gh = poly::g_hat(R);
  auto dist = [&](double a) { return std::abs(w - cplx(ga * std::cos(a), gh * std::sin(a))); };
  const int samples = 720;
  int best = 0;
  double bestv = dist(0.0);
  for (int j = 1; j < samples; ++j) {
    const double v = dist(2.0 * kPi * j / samples);
    if (v < bestv) {
      bestv = v;
      best = j;
    }
  }
  double lo = 2.0 * kPi * (best - 1) / samples, hi = 2.0 * kPi * (best + 1) / samples;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = dist(x1), f2 = dist(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = dist(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = dist(x2);
    }
  }
  return std::min({bestv, f1, f2});
}

}  // namespace

CompactSet CompactSet::interval(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) throw InputError("interval needs finite a < b");
  return CompactSet(Interval{a, b});
}

CompactSet CompactSet::disk(double radius) {
  if (!std::isfinite(radius) || !(radius > 0.0)) throw InputError("disk needs radius > 0");
  return CompactSet(Disk{radius});
}

CompactSet CompactSet::green_level(double R) {
  if (!std::isfinite(R) || !(R > 1.0)) throw InputError("green level set needs R > 1");
  return CompactSet(GreenLevelSet{R});
}

CompactSet CompactSet::disk_with_point(double radius, cplx z0) {
  if (!std::isfinite(radius) || !(radius > 0.0)) throw InputError("disk with point needs radius > 0");
  if (!(std::abs(z0) > radius)) throw InputError("disk with point needs |z0| > radius");
  return CompactSet(DiskWithPoint{radius, z0});
}

CompactSet CompactSet::product_interval_disk(double R) {
  if (!std::isfinite(R) || !(R > 0.0)) throw InputError("product set needs R > 0");
  return CompactSet(ProductIntervalDisk{R});
}

bool CompactSet::conjugation_symmetric() const {
  if (auto* p = std::get_if<DiskWithPoint>(&v_)) return p->z0.imag() == 0.0;
  return true;
}

std::string CompactSet::kind_name() const {
  switch (kind()) {
    case SetKind::Interval: return "interval";
    case SetKind::Disk: return "disk";
    case SetKind::GreenLevelSet: return "green";
    case SetKind::DiskWithPoint: return "diskpoint";
    case SetKind::ProductIntervalDisk: return "product";
  }
  return "unknown";
}

std::string CompactSet::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const Interval& s) { os << "interval?a=" << s.a << "&b=" << s.b; },
                 [&](const Disk& s) { os << "disk?R=" << s.radius; },
                 [&](const GreenLevelSet& s) { os << "green?R=" << s.R; },
                 [&](const DiskWithPoint& s) {
                   os << "diskpoint?R=" << s.radius << "&z0=" << s.z0.real();
                   if (s.z0.imag() != 0.0) os << "&z0im=" << s.z0.imag();
                 },
                 [&](const ProductIntervalDisk& s) { os << "product?R=" << s.R; },
             },
             v_);
  return os.str();
}

int grid_resolution(int density) {
  if (density < 1 || density > 12) throw InputError("grid density must be in [1, 12]");
  return 64 << (density - 1);
}

std::size_t nodes_for_density(const CompactSet& set, int density) {
  const std::size_t M = static_cast<std::size_t>(grid_resolution(density));
  switch (set.kind()) {
    case SetKind::Interval: return M + 1;
    case SetKind::Disk:
    case SetKind::GreenLevelSet: return M;
    case SetKind::DiskWithPoint: return M + 1;
    case SetKind::ProductIntervalDisk: unsupported(set, "discretization");
  }
  return 0;
}

Grid discretize(const CompactSet& set, int density) {
  const int M = grid_resolution(density);
  std::vector<cplx> nodes;
  std::visit(overloaded{
                 [&](const Interval& s) {
                   const double mid = 0.5 * (s.a + s.b), half = 0.5 * (s.b - s.a);
                   for (int j = 0; j <= M; ++j) nodes.emplace_back(mid + half * std::cos(kPi * j / M), 0.0);
                 },
                 [&](const Disk& s) {
                   for (int j = 0; j < M; ++j) nodes.push_back(std::polar(s.radius, 2.0 * kPi * j / M));
                 },
                 [&](const GreenLevelSet& s) {
                   for (int j = 0; j < M; ++j) {
                     const cplx w = std::polar(s.R, 2.0 * kPi * j / M);
                     nodes.push_back(0.5 * (w + 1.0 / w));
                   }
                 },
                 [&](const DiskWithPoint& s) {
                   for (int j = 0; j < M; ++j) nodes.push_back(std::polar(s.radius, 2.0 * kPi * j / M));
                   nodes.push_back(s.z0);
                 },
                 [&](const ProductIntervalDisk&) { unsupported(set, "discretization"); },
             },
             set.variant());
  return Grid{std::move(nodes), set, density};
}

std::size_t required_nodes(int degree) {
  const std::size_t n = static_cast<std::size_t>(std::max(degree, 0));
  return std::max<std::size_t>(4 * n * n, 128);
}

int min_density_for_degree(const CompactSet& set, int degree) {
  for (int d = 1; d <= 12; ++d)
    if (nodes_for_density(set, d) >= required_nodes(degree)) return d;
  throw InputError("degree " + std::to_string(degree) + " needs a grid beyond density 12");
}

void require_adequate(const Grid& grid, int degree) {
  if (grid.nodes.size() < required_nodes(degree))
    throw InputError("grid with " + std::to_string(grid.nodes.size()) + " nodes is too coarse for degree " +
                     std::to_string(degree) + " (need " + std::to_string(required_nodes(degree)) + ")");
}

std::vector<std::size_t> coarse_subgrid(const Grid& grid, int target) {
  const int M = grid_resolution(grid.density);
  std::vector<std::size_t> idx;
  switch (grid.parent.kind()) {
    case SetKind::Interval: {
      const int half = std::max(1, target / 2);
      const int stride = std::max(1, M / half);
      for (int j = 0; j <= M; j += stride) idx.push_back(static_cast<std::size_t>(j));
      if (idx.back() != static_cast<std::size_t>(M)) idx.push_back(static_cast<std::size_t>(M));
      break;
    }
    case SetKind::Disk:
    case SetKind::GreenLevelSet:
    case SetKind::DiskWithPoint: {
      const int stride = std::max(1, M / target);
      for (int j = 0; j < M; j += stride) idx.push_back(static_cast<std::size_t>(j));
      if (grid.parent.kind() == SetKind::DiskWithPoint) idx.push_back(static_cast<std::size_t>(M));
      break;
    }
    case SetKind::ProductIntervalDisk: unsupported(grid.parent, "discretization");
  }
  return idx;
}

double distance_to_set(const CompactSet& set, cplx w) {
  return std::visit(overloaded{
                        [&](const Interval& s) {
                          const double x = std::clamp(w.real(), s.a, s.b);
                          return std::abs(w - cplx(x, 0.0));
                        },
                        [&](const Disk& s) { return std::max(0.0, std::abs(w) - s.radius); },
                        [&](const GreenLevelSet& s) {
                          if (siciak_unit_interval(w) <= s.R) return 0.0;
                          return ellipse_boundary_distance(s.R, w);
                        },
                        [&](const DiskWithPoint& s) {
                          return std::min(std::max(0.0, std::abs(w) - s.radius), std::abs(w - s.z0));
                        },
                        [&](const ProductIntervalDisk&) -> double { unsupported(set, "distance"); },
                    },
                    set.variant());
}

double siciak_upper(const CompactSet& set, cplx w) {
  return std::visit(overloaded{
                        [&](const Interval& s) {
                          return siciak_unit_interval((2.0 * w - (s.a + s.b)) / (s.b - s.a));
                        },
                        [&](const Disk& s) { return std::max(1.0, std::abs(w) / s.radius); },
                        [&](const GreenLevelSet& s) { return std::max(1.0, siciak_unit_interval(w) / s.R); },
                        [&](const DiskWithPoint& s) { return std::max(1.0, std::abs(w) / s.radius); },
                        [&](const ProductIntervalDisk&) -> double { unsupported(set, "Siciak function"); },
                    },
                    set.variant());
}

bool has_closed_phi(const CompactSet&) { return true; }

double closed_log_phi(const CompactSet& set, double r) {
  if (!(r >= 0.0)) throw InputError("closed_phi needs r >= 0");
  return std::visit(overloaded{
                        [&](const Interval& s) { return poly::acosh1p(interval_c(s) * r); },
                        [&](const Disk& s) { return std::log1p(r / s.radius); },
                        [&](const GreenLevelSet& s) {
                          const double gm1 = (s.R - 1.0) * (s.R - 1.0) / (2.0 * s.R);
                          return poly::acosh1p(gm1 + r) - std::log(s.R);
                        },
                        [&](const DiskWithPoint& s) {
                          if (r == 0.0) return 0.0;
                          return std::log((std::abs(s.z0) + r) / s.radius);
                        },
                        [&](const ProductIntervalDisk& s) {
                          return std::max(poly::acosh1p(r), std::log1p(r / s.R));
                        },
                    },
                    set.variant());
}

double closed_phi(const CompactSet& set, double r) { return std::exp(closed_log_phi(set, r)); }

std::optional<double> closed_capacity(const CompactSet& set) {
  return std::visit(overloaded{
                        [](const Interval& s) { return (s.b - s.a) / 4.0; },
                        [](const Disk& s) { return s.radius; },
                        [](const GreenLevelSet& s) { return s.R / 2.0; },
                        [](const DiskWithPoint& s) { return s.radius; },
                        [](const ProductIntervalDisk& s) { return std::min(0.5, s.R); },
                    },
                    set.variant());
}

bool has_closed_laplacian(const CompactSet& set) { return set.kind() != SetKind::ProductIntervalDisk; }

double closed_laplacian(const CompactSet& set, double s) {
  if (!(s > 0.0)) throw InputError("closed_laplacian needs s > 0");
  return std::visit(overloaded{
                        [&](const Interval& e) {
                          const double c = interval_c(e);
                          const double x = c * s * (c * s + 2.0);
                          return c * c / (x * std::sqrt(x));
                        },
                        [&](const Disk& e) {
                          const double c = 1.0 / e.radius;
                          return c / (s * (1.0 + c * s) * (1.0 + c * s));
                        },
                        [&](const GreenLevelSet& e) {
                          const double ga = poly::g(e.R), gh = poly::g_hat(e.R);
                          const double y = (ga + s) * (ga + s) - 1.0;
                          return (gh * gh + ga * s) / (s * y * std::sqrt(y));
                        },
                        [&](const DiskWithPoint& e) {
                          const double c = 1.0 / std::abs(e.z0);
                          return c / (s * (1.0 + c * s) * (1.0 + c * s));
                        },
                        [&](const ProductIntervalDisk&) -> double { unsupported(set, "closed Laplacian"); },
                    },
                    set.variant());
}

double closed_laplacian_limit(const CompactSet& set) {
  return std::visit(overloaded{
                        [](const Interval& e) { return 1.0 / interval_c(e); },
                        [](const Disk& e) { return e.radius; },
                        [](const GreenLevelSet& e) { return poly::g(e.R); },
                        [](const DiskWithPoint& e) { return std::abs(e.z0); },
                        [&](const ProductIntervalDisk&) -> double { unsupported(set, "Laplacian limit"); },
                    },
                    set.variant());
}

bool has_closed_u_ratio(const CompactSet&) { return true; }

std::optional<double> u_ratio_kink(const CompactSet& set) {
  if (auto* p = std::get_if<ProductIntervalDisk>(&set.variant())) {
    if (p->R >= 0.5) return std::nullopt;
    const double a = 1.0 / p->R - 1.0;
    return std::log(2.0 / (a * a - 1.0));
  }
  return std::nullopt;
}

double closed_u_ratio(const CompactSet& set, double t) {
  const double et = std::exp(t);
  return std::visit(overloaded{
                        [&](const Interval& e) { return 1.0 / (2.0 + interval_c(e) * et); },
                        [&](const Disk& e) { return 1.0 / (1.0 + et / e.radius); },
                        [&](const GreenLevelSet& e) {
                          const double ga = poly::g(e.R);
                          return 0.5 * (ga + 1.0) / (ga + 1.0 + et) + 0.5 * (ga - 1.0) / (ga - 1.0 + et);
                        },
                        [&](const DiskWithPoint& e) {
                          const double z = std::abs(e.z0);
                          return z / (z + et);
                        },
                        [&](const ProductIntervalDisk& e) {
                          if (e.R >= 0.5) return 1.0 / (2.0 + et);
                          const double tstar = *u_ratio_kink(set);
                          return t < tstar ? 1.0 / (2.0 + et) : 1.0 / (1.0 + et / e.R);
                        },
                    },
                    set.variant());
}

}  // namespace extremal::sets
