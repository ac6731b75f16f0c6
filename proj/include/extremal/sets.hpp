#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace extremal::sets {

using cplx = std::complex<double>;

struct Interval {
  double a;
  double b;
};
struct Disk {
  double radius;
};
// E_R: filled ellipse {|h(z)| <= R}, foci +-1.
struct GreenLevelSet {
  double R;
};
struct DiskWithPoint {
  double radius;
  cplx z0;
};
// [-1,1] x R*D; only the closed-form profile is available.
struct ProductIntervalDisk {
  double R;
};

enum class SetKind { Interval, Disk, GreenLevelSet, DiskWithPoint, ProductIntervalDisk };

using SetVariant = std::variant<Interval, Disk, GreenLevelSet, DiskWithPoint, ProductIntervalDisk>;

class CompactSet {
 public:
  static CompactSet interval(double a, double b);
  static CompactSet disk(double radius);
  static CompactSet green_level(double R);
  static CompactSet disk_with_point(double radius, cplx z0);
  static CompactSet product_interval_disk(double R);

  const SetVariant& variant() const { return v_; }
  SetKind kind() const { return static_cast<SetKind>(v_.index()); }
  // Real-coefficient LP suffices (subsets of the real line).
  bool is_real() const { return kind() == SetKind::Interval; }
  bool conjugation_symmetric() const;
  std::string describe() const;
  std::string kind_name() const;

 private:
  explicit CompactSet(SetVariant v) : v_(std::move(v)) {}
  SetVariant v_;
};

struct Grid {
  std::vector<cplx> nodes;
  CompactSet parent;
  int density;
};

int grid_resolution(int density);  // M = 64 * 2^(density-1)
std::size_t nodes_for_density(const CompactSet& set, int density);
Grid discretize(const CompactSet& set, int density);
std::size_t required_nodes(int degree);  // max(4n^2, 128)
int min_density_for_degree(const CompactSet& set, int degree);
void require_adequate(const Grid& grid, int degree);

// Indices of a coarse boundary sub-grid (about `target` points, plus z0).
std::vector<std::size_t> coarse_subgrid(const Grid& grid, int target = 64);

double distance_to_set(const CompactSet& set, cplx w);
// Closed-form Siciak extremal function Phi(E, w) (or an upper bound for D u {z0}).
double siciak_upper(const CompactSet& set, cplx w);

// Closed-form registry. has_* reports presence; the evaluators throw UnsupportedError when absent.
bool has_closed_phi(const CompactSet& set);
double closed_phi(const CompactSet& set, double r);
double closed_log_phi(const CompactSet& set, double r);
std::optional<double> closed_capacity(const CompactSet& set);
bool has_closed_laplacian(const CompactSet& set);
double closed_laplacian(const CompactSet& set, double s);
double closed_laplacian_limit(const CompactSet& set);
bool has_closed_u_ratio(const CompactSet& set);
double closed_u_ratio(const CompactSet& set, double t);
// Kink of the ProductIntervalDisk profile (log r where the two branches meet), if any.
std::optional<double> u_ratio_kink(const CompactSet& set);

}  // namespace extremal::sets
