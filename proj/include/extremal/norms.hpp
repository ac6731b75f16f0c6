#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "extremal/poly.hpp"
#include "extremal/sets.hpp"

namespace extremal::sets {

struct SupOnSet {
  CompactSet set;
  Grid grid;
};

// sum_j (1/j!)^(m-1) |a_j| tau^j over monomial coefficients.
struct CoeffNorm {
  double m;
  double tau;
};

// (1/(b-a) * int_a^b |P|^p dx)^(1/p), Gauss-Legendre with ceil(p*max_degree/2)+8 nodes.
struct IntegralNorm {
  double p;
  Interval interval;
  int max_degree = 30;
};

enum class NormKind { Sup, Coeff, Integral };

using NormVariant = std::variant<SupOnSet, CoeffNorm, IntegralNorm>;

class NormSpec {
 public:
  // Factories validate parameters and spot-check the triangle inequality.
  static NormSpec sup_on(const CompactSet& set, int density);
  static NormSpec sup_on(Grid grid);
  static NormSpec coeff(double m, double tau);
  static NormSpec integral(double p, double a = -1.0, double b = 1.0, int max_degree = 30);

  const NormVariant& variant() const { return v_; }
  NormKind kind() const { return static_cast<NormKind>(v_.index()); }
  std::string describe() const;
  double operator()(const poly::Polynomial& p) const;

 private:
  explicit NormSpec(NormVariant v) : v_(std::move(v)) {}
  NormVariant v_;
};

double norm_eval(const NormSpec& q, const poly::Polynomial& p);

struct NormAxiomReport {
  int pairs = 0;
  double worst_triangle_slack = 0.0;  // min of q(P)+q(Q)-q(P+Q), relative
  double worst_homogeneity_error = 0.0;
  bool ok = true;
};
NormAxiomReport check_norm_axioms(const NormSpec& q, std::uint64_t seed = 7, int pairs = 200);

// Gauss-Legendre nodes and weights on [-1,1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int count);
int integral_node_count(double p, int degree);

}  // namespace extremal::sets
