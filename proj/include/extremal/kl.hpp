#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "extremal/engine.hpp"

namespace extremal::kl {

// Positive triangle sequence phi(n, k), 1 <= k <= n, stored as log phi; psi(n, k) = phi(n, k)^(1/k).
struct TriangleSequence {
  std::string name;
  std::function<double(int, int)> log_phi;
  int max_n = std::numeric_limits<int>::max();  // table-limited sequences
  std::optional<double> stated_log_C;           // constant quoted for the catalog entry, if any

  double log_psi(int n, int k) const { return log_phi(n, k) / k; }

  static TriangleSequence from_markov_table(const engine::MarkovTable& table);
};

// Catalog: ex63_1..ex63_6, ex65_1..ex65_5 plus aliases (factorial, binom_pow, ...).
// Parameters: sigma (default 1), m (default 2), s (default 1, in (0, 1]).
struct CatalogEntry {
  std::string name;
  std::string alias;
  std::string formula;
  bool kl_star = false;  // listed among the KL* examples
};
const std::vector<CatalogEntry>& catalog();
TriangleSequence builtin(const std::string& name, const std::map<std::string, double>& params = {});
// "kl:factorial", "kl:binom_pow?m=2", "ex63_6"
TriangleSequence parse_sequence(const std::string& spec);

struct KLReport {
  bool is_KL_star = false;
  double minimal_log_C = 0.0;
  int worst_n = 0;
  int worst_k = 0;
  int nmax = 0;
  double endpoint_excess = 0.0;  // |excess| at k = 1 and k = n (zero by construction)
};

// max over 2 <= n <= Nmax, 1 <= k <= n of [log psi(n,k) - (1-theta) log psi(n,1) - theta log psi(n,n)]_+,
// theta = log k / log n.
KLReport kl_constant(const TriangleSequence& seq, int nmax = 500);
bool kl_star_check(const TriangleSequence& seq, int nmax = 500);
KLReport markov_table_kl(const engine::MarkovTable& table, int nmax);

TriangleSequence product(const TriangleSequence& a, const TriangleSequence& b);
TriangleSequence power(const TriangleSequence& a, double m);
TriangleSequence maximum(const TriangleSequence& a, const TriangleSequence& b);

struct ClosureReport {
  double log_C1 = 0.0, log_C2 = 0.0;
  double log_C_product = 0.0, log_C_power = 0.0, log_C_max = 0.0;
  double log_A1 = 0.0, log_A2 = 0.0;  // min / max of log(phi1/phi2)^(1/k) over the triangle
  bool product_ok = false;            // log C(product) <= log C1 + log C2
  bool power_ok = false;              // log C(phi1^m) <= m log C1
  bool max_ok = false;                // log C(max) <= max(log C1, log C2)
  bool equivalence_ok = false;        // |log C1 - log C2| <= log A2 - log A1
  bool pass() const { return product_ok && power_ok && max_ok && equivalence_ok; }
};
ClosureReport kl_closure_tests(const TriangleSequence& a, const TriangleSequence& b, double m, int nmax = 200);

// Markov-type parameters.
struct AMParams {
  double M = 1.0;
  double m = 1.0;
};
struct VMParams {
  double M = 1.0;
  double m = 1.0;
};
struct HCPParams {
  double gamma = 1.0;
  double B = 1.0;
};

HCPParams vm_to_hcp(const VMParams& vm);          // (1/m, m M^(1/m))
VMParams hcp_to_vm(const HCPParams& h);           // (1/gamma, (gamma e B)^(1/gamma))
double hcp_capacity_floor(const HCPParams& h);    // 1 / (gamma e B)^(1/gamma)
double vm_capacity_floor(const VMParams& vm);     // e^(-m) / M

// Upper bounds on v_n = (1/n) log phi_n implied by A. / V. Markov inequalities.
double am_vn_bound(const AMParams& am, int n, double r);  // M n^(m-1) r
double am_vn_at_one(const AMParams& am, int n);           // M + (m-1) log n
double vm_vn_bound(const VMParams& vm, double r);         // m M^(1/m) r^(1/m)
struct VnBoundCurves {
  std::vector<double> r;
  std::vector<double> am_linear;
  std::vector<double> vm_root;
  double am_at_one = 0.0;
};
VnBoundCurves am_to_vn_bounds(const AMParams& am, int n, const std::vector<double>& r);

// Minimal constant over a truncated table. Feasible when the largest residual over rows (N/2, N]
// exceeds the largest over (N/4, N/2] by at most kGrowthTolerance (log scale).
inline constexpr double kGrowthTolerance = 0.1;
struct FitPoint {
  double m = 1.0;
  double M = 0.0;       // minimal constant on the table
  double growth = 0.0;  // tail-window increase over the last doubling (log)
  bool feasible = false;
};
struct Fit {
  std::vector<FitPoint> frontier;  // exponents 1, 1.25, ..., 4
  std::optional<FitPoint> best;    // smallest feasible exponent
  int nmax = 0;
};
Fit am_fit(const engine::MarkovTable& table);  // M(n,1) <= M n^m
Fit vm_fit(const engine::MarkovTable& table);  // M(n,k) <= M^k n^(km) / (k!)^(m-1)
struct Growth {
  double A = 0.0;  // minimal A with M(n,n) <= A^n n!
  double growth = 0.0;
  bool feasible = false;
};
Growth mn_n_growth(const engine::MarkovTable& table);

struct Theorem68Report {
  KLReport kl;
  Fit am, vm;
  Growth mnn;
  bool premise = false;       // KL, AM and M(n,n) <= A^n n! all feasible
  bool vm_feasible = false;
  bool consistent = false;    // vm_feasible == premise
  double chain_M = 0.0;       // C max(M_am, A), exponent m_am (implementation-derived)
  double chain_slack = 0.0;   // min over the table of log bound - log M(n,k)
  bool pass = false;
};
Theorem68Report theorem_6_8_check(const engine::MarkovTable& table, int nmax = 0);

struct Theorem69Report {
  KLReport majorant_kl;
  double worst_domination = 0.0;  // max of M(n,k) / phi(n,k)
  double worst_first = 0.0;       // max of phi(n,1) / (A n^alpha)
  double worst_diagonal = 0.0;    // max of phi(n,n) / (B^n n!)
  bool dominated = false;
  bool endpoints_ok = false;
  Fit vm;
  bool pass = false;
};
Theorem69Report theorem_6_9_check(const engine::MarkovTable& table, const TriangleSequence& majorant, double alpha,
                                  double A, double B, double rel_tol = 1e-6);

struct MStarReport {
  double m = 1.0;
  double a_min = 0.0;  // minimal a over the table
  double growth = 0.0;
  bool satisfied = false;
  double b = 0.0;      // minimal b with M(n,n) <= b^n n!
  double vm_M = 0.0;   // a b: M(n,l) <= (ab)^l n^(ml) / l!^(m-1)
  int worst_n = 0, worst_l = 0, worst_k = 0;
};
MStarReport m_star_check(const engine::MarkovTable& table, double m);

struct DiskPointRow {
  int n = 0, k = 0;
  double lp = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double witness = 0.0;
  bool ok = false;
};
struct DiskPointReport {
  std::vector<DiskPointRow> rows;
  bool pass = false;
};
// D u {2}: LP Markov factors for n <= Nmax, k <= 3 against
// (n-1)...(n-k+1) 2^-k (n + k(2^n - 1)/3) <= M_n(k) <= e^k 2^(n-k) n^k, and the witness (z - a_n) z^(n-1).
double disk_point_lower(int n, int k);
double disk_point_upper(int n, int k);
double disk_point_witness(int n, int k);
DiskPointReport disk_point_bounds_check(int nmax = 10, int kmax = 3);

}  // namespace extremal::kl
