#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace extremal::engine {

enum class Relation { LessEqual, Equal };

// maximize objective . x  subject to  rows x (<= or =) rhs,  lower <= x <= upper.
// Variables are free unless bounds are given.
struct LinearProgram {
  explicit LinearProgram(std::size_t num_vars = 0);

  std::size_t num_vars;
  std::vector<double> objective;
  std::vector<double> coeffs;  // row-major, num_rows() x num_vars
  std::vector<Relation> relations;
  std::vector<double> rhs;
  std::vector<double> lower;  // empty or num_vars entries, -inf allowed
  std::vector<double> upper;

  std::size_t num_rows() const { return rhs.size(); }
  void add_row(std::span<const double> row, Relation rel, double b);
  void set_bounds(std::size_t var, double lo, double hi);
  std::span<const double> row(std::size_t i) const { return {coeffs.data() + i * num_vars, num_vars}; }
};

enum class LPStatus { Optimal, Infeasible, Unbounded, Stalled };
std::string to_string(LPStatus s);

struct LPSolution {
  LPStatus status = LPStatus::Stalled;
  double value = 0.0;
  std::vector<double> x;
  long pivots = 0;
  double primal_violation = 0.0;  // max over rows of (a.x - b)_+, row-scaled
  double complementarity = 0.0;   // max |a.x - b| over rows with positive multiplier
};

struct LPOptions {
  long max_pivots = 1000000;
  int degenerate_run_before_bland = 50;
};

LPSolution solve_lp(const LinearProgram& lp, const LPOptions& opts = {});

}  // namespace extremal::engine
