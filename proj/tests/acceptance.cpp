// One pass/fail line per acceptance criterion; exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "extremal/config.hpp"
#include "extremal/kl.hpp"
#include "extremal/poly.hpp"
#include "extremal/report.hpp"
#include "extremal/suites.hpp"

using namespace extremal;
using namespace extremal::cli;

namespace {

struct Criterion {
  std::string id;
  std::string title;
  std::function<SuiteReport()> checks;
  double time_limit_s = 300.0;
};

SuiteReport vm_interval_instance() {
  SuiteReport r{"vm-interval", {}};
  const kl::VMParams p{1.0, 2.0};
  const auto h = kl::vm_to_hcp(p);
  r.add(approx_check("vm_to_hcp gamma", h.gamma, 0.5, 1e-15, "closed form"));
  r.add(approx_check("vm_to_hcp B", h.B, 2.0, 1e-15, "closed form"));
  double worst = -INFINITY;
  for (int i = 0; i < 200; ++i) {
    const double x = std::pow(10.0, -3.0 + 6.0 * i / 199.0);
    worst = std::max(worst, std::log(poly::h(1.0 + x)) - 2.0 * std::sqrt(x));
  }
  r.add(upper_check("log h(1+r) - 2 sqrt(r) on 200 r-points", worst, 0.0, 0.0, "bound"));
  r.add(upper_check("capacity floor e^(-2) <= measured capacity", kl::vm_capacity_floor(p), 0.5, 0.0, "bound"));
  RunConfig cfg = defaults();
  cfg.set = set_json_from_descriptor("interval");
  r.append(markov_chain_checks(cfg));
  return r;
}

SuiteReport merged(const std::string& name, std::vector<SuiteReport> parts) {
  SuiteReport r{name, {}};
  for (const auto& p : parts) r.append(p);
  return r;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "Markov factors: LP interval vs Chebyshev derivatives, disk closed form", markov_oracle_checks},
      {"AC2", "closed-form radial functions for the disk and the interval", radial_closed_checks},
      {"AC3", "convexity of u_n for four sets and n in {2,4,8}", [] { return convexity_checks(); }},
      {"AC4", "capacities, Chebyshev numbers and t_n^(1/n) >= C_n", capacity_checks},
      {"AC5", "KL catalog classification and constants", [] { return kl_catalog_checks(); }, 60.0},
      {"AC6", "V. Markov to HCP transforms and the capacity floor", vm_interval_instance},
      {"AC7", "Plesniak functions and constants", plesniak_checks},
      {"AC8", "e(K) sandwich for the disk and the interval", sandwich_checks},
      {"AC9", "radial Laplacians and Monn limits", laplacian_checks},
      {"AC10", "disk with an exterior point: bounds, witness and M* condition", disk_point_checks},
      {"AC11", "KL plus Markov chains, majorants and Psi properties",
       [] { return merged("chains", {vm_chain_checks(), psi_checks()}); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep{c.id, {}};
    std::string error;
    try {
      rep = c.checks();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int fails = 0, flagged = 0;
    for (const auto& ch : rep.checks) {
      fails += ch.status == Status::Fail;
      flagged += ch.status == Status::Flagged;
    }
    const bool slow = secs > c.time_limit_s;
    const bool ok = error.empty() && fails == 0 && !slow && !rep.checks.empty();
    failed += !ok;
    std::cout << c.id << ' ' << (ok ? "PASS" : "FAIL") << "  " << c.title << "  (" << rep.checks.size()
              << " checks, " << fails << " failed, " << flagged << " flagged, " << format_number(std::round(secs * 10) / 10)
              << " s)\n";
    if (!error.empty()) std::cout << "    error: " << error << '\n';
    if (slow) std::cout << "    over the " << format_number(c.time_limit_s) << " s limit\n";
    for (const auto& ch : rep.checks)
      if (ch.status == Status::Fail)
        std::cout << "    fail: " << ch.id << "  measured=" << format_number(ch.measured)
                  << " target=" << format_number(ch.target) << (ch.note.empty() ? "" : "  " + ch.note) << '\n';
    std::cout.flush();
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << '\n';
  return failed == 0 ? 0 : 1;
}
