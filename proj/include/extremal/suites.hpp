#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "extremal/config.hpp"
#include "extremal/report.hpp"

namespace extremal::cli {

// Check groups shared by the verify command and the acceptance binary.
SuiteReport markov_oracle_checks();                   // LP interval table vs T_n^(k)(1), disk closed form
SuiteReport radial_closed_checks();                   // phi_n for the disk and the interval
SuiteReport convexity_checks(const std::vector<int>& degrees = {2, 4, 8}, int points = 41);
SuiteReport capacity_checks();                        // capacities, Chebyshev numbers, t_n^(1/n) >= C_n
SuiteReport kl_catalog_checks(std::uint64_t seed = kDefaultSeed);
SuiteReport markov_chain_checks(const RunConfig& cfg);  // VM -> HCP transforms and the capacity floor
SuiteReport plesniak_checks();
SuiteReport sandwich_checks();
SuiteReport laplacian_checks();
SuiteReport disk_point_checks();
SuiteReport vm_chain_checks();                        // KL + AM + diagonal growth vs VM; majorant domination
SuiteReport psi_checks();

const std::vector<std::string>& suite_names();
// closed-forms, convexity, markov-chain, plesniak, kl-catalog, laplacian, disk-point, all.
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

}  // namespace extremal::cli
