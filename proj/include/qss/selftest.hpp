#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qss::selftest {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Exhaustive algebraic oracles; no sampling, everything exact to 1e-12.
CheckResult check_representations();
CheckResult check_corrected_form();
CheckResult check_transition_tables();
CheckResult check_xor_remap();
CheckResult check_swap_table();
CheckResult check_density_average();
CheckResult check_decoy_fidelities();
CheckResult check_cross_set_overlap();

std::vector<CheckResult> run_all();

// One PASS/FAIL line per check; returns the number of failures.
int print_results(const std::vector<CheckResult>& results, std::ostream& os);

}  // namespace qss::selftest
