#pragma once

#include <string>
#include <vector>

namespace spectra::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  // worst measured deviation and the bound it was held to
};

// Criteria 1 through 8, in order.
std::vector<CriterionResult> run_library_criteria();

CriterionResult baseline_oscillator();
CriterionResult first_order_ground_state();
CriterionResult half_energy_reduction();
CriterionResult moving_first_excited();
CriterionResult fixed_ground_scaling();
CriterionResult fixed_first_excited_scaling();
CriterionResult fixed_two_lowest_scaling();
CriterionResult property_suites();

}  // namespace spectra::acceptance
