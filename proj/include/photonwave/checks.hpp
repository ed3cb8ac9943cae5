#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace photonwave::checks {

// One named residual with the bound it is held to. `pass` is value <= tolerance
// (tolerance 0 demands exact equality, which integer-backed identities meet).
struct CheckRow {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

inline CheckRow row(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, value <= tolerance};
}

struct CriterionResult {
  int index;
  std::string title;
  std::vector<CheckRow> rows;
  bool pass;
};

struct Params {
  int grid_n = 16;          // box grid per axis for the field checks
  std::uint64_t seed = 1;
  double tol_scale = 1.0;   // multiplies every tolerance
};

CriterionResult criterion_algebra_identities(const Params& p);   // 1
CriterionResult criterion_dispersion(const Params& p);           // 2
CriterionResult criterion_polarization(const Params& p);         // 3
CriterionResult criterion_modes(const Params& p);                // 4
CriterionResult criterion_completeness(const Params& p);         // 5
CriterionResult criterion_dynamics(const Params& p);             // 6
CriterionResult criterion_observables(const Params& p);          // 7
CriterionResult criterion_quantization(const Params& p);         // 8
CriterionResult criterion_lorentz(const Params& p);              // 9
CriterionResult criterion_dirac(const Params& p);                // 10
CriterionResult criterion_greens(const Params& p);               // 11

// criteria 1..11 in order
std::vector<CriterionResult> run_all_criteria(const Params& p);

}  // namespace photonwave::checks
