#pragma once

#include <map>
#include <string>
#include <vector>

#include "atomsim/compile.hpp"
#include "atomsim/decode.hpp"
#include "atomsim/expectation.hpp"

namespace atomsim {

struct StabilizerResult {
  std::string name;
  char type = 'x';
  double mean = 0, stderror = 0;
};

struct LogicalResult {
  int index = 0;
  int distance = 0;
  // X component (Xside shots) and Z component (Zside shots)
  Estimate x_raw, x_detected, x_corrected;
  Estimate z_raw, z_detected, z_corrected;
};

struct CodeReport {
  std::string code;
  size_t shots_x = 0, shots_z = 0;
  std::vector<StabilizerResult> stabilizers;
  std::vector<LogicalResult> logicals;
  double pass_fraction_x = 0, pass_fraction_z = 0;
  double pass_fraction = 0;  // pooled over the two settings

  std::string to_json() const;
};

// Raw stabilizer/logical means, error-detected logical means over shots whose
// same-type stabilizers all read +1 (pass_fraction = that postselection
// probability), and decoder-corrected logical means.
CodeReport evaluate_code(const CodeSpec& code, const CompiledCircuit& cx,
                         const std::vector<ShotRecord>& shots_x,
                         const CompiledCircuit& cz,
                         const std::vector<ShotRecord>& shots_z);

// Outcome of one measured observable on one shot: sign * (-1)^parity.
int observable_outcome(const MeasuredObservable& o, const ShotRecord& shot);

}  // namespace atomsim
