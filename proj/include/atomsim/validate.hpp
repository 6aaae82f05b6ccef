#pragma once

#include <string>
#include <vector>

#include "atomsim/types.hpp"

namespace atomsim {

struct Violation {
  int layer = -1;  // -1 for circuit-level problems
  std::string rule;
  std::string detail;
};

struct ValidateOptions {
  double blockade_radius_um = 5.0;  // CZ pairs must sit within this distance
};

// Structural and geometric checks. Violations are data, not faults: an empty
// result means every layer invariant holds. Positions are tracked through
// Move layers so CZ adjacency is checked at the time of each gate layer.
std::vector<Violation> validate_circuit(const Circuit& c,
                                        const ValidateOptions& opt = {});

}  // namespace atomsim
