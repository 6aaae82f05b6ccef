#pragma once

#include <utility>
#include <vector>

#include "atomsim/types.hpp"

namespace atomsim {

struct Estimate {
  double mean = 0.0;
  double stderror = 0.0;
  size_t n_shots = 0;
};

// Mean and binomial standard error of a Pauli operator from raw bit strings.
// The operator must be diagonal in the measured basis of the given setting
// (X symbols only on X-read atoms, Z on Z-read); otherwise BasisMismatch.
// mean = sign * <(-1)^(parity of bits on the support)>.
Estimate pauli_expectation(const std::vector<ShotRecord>& shots,
                           const PauliString& op,
                           const MeasurementSetting& setting);

// Parity of a single shot over the operator support (0 or 1).
int shot_parity(const ShotRecord& shot, const std::vector<size_t>& support);

}  // namespace atomsim
