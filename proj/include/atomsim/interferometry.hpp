#pragma once

#include <optional>
#include <vector>

#include "atomsim/mapping.hpp"
#include "atomsim/rng.hpp"
#include "atomsim/types.hpp"

namespace atomsim {

// Bell-basis readout of twin pairs from two identical copies. The per-pair
// circuit is local Z(pi) on the first copy's atom, CZ, then a global X(pi/2):
// the singlet maps to |00>. Shot bits are ordered copy-1 atoms then copy-2
// atoms; a lost atom reads 1, so its pair can never flag a singlet.
std::vector<ShotRecord> interfere_and_sample(const MappedState& copy1,
                                             const MappedState& copy2,
                                             size_t n_shots, Rng& rng);

struct EntropyResult {
  std::vector<int> subsystem;  // site indices within one copy
  double purity = 0.0;
  double s2 = 0.0;             // -log2(purity); meaningless if !s2_valid
  bool s2_valid = true;        // false when the purity estimate is <= 0
  double stderror = 0.0;       // jackknife, on the purity
  double s2_stderror = 0.0;    // jackknife, on s2 (when valid)
  double classical_offset = 0; // extensive offset, reported, never subtracted
  size_t n_shots = 0;
};

// Purity as the average singlet parity within the subsystem:
// purity = < (-1)^(number of |00> twin pairs in A) >. classical_offset is
// global_t0_entropy * |A| / n_atoms, reported alongside the raw value.
EntropyResult renyi_entropy(const std::vector<ShotRecord>& shots,
                            const std::vector<int>& subsystem, int n_atoms,
                            double global_t0_entropy = 0.0);

// Exact / Monte Carlo purity reference. Given sampled trajectory states
// (mapped copies with loss flags), averages Tr[rho_A^(i) rho_A^(j)] over
// distinct pairs; one noiseless trajectory reduces to exact Tr[rho_A^2].
double purity_oracle(const std::vector<MappedState>& trajectories,
                     const std::vector<int>& subsystem);

// Exact qubit-basis subsystem purity of one register.
double mapped_purity(const MappedState& state, const std::vector<int>& sites);

// The per-pair Bell readout unitary (basis |b1 b2>, b1 = copy-1 bit fast);
// maps the singlet to |00>.
Eigen::Matrix4cd bell_pair_map();

}  // namespace atomsim
