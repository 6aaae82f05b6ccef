#pragma once

#include <vector>

#include "atomsim/hamiltonian.hpp"
#include "atomsim/rng.hpp"

namespace atomsim {

// Error model of the {|1>,|r>} -> {|0>,|1>} transfer.
struct MappingErrorModel {
  double doppler_sigma_hz = 100e3;  // std of the on-site |r> detuning
  double gap_time_s = 150e-9;       // free evolution between the two pulses
  double final_pulse_omega_scale = 2.0;
  double empirical_decay_rate_hz = 1.0 / 70e-6;  // per atom, purity model
  double t0_purity_scale = 1.0;                  // measured global t=0 purity

  static MappingErrorModel zero() {
    MappingErrorModel m;
    m.doppler_sigma_hz = 0;
    m.gap_time_s = 0;
    m.empirical_decay_rate_hz = 0;
    m.t0_purity_scale = 1.0;
    return m;
  }
};

// Qubit-basis register after the mapping: amplitudes over {|0>,|1>}^n plus
// per-atom loss flags for population stranded in |r>.
struct MappedState {
  Eigen::VectorXcd amps;  // dimension 2^n over surviving atoms' full register
  int n_atoms = 0;
  std::vector<uint8_t> lost;
};

// Prepare |r 1 r 1 ...> from |1...1>: a global pi pulse with a biasing light
// shift on the masked (staying |1>) sites. Returns the full three-level state.
ThreeLevelState prepare_z2(const ThreeLevelState& all_ones,
                           const HamiltonianParams& params,
                           double lightshift_rad_s,
                           const std::vector<uint8_t>& masked);

// Coherent basis transfer: relabel |1> -> |0|, free evolution for the gap
// with sampled Gaussian on-site detunings (interactions still on), then the
// Rydberg pi pulse |r> -> |1> at scaled Rabi frequency including long-range
// interaction detunings. Residual |r> population is projected out atom by
// atom and flagged lost.
MappedState coherent_map(const ThreeLevelState& state,
                         const HamiltonianParams& params,
                         const MappingErrorModel& errs, Rng& rng);

// Exact mapping with every error knob off (unitary, keeps purity).
MappedState coherent_map_ideal(const ThreeLevelState& state,
                               const HamiltonianParams& params);

}  // namespace atomsim
