#pragma once

#include <vector>

#include "atomsim/noise.hpp"
#include "atomsim/tableau.hpp"
#include "atomsim/types.hpp"

namespace atomsim {

// Apply one non-measurement layer to the tableau. Rotations must be Clifford
// (net angle a multiple of pi/2) or NonCliffordAngle is thrown. Move layers
// are identity on the tableau; gates involving lost qubits are skipped.
void apply_layer(StabilizerState& state, const Circuit& c, const Layer& layer);

// Monte Carlo shot sampling under the noise model. Per shot: initial loss,
// then per parallel CZ layer the tq channel on gate participants and the
// ambient channel on every qubit; final measurement in the circuit's basis.
// Deterministic: shot k uses stream (rng.seed, rng.stream_id + k).
std::vector<ShotRecord> sample_shots(const Circuit& c, const NoiseModel& noise,
                                     size_t n_shots, RngSpec rng);

// Single-shot version used internally and by tests.
ShotRecord run_single_shot(const Circuit& c, const NoiseModel& noise, Rng& rng);

// Noiseless tableau for the full circuit up to (not including) measurement.
StabilizerState ideal_final_state(const Circuit& c);

// Raw Bell fidelity estimate from populations and the fitted parity
// amplitude: (p00 + p11)/2 + amplitude/2. Once pop11 - pop00 > 0.1, loss
// masquerading as |1> skews p11, and the population term is replaced by
// 2*p00.
double bell_fidelity_estimator(double pop00, double pop11,
                               double parity_amplitude,
                               bool loss_skew_correction = true);

}  // namespace atomsim
