#pragma once

#include <complex>

#include <Eigen/Dense>

namespace atomsim {

// Two-pulse detuned Rydberg protocol realizing CZ together with a common
// single-qubit phase Z(zeta) on each atom. Both pulses run for tau at
// detuning delta; the second carries the extra drive phase xi.
struct CZPulseParams {
  double omega = 2 * 3.14159265358979323846 * 3.6e6;  // rad/s
  double delta_over_omega = -0.377371;
  double xi = -0.621089 * 2 * 3.14159265358979323846;  // rad
  double tau_cycles = 0.683201;  // tau = tau_cycles / (omega / 2pi)

  double delta() const { return delta_over_omega * omega; }
  double tau_s() const {
    return tau_cycles / (omega / (2 * 3.14159265358979323846));
  }
};

struct CZPulseResult {
  Eigen::Matrix4cd map;        // projected {|0>,|1>}^2 map (not unitary: leakage)
  double zeta = 0.0;           // common single-qubit phase, rad
  double leakage = 0.0;        // worst-case population outside the qubit space
  double process_fidelity = 0; // to CZ after removing Z(zeta) x Z(zeta)
  Eigen::Matrix<std::complex<double>, 9, 9> full;  // two-atom 3-level unitary
};

// Integrate the two-atom three-level dynamics at the given blockade strength
// and report the hyperfine-basis map, zeta and leakage.
CZPulseResult cz_pulse_unitary(const CZPulseParams& p, double blockade_rad_s);

}  // namespace atomsim
