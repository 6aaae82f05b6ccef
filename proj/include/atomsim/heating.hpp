#pragma once

#include <vector>

namespace atomsim {

// Radial trap parameters. x_zpf is tied to omega0 by sqrt(hbar/(2 m omega0));
// make_trap fills it in, and the constructor-style check() enforces
// consistency to 1e-6 relative.
struct TrapParams {
  double omega0 = 2 * 3.14159265358979323846 * 40e3;  // rad/s
  double x_zpf = 0.0;                                  // m
  double mass = 1.44316060e-25;                        // kg, 87Rb
  double n_max = 26.0;        // vibrational level where the atom escapes
  double omega_spread = 0.15; // fractional spread for averaging

  void check() const;
};
TrapParams make_trap(double omega0_rad_s, double n_max = 26.0,
                     double omega_spread = 0.15);

enum class MoveProfile { CubicConstantJerk };

struct MoveSegment {
  int atom_id = -1;
  double dx_um = 0.0, dy_um = 0.0;
  double duration_us = 0.0;
  MoveProfile profile = MoveProfile::CubicConstantJerk;
};

// Average vibrational quantum number added by one constant-jerk move,
// Delta N = 1/2 * (6 D / (x_zpf omega0^2 T^2))^2, evaluated per axis and
// summed over the x and y displacement components.
double heating_delta_n(const MoveSegment& seg, const TrapParams& traps);
double heating_delta_n_axis(double distance_um, double duration_us,
                            double omega0, double x_zpf);

// Survival probability after heating by delta_n quanta, averaged over trap
// frequencies uniformly spread +-omega_spread around omega0 (delta_n is
// rescaled per sample: Delta N ~ omega^-3 at fixed D, T).
//
// The per-frequency expression integrates the population left below n_max:
//   retention = 1 - (1/2)(1 - erf[(n_max - dN)/sqrt(2 dN)]).
// The complementary form printed without the leading 1 integrates the
// population *above* n_max, i.e. the loss.
double retention(double delta_n, const TrapParams& traps);

// Normalized cubic (smoothstep) move profile and its derivatives.
double cubic_position(double s);      // s in [0,1], 0 -> 0, 1 -> 1
double cubic_velocity(double s);      // d pos / ds
double cubic_acceleration(double s);  // d^2 pos / ds^2

// Thermal free-flight loss from briefly releasing the trap n_drops times for
// t_drop each: the accumulated random-walk displacement (step scale
// v_thermal * t_drop per axis) must stay inside trap_radius. Survival depends
// on t_drop * sqrt(n_drops) only.
double drop_loss(double t_drop_us, int n_drops, double temperature_uK,
                 double trap_radius_um, double mass_kg = 1.44316060e-25);

}  // namespace atomsim
