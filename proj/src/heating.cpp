#include "atomsim/heating.hpp"

#include <cmath>
#include <stdexcept>

namespace atomsim {

namespace {
constexpr double kHbar = 1.054571817e-34;
constexpr double kBoltzmann = 1.380649e-23;

double zpf_of(double mass, double omega0) {
  return std::sqrt(kHbar / (2.0 * mass * omega0));
}
}  // namespace

void TrapParams::check() const {
  if (omega0 <= 0 || x_zpf <= 0 || mass <= 0 || n_max <= 0)
    throw std::invalid_argument("TrapParams: all parameters must be positive");
  double want = zpf_of(mass, omega0);
  if (std::abs(x_zpf - want) / want > 1e-6)
    throw std::invalid_argument("TrapParams: x_zpf inconsistent with omega0");
}

TrapParams make_trap(double omega0_rad_s, double n_max, double omega_spread) {
  TrapParams t;
  t.omega0 = omega0_rad_s;
  t.n_max = n_max;
  t.omega_spread = omega_spread;
  t.x_zpf = zpf_of(t.mass, t.omega0);
  return t;
}

double heating_delta_n_axis(double distance_um, double duration_us,
                            double omega0, double x_zpf) {
  if (distance_um == 0) return 0.0;
  double d = std::abs(distance_um) * 1e-6;
  double t = duration_us * 1e-6;
  double a = 6.0 * d / (x_zpf * omega0 * omega0 * t * t);
  return 0.5 * a * a;
}

double heating_delta_n(const MoveSegment& seg, const TrapParams& traps) {
  traps.check();
  if (seg.duration_us <= 0)
    throw std::invalid_argument("heating_delta_n: duration must be positive");
  return heating_delta_n_axis(seg.dx_um, seg.duration_us, traps.omega0,
                              traps.x_zpf) +
         heating_delta_n_axis(seg.dy_um, seg.duration_us, traps.omega0,
                              traps.x_zpf);
}

double retention(double delta_n, const TrapParams& traps) {
  traps.check();
  if (delta_n < 0) throw std::invalid_argument("retention: delta_n >= 0");
  if (delta_n == 0) return 1.0;
  auto one = [&](double dn) {
    if (dn <= 0) return 1.0;
    return 1.0 - 0.5 * (1.0 - std::erf((traps.n_max - dn) / std::sqrt(2.0 * dn)));
  };
  if (traps.omega_spread <= 0) return one(delta_n);
  // midpoint quadrature over omega in omega0 * [1-s, 1+s]; dN ~ omega^-3
  const int kSamples = 41;
  double acc = 0;
  for (int i = 0; i < kSamples; ++i) {
    double f = 1.0 - traps.omega_spread +
               (2.0 * traps.omega_spread) * (i + 0.5) / kSamples;
    acc += one(delta_n / (f * f * f));
  }
  return acc / kSamples;
}

double cubic_position(double s) { return s * s * (3.0 - 2.0 * s); }
double cubic_velocity(double s) { return 6.0 * s * (1.0 - s); }
double cubic_acceleration(double s) { return 6.0 - 12.0 * s; }

double drop_loss(double t_drop_us, int n_drops, double temperature_uK,
                 double trap_radius_um, double mass_kg) {
  if (t_drop_us < 0 || n_drops < 0 || temperature_uK <= 0 ||
      trap_radius_um <= 0)
    throw std::invalid_argument("drop_loss: arguments must be positive");
  if (n_drops == 0 || t_drop_us == 0) return 1.0;
  // thermal velocity in m/s equals um/us numerically
  double v_th = std::sqrt(kBoltzmann * temperature_uK * 1e-6 / mass_kg);
  double sigma_step = v_th * t_drop_us;  // um, per axis per drop
  double var = n_drops * sigma_step * sigma_step;
  // 2D isotropic random walk: P(|R| < r) = 1 - exp(-r^2 / (2 n sigma^2))
  return 1.0 - std::exp(-trap_radius_um * trap_radius_um / (2.0 * var));
}

}  // namespace atomsim
