#include "atomsim/mapping.hpp"

#include <cmath>

namespace atomsim {

namespace {
inline size_t pow3(int n) {
  size_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}
inline int trit(size_t k, int site) {
  size_t p = 1;
  for (int i = 0; i < site; ++i) p *= 3;
  return static_cast<int>((k / p) % 3);
}
inline size_t p3(int site) {
  size_t p = 1;
  for (int i = 0; i < site; ++i) p *= 3;
  return p;
}
}  // namespace

ThreeLevelState prepare_z2(const ThreeLevelState& all_ones,
                           const HamiltonianParams& params,
                           double lightshift_rad_s,
                           const std::vector<uint8_t>& masked) {
  HamiltonianParams p = params;
  p.delta = 0;
  p.site_detuning.assign(p.n_atoms, 0.0);
  for (int i = 0; i < p.n_atoms; ++i)
    if (i < static_cast<int>(masked.size()) && masked[i])
      p.site_detuning[i] = lightshift_rad_s;
  double t_pi_us = M_PI / p.omega * 1e6;
  return evolve(all_ones, p, t_pi_us);
}

namespace {

MappedState run_map(const ThreeLevelState& state,
                    const HamiltonianParams& params,
                    const MappingErrorModel& errs, Rng* rng) {
  const int n = state.n_atoms;
  const size_t dim3 = pow3(n);
  ThreeLevelState s = state;

  // Raman pi pulse: |1> -> -i|0>, |0> -> -i|1>; |r> untouched. Implemented as
  // an exact relabel (the pulse is fast next to every other timescale here).
  {
    StateVec out = StateVec::Zero(dim3);
    for (size_t k = 0; k < dim3; ++k) {
      if (s.amps[k] == Complex(0)) continue;
      size_t k2 = k;
      int swaps = 0;
      for (int i = 0; i < n; ++i) {
        int t = trit(k, i);
        if (t == kLvl0) {
          k2 += p3(i);  // 0 -> 1
          ++swaps;
        } else if (t == kLvl1) {
          k2 -= p3(i);  // 1 -> 0
          ++swaps;
        }
      }
      Complex phase = std::pow(Complex(0, -1), swaps);
      out[k2] += phase * s.amps[k];
    }
    s.amps = out;
  }

  // sampled quasi-static Doppler detunings on |r>
  HamiltonianParams p = params;
  p.site_detuning.assign(n, 0.0);
  if (rng && errs.doppler_sigma_hz > 0)
    for (int i = 0; i < n; ++i)
      p.site_detuning[i] = 2 * M_PI * errs.doppler_sigma_hz * rng->gaussian();

  // free flight during the gap: drive off, interactions and detunings on
  if (errs.gap_time_s > 0) {
    HamiltonianParams gap = p;
    gap.omega = 0;
    gap.delta = 0;
    s = evolve(s, gap, errs.gap_time_s * 1e6);
  }

  // Rydberg pi pulse |r> -> |1> at the boosted Rabi frequency
  {
    HamiltonianParams pulse = p;
    pulse.omega = params.omega * errs.final_pulse_omega_scale;
    pulse.delta = 0;
    double t_pi_us = M_PI / pulse.omega * 1e6;
    s = evolve(s, pulse, t_pi_us);
  }

  // project residual |r> population out, atom by atom
  MappedState out;
  out.n_atoms = n;
  out.lost.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    double pr = 0;
    for (size_t k = 0; k < dim3; ++k)
      if (trit(k, i) == kLvlR) pr += std::norm(s.amps[k]);
    bool lose = rng ? (rng->uniform() < pr) : false;
    if (!rng && pr > 1e-12) lose = false;  // ideal path keeps the qubit part
    out.lost[i] = lose ? 1 : 0;
    for (size_t k = 0; k < dim3; ++k) {
      bool in_r = trit(k, i) == kLvlR;
      if (in_r != lose) s.amps[k] = 0;
    }
    double nrm = s.amps.norm();
    if (nrm > 0) s.amps /= nrm;
  }

  // repack {0,1}^n; a lost atom's register slot is fixed to |1>
  const size_t dim2 = 1ull << n;
  out.amps = Eigen::VectorXcd::Zero(dim2);
  for (size_t k = 0; k < dim3; ++k) {
    if (s.amps[k] == Complex(0)) continue;
    size_t b = 0;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      int t = trit(k, i);
      if (t == kLvlR) {
        if (!out.lost[i]) ok = false;
        b |= 1ull << i;  // lost reads as 1
      } else if (t == kLvl1) {
        b |= 1ull << i;
      }
    }
    if (ok) out.amps[b] += s.amps[k];
  }
  double nrm = out.amps.norm();
  if (nrm > 0) out.amps /= nrm;
  return out;
}

}  // namespace

MappedState coherent_map(const ThreeLevelState& state,
                         const HamiltonianParams& params,
                         const MappingErrorModel& errs, Rng& rng) {
  return run_map(state, params, errs, &rng);
}

MappedState coherent_map_ideal(const ThreeLevelState& state,
                               const HamiltonianParams& params) {
  MappingErrorModel z = MappingErrorModel::zero();
  // infinitely fast, fully resonant final pulse: emulate by huge scale
  z.final_pulse_omega_scale = 1e4;
  return run_map(state, params, z, nullptr);
}

}  // namespace atomsim
