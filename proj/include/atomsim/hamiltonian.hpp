#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace atomsim {

using Complex = std::complex<double>;
using StateVec = Eigen::VectorXcd;

// Single-site levels: |0> hyperfine storage, |1> (= |g> during a quench),
// |r> Rydberg. Site s of basis index k occupies trit (k / 3^s) % 3.
enum : int { kLvl0 = 0, kLvl1 = 1, kLvlR = 2 };

// Chain Hamiltonian in angular-frequency units (rad/s):
//   H = Omega/2 sum_i (|1><r| + |r><1|)_i - Delta sum_i n_i
//       + sum_{i<j} V_ij n_i n_j,   n = |r><r|,  V_ij = v0 (a / r_ij)^6.
struct HamiltonianParams {
  int n_atoms = 8;
  double omega = 0.0;    // Rabi frequency, rad/s
  double delta = 0.0;    // detuning, rad/s
  double v0 = 0.0;       // nearest-neighbour interaction, rad/s
  double spacing = 1.0;  // lattice constant, um (1D open chain)
  int n_max = 10;        // dimension guard

  // per-site extra detuning on |r> (Doppler realizations); empty = none
  std::vector<double> site_detuning;

  bool blockade_regime() const { return v0 > omega; }
  double interaction(int i, int j) const;  // V_ij
};

struct ThreeLevelState {
  StateVec amps;  // dimension 3^n
  int n_atoms = 0;

  static ThreeLevelState product(int n_atoms, const std::vector<int>& levels);
  static ThreeLevelState all_in(int n_atoms, int level);
  double norm() const;
  void normalize();
};

// Sparse H|psi> without materializing the matrix.
void apply_hamiltonian(const HamiltonianParams& p, const StateVec& in,
                       StateVec& out);

struct EvolveOptions {
  double tol = 1e-9;        // per-step Krylov truncation target
  int krylov_dim = 40;
  double max_step_us = 0.05;
};

// Advance by t_us microseconds under exp(-iHt). Lanczos propagation with
// conservative substeps; norm is restored to 1e-9 after each call.
ThreeLevelState evolve(const ThreeLevelState& state,
                       const HamiltonianParams& p, double t_us,
                       const EvolveOptions& opt = {});

double energy_expectation(const HamiltonianParams& p, const ThreeLevelState& s);

// Reduced density matrix over the given sites (3^|A| x 3^|A|).
Eigen::MatrixXcd reduced_density(const ThreeLevelState& s,
                                 const std::vector<int>& sites);
double subsystem_purity(const ThreeLevelState& s, const std::vector<int>& sites);
double renyi2(const ThreeLevelState& s, const std::vector<int>& sites);

// One-off propagation accuracy self-test: evolve a small random instance and
// compare against halved steps; returns the observed deviation.
double step_halving_selftest();

}  // namespace atomsim
