#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace atomsim {

// Blockade-constrained two-level chain with periodic boundary: basis states
// are bitmasks (1 = Rydberg) with no two adjacent excitations around the
// ring; H = sum_i P_{i-1} X_i P_{i+1} in units of the drive Rabi frequency.
struct PxpBasis {
  int n_atoms = 0;
  std::vector<uint32_t> states;          // sorted constrained configurations
  std::vector<int64_t> index_of;         // 2^n lookup, -1 outside the basis

  static PxpBasis build(int n_atoms);    // throws DimensionOverflow above 24
  size_t dim() const { return states.size(); }
};

struct PxpState {
  Eigen::VectorXcd amps;  // over the constrained basis
};

PxpState pxp_initial(const PxpBasis& basis, uint32_t configuration);

// evolve by time t in units of 1/Omega (H has unit drive amplitude)
PxpState pxp_evolve(const PxpBasis& basis, const PxpState& s, double t);

// single-site Renyi-2 entropy from the one-site reduced density matrix
double pxp_single_site_s2(const PxpBasis& basis, const PxpState& s, int site);
double pxp_site_population(const PxpBasis& basis, const PxpState& s, int site);

}  // namespace atomsim
