#pragma once

#include <array>
#include <map>
#include <vector>

#include "atomsim/graphs.hpp"

namespace atomsim {

struct SearchWeights {
  double move_distance = 1.0;  // secondary objective after layer count
  int restarts = 64;
  double static_pitch_um = 10.0;
  double gate_gap_um = 2.0;  // mobile hovers this far above its partner
};

struct LayoutPlan {
  Sublattice mobile = Sublattice::B;
  std::map<int, std::array<double, 2>> initial;  // all atoms
  std::vector<std::vector<std::pair<int, int>>> layers;
  // mobile positions at each CZ layer (stage k = during layer k)
  std::vector<std::map<int, std::array<double, 2>>> stage_positions;
  double total_move_distance = 0.0;
};

// Greedy layout search for bipartite interaction graphs: proper edge coloring
// for the gate layers (layer count = max degree when orderable), one static
// row plus one mobile row, and per-layer mobile positions that keep AOD
// column order. Scoring follows layer count first, then total move distance.
// Best-effort, not guaranteed optimal.
LayoutPlan search_layout(const GraphSpec& g, const SearchWeights& w = {},
                         uint64_t seed = 0);

}  // namespace atomsim
