#pragma once

#include <string>
#include <vector>

#include "atomsim/pauli.hpp"

namespace atomsim {

enum class Sublattice : uint8_t { A, B };

struct GraphSpec {
  std::vector<int> vertices;                 // contiguous ids 0..n-1
  std::vector<std::pair<int, int>> edges;    // unordered, unique
  std::vector<Sublattice> sublattice;        // per vertex
  std::vector<uint8_t> ancilla;              // per vertex

  size_t n() const { return vertices.size(); }
  std::vector<int> neighbors(int v) const;
  bool bipartite_by_sublattice() const;  // no edge inside one sublattice
  std::vector<int> in_sublattice(Sublattice s) const;
};

// Graph-state generators: one per vertex, X there and Z on each neighbor,
// sign +1.
std::vector<PauliString> graph_stabilizers(const GraphSpec& g);

}  // namespace atomsim
