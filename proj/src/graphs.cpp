#include "atomsim/graphs.hpp"

namespace atomsim {

std::vector<int> GraphSpec::neighbors(int v) const {
  std::vector<int> out;
  for (auto& [a, b] : edges) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  return out;
}

bool GraphSpec::bipartite_by_sublattice() const {
  for (auto& [a, b] : edges)
    if (sublattice[a] == sublattice[b]) return false;
  return true;
}

std::vector<int> GraphSpec::in_sublattice(Sublattice s) const {
  std::vector<int> out;
  for (size_t v = 0; v < n(); ++v)
    if (sublattice[v] == s) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<PauliString> graph_stabilizers(const GraphSpec& g) {
  std::vector<PauliString> out;
  out.reserve(g.n());
  for (size_t v = 0; v < g.n(); ++v) {
    PauliString s;
    s.ops.assign(g.n(), Pauli::I);
    s.sign = +1;
    s.ops[v] = Pauli::X;
    for (int u : g.neighbors(static_cast<int>(v))) s.ops[u] = Pauli::Z;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace atomsim
