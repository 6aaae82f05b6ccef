#include "atomsim/decode.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>

#include "atomsim/errors.hpp"

namespace atomsim {

namespace {

// detector support: qubits whose errors of the opposite type flip this check
std::vector<size_t> detector_support(const StabilizerDef& s) {
  std::vector<size_t> out;
  for (size_t q = 0; q < s.op.ops.size(); ++q) {
    Pauli p = s.op.ops[q];
    if ((s.type == 'x' && p == Pauli::X) || (s.type == 'z' && p == Pauli::Z))
      out.push_back(q);
  }
  return out;
}

PauliString steane_lookup(const Syndrome& syn, const CodeSpec& code) {
  PauliString corr;
  corr.ops.assign(code.n(), Pauli::I);
  for (char type : {'x', 'z'}) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < code.stabilizers.size(); ++i)
      if (code.stabilizers[i].type == type) idx.push_back(i);
    unsigned pattern = 0;
    for (size_t k = 0; k < idx.size(); ++k)
      if (syn.values[idx[k]] < 0) pattern |= 1u << k;
    if (pattern == 0) continue;
    // unique qubit whose membership pattern matches
    int hit = -1;
    for (size_t q = 0; q < code.n(); ++q) {
      unsigned memb = 0;
      for (size_t k = 0; k < idx.size(); ++k) {
        auto supp = detector_support(code.stabilizers[idx[k]]);
        if (std::find(supp.begin(), supp.end(), q) != supp.end())
          memb |= 1u << k;
      }
      if (memb == pattern) {
        hit = static_cast<int>(q);
        break;
      }
    }
    if (hit < 0)
      throw std::invalid_argument("steane lookup: unmatched syndrome pattern");
    Pauli add = type == 'x' ? Pauli::Z : Pauli::X;
    corr.ops[hit] = corr.ops[hit] == Pauli::I ? add : Pauli::Y;
  }
  return corr;
}

struct PairPaths {
  int dist = std::numeric_limits<int>::max();
  // achievable logical-flip masks at min distance -> representative qubit set
  std::map<unsigned, std::vector<uint8_t>> by_mask;
};

struct MatchSide {
  size_t n_qubits = 0;
  std::vector<std::vector<size_t>> supports;  // per check node
  std::vector<int> bits;                      // +1 / -1 per check node
  bool boundary = false;
  std::vector<unsigned> qubit_mask;  // logical-flip mask contributed by qubit
};

// BFS over (node, mask) states; unit edge weights.
std::vector<std::vector<PairPaths>> all_pair_paths(const MatchSide& side) {
  const size_t n_checks = side.supports.size();
  const size_t n_nodes = n_checks + (side.boundary ? 1 : 0);
  // adjacency: edges labelled by qubit
  struct Edge {
    size_t to, qubit;
  };
  std::vector<std::vector<Edge>> adj(n_nodes);
  std::vector<std::vector<size_t>> homes(side.n_qubits);
  for (size_t i = 0; i < n_checks; ++i)
    for (size_t q : side.supports[i]) homes[q].push_back(i);
  for (size_t q = 0; q < side.n_qubits; ++q) {
    if (homes[q].size() == 2) {
      adj[homes[q][0]].push_back({homes[q][1], q});
      adj[homes[q][1]].push_back({homes[q][0], q});
    } else if (homes[q].size() == 1 && side.boundary) {
      adj[homes[q][0]].push_back({n_checks, q});
      adj[n_checks].push_back({homes[q][0], q});
    }
  }

  const unsigned n_masks = 1u << 2;  // up to two logicals per code here
  std::vector<std::vector<PairPaths>> out(n_nodes,
                                          std::vector<PairPaths>(n_nodes));
  for (size_t src = 0; src < n_nodes; ++src) {
    std::vector<std::vector<int>> dist(n_nodes, std::vector<int>(n_masks, -1));
    std::vector<std::vector<std::vector<uint8_t>>> path(
        n_nodes, std::vector<std::vector<uint8_t>>(n_masks));
    std::queue<std::pair<size_t, unsigned>> q;
    dist[src][0] = 0;
    path[src][0].assign(side.n_qubits, 0);
    q.push({src, 0});
    while (!q.empty()) {
      auto [node, mask] = q.front();
      q.pop();
      for (auto& e : adj[node]) {
        unsigned nm = mask ^ side.qubit_mask[e.qubit];
        if (dist[e.to][nm] >= 0) continue;
        dist[e.to][nm] = dist[node][mask] + 1;
        path[e.to][nm] = path[node][mask];
        path[e.to][nm][e.qubit] ^= 1;
        q.push({e.to, nm});
      }
    }
    for (size_t dst = 0; dst < n_nodes; ++dst) {
      PairPaths pp;
      for (unsigned m = 0; m < n_masks; ++m)
        if (dist[dst][m] >= 0 && dist[dst][m] < pp.dist) pp.dist = dist[dst][m];
      for (unsigned m = 0; m < n_masks; ++m)
        if (dist[dst][m] == pp.dist) pp.by_mask[m] = path[dst][m];
      out[src][dst] = std::move(pp);
    }
  }
  return out;
}

struct MatchResult {
  int weight = std::numeric_limits<int>::max();
  std::map<unsigned, std::vector<uint8_t>> by_mask;  // achievable corrections
};

void match_rec(const std::vector<size_t>& defects, size_t boundary_node,
               bool boundary, const std::vector<std::vector<PairPaths>>& paths,
               std::vector<uint8_t>& used, int weight_so_far, unsigned mask,
               const std::vector<uint8_t>& corr, MatchResult& best) {
  size_t i = 0;
  while (i < defects.size() && used[i]) ++i;
  if (i == defects.size()) {
    if (weight_so_far < best.weight) {
      best.weight = weight_so_far;
      best.by_mask.clear();
    }
    if (weight_so_far == best.weight && !best.by_mask.count(mask))
      best.by_mask[mask] = corr;
    return;
  }
  if (weight_so_far >= best.weight) return;
  used[i] = 1;
  auto try_pair = [&](const PairPaths& pp) {
    if (pp.dist == std::numeric_limits<int>::max()) return;
    for (auto& [m, pth] : pp.by_mask) {
      std::vector<uint8_t> nc = corr;
      for (size_t q = 0; q < pth.size(); ++q) nc[q] ^= pth[q];
      match_rec(defects, boundary_node, boundary, paths, used,
                weight_so_far + pp.dist, mask ^ m, nc, best);
    }
  };
  for (size_t j = i + 1; j < defects.size(); ++j) {
    if (used[j]) continue;
    used[j] = 1;
    try_pair(paths[defects[i]][defects[j]]);
    used[j] = 0;
  }
  if (boundary) try_pair(paths[defects[i]][boundary_node]);
  used[i] = 0;
}

}  // namespace

PauliString decode(const Syndrome& syn, const CodeSpec& code) {
  if (syn.values.size() != code.stabilizers.size())
    throw InvalidSyndromeLength("syndrome length " +
                                std::to_string(syn.values.size()) + " != " +
                                std::to_string(code.stabilizers.size()));
  if (code.decoder == DecoderKind::None)
    throw std::invalid_argument("code has no decoder");
  if (code.decoder == DecoderKind::SteaneLookup)
    return steane_lookup(syn, code);

  PauliString corr;
  corr.ops.assign(code.n(), Pauli::I);

  for (char type : {'x', 'z'}) {
    MatchSide side;
    side.n_qubits = code.n();
    side.boundary = code.matching_boundary;
    for (size_t i = 0; i < code.stabilizers.size(); ++i) {
      if (code.stabilizers[i].type != type) continue;
      side.supports.push_back(detector_support(code.stabilizers[i]));
      side.bits.push_back(syn.values[i]);
    }
    if (side.supports.empty()) continue;

    if (!side.boundary) {
      // periodic code: reconstruct the dropped generator from the group
      // relation (its support is the single-membership qubit set, its value
      // the product of the shipped checks)
      std::vector<int> count(code.n(), 0);
      for (auto& s : side.supports)
        for (size_t q : s) count[q]++;
      std::vector<size_t> missing;
      for (size_t q = 0; q < code.n(); ++q)
        if (count[q] == 1) missing.push_back(q);
      if (!missing.empty()) {
        int prod = 1;
        for (int b : side.bits) prod *= b;
        side.supports.push_back(missing);
        side.bits.push_back(prod);
      }
    }

    // logical-flip masks: type-x checks imply Z corrections, which flip the
    // X logical readouts (and symmetrically)
    side.qubit_mask.assign(code.n(), 0);
    for (size_t k = 0; k < code.logicals.size() && k < 2; ++k) {
      const PauliString& lop =
          type == 'x' ? code.logicals[k].x_op : code.logicals[k].z_op;
      for (size_t q : lop.support()) side.qubit_mask[q] |= 1u << k;
    }

    std::vector<size_t> defects;
    for (size_t i = 0; i < side.supports.size(); ++i)
      if (side.bits[i] < 0) defects.push_back(i);
    if (defects.empty()) continue;
    if (!side.boundary && defects.size() % 2 != 0)
      throw std::invalid_argument("odd defect count on a periodic code");

    auto paths = all_pair_paths(side);
    MatchResult best;
    std::vector<uint8_t> used(defects.size(), 0);
    std::vector<uint8_t> zero(code.n(), 0);
    match_rec(defects, side.supports.size(), side.boundary, paths, used, 0, 0,
              zero, best);
    if (best.by_mask.empty())
      throw std::invalid_argument("unmatchable syndrome");

    // never flip a logical when a minimum-weight choice avoids it
    unsigned chosen = 0;
    int best_flips = 99;
    for (auto& [m, _] : best.by_mask) {
      int flips = __builtin_popcount(m);
      if (flips < best_flips) {
        best_flips = flips;
        chosen = m;
      }
    }
    const auto& qubits = best.by_mask.at(chosen);
    for (size_t q = 0; q < code.n(); ++q) {
      if (!qubits[q]) continue;
      Pauli add = type == 'x' ? Pauli::Z : Pauli::X;
      corr.ops[q] = corr.ops[q] == Pauli::I ? add : Pauli::Y;
    }
  }
  return corr;
}

}  // namespace atomsim
