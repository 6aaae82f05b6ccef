#include "atomsim/layout_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "atomsim/errors.hpp"
#include "atomsim/rng.hpp"

namespace atomsim {

namespace {

// Greedy order-feasible layering: gates go into the earliest layer that keeps
// (a) each atom in at most one gate per layer and (b) the gating mobiles'
// column order consistent with their partners' positions. Feasible by
// construction; layer count depends on the orderings tried.
std::vector<std::vector<std::pair<int, int>>> greedy_layers(
    const GraphSpec& g, Sublattice mob, const std::vector<size_t>& edge_order,
    const std::map<int, double>& static_x, const std::map<int, int>& rank) {
  std::vector<std::vector<std::pair<int, int>>> layers;  // (mobile, static)
  for (size_t e : edge_order) {
    auto [a, b] = g.edges[e];
    int mv = g.sublattice[a] == mob ? a : b;
    int sv = mv == a ? b : a;
    bool placed = false;
    for (auto& layer : layers) {
      bool ok = true;
      for (auto& [m2, s2] : layer) {
        if (m2 == mv || s2 == sv) {
          ok = false;
          break;
        }
        bool mob_before = rank.at(m2) < rank.at(mv);
        bool x_before = static_x.at(s2) < static_x.at(sv);
        if (mob_before != x_before) {
          ok = false;
          break;
        }
      }
      if (ok) {
        layer.push_back({mv, sv});
        placed = true;
        break;
      }
    }
    if (!placed) layers.push_back({{mv, sv}});
  }
  return layers;
}

}  // namespace

LayoutPlan search_layout(const GraphSpec& g, const SearchWeights& w,
                         uint64_t seed) {
  if (!g.bipartite_by_sublattice())
    throw NonBipartite("search_layout: sublattice tags are not a bipartition");

  Rng rng(seed, 0);
  bool have_best = false;
  LayoutPlan best;
  auto better = [&](const LayoutPlan& p, const LayoutPlan& q) {
    if (p.layers.size() != q.layers.size())
      return p.layers.size() < q.layers.size();
    return p.total_move_distance < q.total_move_distance;
  };

  for (int attempt = 0; attempt < w.restarts; ++attempt) {
    Sublattice mob = (attempt % 2 == 0) ? Sublattice::B : Sublattice::A;
    std::vector<int> statics =
        g.in_sublattice(mob == Sublattice::A ? Sublattice::B : Sublattice::A);
    std::vector<int> mobiles = g.in_sublattice(mob);
    if (mobiles.empty() || statics.empty()) continue;

    std::vector<size_t> edge_order(g.edges.size());
    std::iota(edge_order.begin(), edge_order.end(), 0);
    std::vector<int> static_order = statics;
    std::vector<int> mobile_order = mobiles;
    if (attempt >= 2) {
      for (size_t i = edge_order.size(); i > 1; --i)
        std::swap(edge_order[i - 1], edge_order[rng.uniform_int(i)]);
      for (size_t i = static_order.size(); i > 1; --i)
        std::swap(static_order[i - 1], static_order[rng.uniform_int(i)]);
      for (size_t i = mobile_order.size(); i > 1; --i)
        std::swap(mobile_order[i - 1], mobile_order[rng.uniform_int(i)]);
    }

    std::map<int, double> static_x;
    for (size_t i = 0; i < static_order.size(); ++i)
      static_x[static_order[i]] = w.static_pitch_um * i;
    std::map<int, int> rank;
    for (size_t i = 0; i < mobile_order.size(); ++i)
      rank[mobile_order[i]] = static_cast<int>(i);

    auto layers = greedy_layers(g, mob, edge_order, static_x, rank);
    const int n_layers = static_cast<int>(layers.size());

    // per-layer mobile positions: gates pinned above the partner, idle
    // columns spread strictly between their pinned neighbours
    LayoutPlan plan;
    plan.mobile = mob;
    plan.layers = layers;
    plan.stage_positions.assign(n_layers, {});
    const int n_mob = static_cast<int>(mobile_order.size());
    std::vector<double> prev_x(n_mob);
    for (int L = 0; L < n_layers; ++L) {
      std::vector<double> x(n_mob, NAN);
      for (auto& [mv, sv] : layers[L]) x[rank[mv]] = static_x[sv];
      int i = 0;
      while (i < n_mob) {
        if (!std::isnan(x[i])) {
          ++i;
          continue;
        }
        int j = i;
        while (j < n_mob && std::isnan(x[j])) ++j;
        double lo = (i == 0)
                        ? ((j < n_mob ? x[j] : 0.0) -
                           w.static_pitch_um * (j - i + 1))
                        : x[i - 1];
        double hi = (j == n_mob) ? lo + w.static_pitch_um * (j - i + 1) : x[j];
        for (int k = i; k < j; ++k)
          x[k] = lo + (hi - lo) * (k - i + 1) / (j - i + 1);
        i = j;
      }
      for (int k = 0; k < n_mob; ++k) {
        plan.stage_positions[L][mobile_order[k]] = {x[k], w.gate_gap_um};
        if (L > 0) plan.total_move_distance += std::abs(x[k] - prev_x[k]);
      }
      prev_x = x;
    }
    for (auto& [v, px] : static_x) plan.initial[v] = {px, 0.0};
    for (auto& [v, p] : plan.stage_positions[0]) plan.initial[v] = p;

    if (!have_best || better(plan, best)) {
      have_best = true;
      best = plan;
    }
  }
  if (!have_best)
    throw std::runtime_error("search_layout: no orderable schedule found");
  return best;
}

}  // namespace atomsim
