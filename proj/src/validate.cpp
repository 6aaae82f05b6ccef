#include "atomsim/validate.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace atomsim {

namespace {
std::string fmt(int a) { return std::to_string(a); }
}  // namespace

std::vector<Violation> validate_circuit(const Circuit& c,
                                        const ValidateOptions& opt) {
  std::vector<Violation> out;
  auto add = [&](int layer, std::string rule, std::string detail) {
    out.push_back({layer, std::move(rule), std::move(detail)});
  };

  // atom-level invariants
  std::set<int> ids;
  for (auto& a : c.atoms) {
    if (!ids.insert(a.id).second)
      add(-1, "ids unique", "duplicate atom id " + fmt(a.id));
    if (!std::isfinite(a.x) || !std::isfinite(a.y))
      add(-1, "positions finite", "atom " + fmt(a.id));
    if (a.trap == TrapKind::MobileAOD && (a.row < 0 || a.col < 0))
      add(-1, "mobile atoms need row/col", "atom " + fmt(a.id));
  }

  // AOD grid consistency: same column implies same x, same row same y,
  // and tone positions strictly ordered by index.
  std::map<int, double> col_x, row_y;
  for (auto& a : c.atoms) {
    if (a.trap != TrapKind::MobileAOD) continue;
    auto [itc, newc] = col_x.try_emplace(a.col, a.x);
    if (!newc && std::abs(itc->second - a.x) > 1e-9)
      add(-1, "column tone shared", "atom " + fmt(a.id));
    auto [itr, newr] = row_y.try_emplace(a.row, a.y);
    if (!newr && std::abs(itr->second - a.y) > 1e-9)
      add(-1, "row tone shared", "atom " + fmt(a.id));
  }
  auto ordered = [](const std::map<int, double>& m) {
    double prev = -1e300;
    for (auto& [idx, pos] : m) {
      if (pos <= prev) return false;
      prev = pos;
    }
    return true;
  };
  if (!ordered(col_x)) add(-1, "column order not preserved", "initial layout");
  if (!ordered(row_y)) add(-1, "row order not preserved", "initial layout");

  // walk layers, tracking positions through moves
  std::map<int, std::pair<double, double>> pos;
  for (auto& a : c.atoms) pos[a.id] = {a.x, a.y};

  auto known = [&](int id) { return pos.count(id) != 0; };

  for (size_t li = 0; li < c.layers.size(); ++li) {
    const int L = static_cast<int>(li);
    const Layer& layer = c.layers[li];

    if (std::holds_alternative<MeasureAll>(layer) && li + 1 != c.layers.size())
      add(L, "measurement is final layer", "");

    if (auto* sr = std::get_if<SublatticeRotation>(&layer)) {
      for (int id : sr->targets)
        if (!known(id)) add(L, "atom ids exist", "unknown id " + fmt(id));
    } else if (auto* cz = std::get_if<ParallelCZ>(&layer)) {
      std::set<int> used;
      for (auto& [a, b] : cz->pairs) {
        if (!known(a) || !known(b)) {
          add(L, "atom ids exist", fmt(a) + "," + fmt(b));
          continue;
        }
        if (!used.insert(a).second || !used.insert(b).second)
          add(L, "pairs not disjoint", fmt(a) + "," + fmt(b));
        auto [xa, ya] = pos[a];
        auto [xb, yb] = pos[b];
        double d = std::hypot(xa - xb, ya - yb);
        if (d > opt.blockade_radius_um) {
          std::ostringstream ss;
          ss << "pair (" << a << "," << b << ") separated by " << d << " um";
          add(L, "pair not adjacent", ss.str());
        }
      }
    } else if (auto* mv = std::get_if<Move>(&layer)) {
      if (mv->duration_us <= 0) add(L, "move duration positive", "");
      // per-tone displacement consistency and order preservation
      std::map<int, double> col_dx, row_dy;
      std::map<int, double> new_col_x = col_x, new_row_y = row_y;
      for (auto& w : mv->displacements) {
        if (!known(w.id)) {
          add(L, "atom ids exist", "unknown id " + fmt(w.id));
          continue;
        }
        const AtomRecord* rec = nullptr;
        for (auto& a : c.atoms)
          if (a.id == w.id) rec = &a;
        if (rec->trap != TrapKind::MobileAOD) {
          add(L, "only mobile atoms move", "atom " + fmt(w.id));
          continue;
        }
        auto [itc, newc] = col_dx.try_emplace(rec->col, w.dx);
        if (!newc && std::abs(itc->second - w.dx) > 1e-9)
          add(L, "column moves together", "atom " + fmt(w.id));
        auto [itr, newr] = row_dy.try_emplace(rec->row, w.dy);
        if (!newr && std::abs(itr->second - w.dy) > 1e-9)
          add(L, "row moves together", "atom " + fmt(w.id));
        pos[w.id].first += w.dx;
        pos[w.id].second += w.dy;
      }
      for (auto& [ci, dx] : col_dx) new_col_x[ci] += dx;
      for (auto& [ri, dy] : row_dy) new_row_y[ri] += dy;
      if (!ordered(new_col_x)) add(L, "column order not preserved", "");
      if (!ordered(new_row_y)) add(L, "row order not preserved", "");
      col_x = new_col_x;
      row_y = new_row_y;
    }
  }

  if (c.layers.empty() ||
      !std::holds_alternative<MeasureAll>(c.layers.back()))
    add(-1, "measurement is final layer", "circuit has no final measurement");

  return out;
}

}  // namespace atomsim
