#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atomsim/graphs.hpp"
#include "atomsim/pauli.hpp"
#include "atomsim/types.hpp"

namespace atomsim {

enum class DecoderKind { None, SteaneLookup, MWPM };
enum class Setting { Xside, Zside };

struct StabilizerDef {
  std::string name;
  PauliString op;   // code basis, sign +1
  char type = 'x';  // 'x' or 'z': which measurement setting evaluates it
};

struct LogicalPair {
  PauliString x_op;  // X_L
  PauliString z_op;  // Z_L
  int distance = 0;
};

// One per-layer move: absolute target positions for the atoms that move.
struct MoveStage {
  double duration_us = 200.0;
  std::vector<std::array<double, 3>> targets;  // {id, x, y}
};

struct CodeSpec {
  std::string name;
  GraphSpec graph;
  std::vector<std::array<double, 2>> positions;  // initial, per vertex
  std::vector<std::vector<std::pair<int, int>>> cz_layers;
  std::vector<MoveStage> moves;  // between consecutive CZ layers
  double move_duration_us = 200.0;

  std::vector<StabilizerDef> stabilizers;
  std::vector<LogicalPair> logicals;
  DecoderKind decoder = DecoderKind::None;
  bool matching_boundary = true;  // planar: open boundary in the match graph

  // Code-basis rotation: sublattice rotated once to turn the graph state into
  // the code state (Steane); nullopt when the graph state is the code state.
  std::optional<Sublattice> code_rotation;
  // Which sublattice the measurement rotation targets, per setting.
  Sublattice xside_rotates = Sublattice::A;
  Sublattice zside_rotates = Sublattice::B;
  Sublattice rotate_for(Setting s) const;

  size_t n() const { return graph.n(); }
  // Structural checks: stabilizers commute, logicals commute with stabilizers,
  // X_L anticommutes with its Z_L, graph bipartite, edges covered by layers.
  void check() const;
};

CodeSpec code_from_json(const std::string& text);
CodeSpec load_code(const std::string& name_or_path);
std::string data_dir();

}  // namespace atomsim
