#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "atomsim/pauli.hpp"

namespace atomsim {

enum class TrapKind { StaticSLM, MobileAOD };
enum class Axis { X = 0, Y = 1, Z = 2 };
enum class MeasBasis { X, Y, Z };

struct AtomRecord {
  int id = -1;
  TrapKind trap = TrapKind::StaticSLM;
  int row = -1, col = -1;  // AOD coordinates, MobileAOD only
  double x = 0.0, y = 0.0; // micrometers
};

struct GlobalRotation {
  Axis axis = Axis::Y;
  double angle = 0.0;  // radians
};

struct SublatticeRotation {
  std::vector<int> targets;  // atom ids receiving the rotation
  Axis axis = Axis::Y;
  double angle = 0.0;
};

struct ParallelCZ {
  std::vector<std::pair<int, int>> pairs;
};

struct EchoPulse {};  // global Y(pi)

struct MoveWaypoint {
  int id = -1;
  double dx = 0.0, dy = 0.0;  // micrometers
};

struct Move {
  std::vector<MoveWaypoint> displacements;
  double duration_us = 0.0;
};

struct MeasureAll {
  MeasBasis basis = MeasBasis::Z;
};

using Layer = std::variant<GlobalRotation, SublatticeRotation, ParallelCZ,
                           EchoPulse, Move, MeasureAll>;

struct Circuit {
  std::string name;
  std::string code_ref;
  std::vector<AtomRecord> atoms;
  std::vector<Layer> layers;

  size_t n() const { return atoms.size(); }
  int index_of(int atom_id) const;  // -1 if unknown
};

// Per-atom readout after one circuit execution. Lost atoms read as 1: the
// imaging scheme detects |1> by pushout-induced loss, so a missing atom is
// indistinguishable from |1>. The separate flag exists for simulator
// bookkeeping and tests only.
struct ShotRecord {
  ShotRecord() = default;
  ShotRecord(std::vector<uint8_t> bits_in, std::vector<uint8_t> lost_in);

  const std::vector<uint8_t>& bits() const { return bits_; }
  const std::vector<uint8_t>& lost() const { return lost_; }
  uint8_t bit(size_t q) const { return bits_[q]; }
  bool is_lost(size_t q) const { return lost_[q] != 0; }
  size_t n() const { return bits_.size(); }

 private:
  std::vector<uint8_t> bits_;
  std::vector<uint8_t> lost_;
};

// Which single-atom basis each readout bit reports, for one measurement
// configuration of a circuit (the sublattice rotation decides this).
struct MeasurementSetting {
  std::string name;
  std::vector<MeasBasis> basis;  // per atom index
};

}  // namespace atomsim
