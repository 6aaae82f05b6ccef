#pragma once

#include <vector>

#include "atomsim/pauli.hpp"
#include "atomsim/rng.hpp"

namespace atomsim {

// Aaronson-Gottesman stabilizer tableau with destabilizer rows and a per-qubit
// loss flag. Lost qubits are excluded from every later gate and read out as 1.
class StabilizerState {
 public:
  explicit StabilizerState(size_t n);

  size_t n() const { return n_; }
  bool lost(size_t q) const { return lost_[q]; }
  void mark_lost(size_t q) { lost_[q] = true; }

  // Clifford gates; quarter_turns counts pi/2 rotations about the axis.
  void rotate(size_t q, int axis, int quarter_turns);
  void cz(size_t a, size_t b);
  void apply_pauli(size_t q, Pauli p);  // error insertion

  // Z measurement of one qubit (collapses); lost qubits return 1 without
  // touching the tableau.
  int measure_z(size_t q, Rng& rng);

  // Expectation of a Pauli operator: +1/-1 when the state is an eigenstate,
  // 0 otherwise. Does not collapse.
  int expectation(const PauliOp& op) const;

  const PauliOp& stabilizer(size_t i) const { return stab_[i]; }

 private:
  size_t n_;
  std::vector<PauliOp> destab_, stab_;
  std::vector<bool> lost_;
};

}  // namespace atomsim
