#pragma once

#include <string>

#include "atomsim/pauli.hpp"
#include "atomsim/rng.hpp"

namespace atomsim {

struct PauliChannel {
  double px = 0, py = 0, pz = 0, ploss = 0;
  double total() const { return px + py + pz + ploss; }
};

// Empirical depolarizing + loss model. The two-qubit channel fires on the
// participants of each parallel CZ layer; the ambient channel fires on every
// qubit once per parallel CZ layer; init_loss is applied before the circuit.
struct NoiseModel {
  PauliChannel tq_layer;
  PauliChannel ambient_layer;
  double init_loss = 0.0;

  bool is_zero() const;
  void validate() const;  // probabilities in range

  static NoiseModel zero() { return {}; }
  static NoiseModel from_json(const std::string& text);
  static NoiseModel load(const std::string& path);
  std::string to_json() const;
};

// One sample from a channel: I/X/Y/Z or loss.
struct ChannelDraw {
  Pauli pauli = Pauli::I;
  bool loss = false;
};
ChannelDraw sample_channel(const PauliChannel& ch, Rng& rng);

}  // namespace atomsim
