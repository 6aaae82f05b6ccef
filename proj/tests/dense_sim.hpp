#pragma once

// Test-only dense state-vector simulator for qubit circuits. Kept independent
// of the tableau code path on purpose: it shares no gate tables with it.

#include <cmath>
#include <complex>
#include <vector>

#include "atomsim/types.hpp"

namespace dense {

using C = std::complex<double>;

struct Sim {
  int n;
  std::vector<C> amp;

  explicit Sim(int n_) : n(n_), amp(size_t(1) << n_, C(0)) { amp[0] = 1.0; }

  void single(int q, C u00, C u01, C u10, C u11) {
    size_t step = size_t(1) << q;
    for (size_t base = 0; base < amp.size(); ++base) {
      if (base & step) continue;
      C a = amp[base], b = amp[base | step];
      amp[base] = u00 * a + u01 * b;
      amp[base | step] = u10 * a + u11 * b;
    }
  }

  void rot(int q, atomsim::Axis axis, double theta) {
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    switch (axis) {
      case atomsim::Axis::X: single(q, c, C(0, -s), C(0, -s), c); break;
      case atomsim::Axis::Y: single(q, c, -s, s, c); break;
      case atomsim::Axis::Z:
        single(q, std::exp(C(0, -theta / 2)), 0, 0, std::exp(C(0, theta / 2)));
        break;
    }
  }

  void cz(int a, int b) {
    size_t ma = size_t(1) << a, mb = size_t(1) << b;
    for (size_t k = 0; k < amp.size(); ++k)
      if ((k & ma) && (k & mb)) amp[k] = -amp[k];
  }

  // expectation of a Pauli string
  double pauli_expect(const atomsim::PauliString& p) const {
    std::vector<C> phi = amp;
    // apply p to phi
    for (size_t q = 0; q < p.ops.size(); ++q) {
      size_t mq = size_t(1) << q;
      switch (p.ops[q]) {
        case atomsim::Pauli::I: break;
        case atomsim::Pauli::X:
          for (size_t k = 0; k < phi.size(); ++k)
            if (!(k & mq)) std::swap(phi[k], phi[k | mq]);
          break;
        case atomsim::Pauli::Y:
          for (size_t k = 0; k < phi.size(); ++k)
            if (!(k & mq)) {
              C a = phi[k], b = phi[k | mq];
              phi[k] = C(0, -1) * b;
              phi[k | mq] = C(0, 1) * a;
            }
          break;
        case atomsim::Pauli::Z:
          for (size_t k = 0; k < phi.size(); ++k)
            if (k & mq) phi[k] = -phi[k];
          break;
      }
    }
    C acc = 0;
    for (size_t k = 0; k < amp.size(); ++k) acc += std::conj(amp[k]) * phi[k];
    return p.sign * acc.real();
  }

  // probability of a computational basis outcome
  double prob_of_bit(int q, int bit) const {
    size_t mq = size_t(1) << q;
    double p = 0;
    for (size_t k = 0; k < amp.size(); ++k)
      if (((k & mq) != 0) == (bit == 1)) p += std::norm(amp[k]);
    return p;
  }
};

// run a (noise-free, loss-free) circuit; returns state before measurement,
// with the basis-change convention used by the engine for non-Z readout
inline Sim run_circuit(const atomsim::Circuit& c) {
  using namespace atomsim;
  Sim sim(static_cast<int>(c.n()));
  for (auto& layer : c.layers) {
    if (std::holds_alternative<MeasureAll>(layer)) break;
    if (auto* gr = std::get_if<GlobalRotation>(&layer)) {
      for (int q = 0; q < sim.n; ++q) sim.rot(q, gr->axis, gr->angle);
    } else if (auto* sr = std::get_if<SublatticeRotation>(&layer)) {
      for (int id : sr->targets) sim.rot(c.index_of(id), sr->axis, sr->angle);
    } else if (auto* cz = std::get_if<ParallelCZ>(&layer)) {
      for (auto& [a, b] : cz->pairs) sim.cz(c.index_of(a), c.index_of(b));
    } else if (std::holds_alternative<EchoPulse>(layer)) {
      for (int q = 0; q < sim.n; ++q) sim.rot(q, Axis::Y, M_PI);
    }
  }
  return sim;
}

}  // namespace dense
