#include "atomsim/tableau.hpp"

#include <stdexcept>

namespace atomsim {

StabilizerState::StabilizerState(size_t n) : n_(n), lost_(n, false) {
  destab_.reserve(n);
  stab_.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    PauliOp d(n), s(n);
    d.set(i, Pauli::X);
    s.set(i, Pauli::Z);
    destab_.push_back(d);
    stab_.push_back(s);
  }
}

void StabilizerState::rotate(size_t q, int axis, int quarter_turns) {
  for (auto& r : destab_) r.conj_rotation(q, axis, quarter_turns);
  for (auto& r : stab_) r.conj_rotation(q, axis, quarter_turns);
}

void StabilizerState::cz(size_t a, size_t b) {
  for (auto& r : destab_) r.conj_cz(a, b);
  for (auto& r : stab_) r.conj_cz(a, b);
}

void StabilizerState::apply_pauli(size_t q, Pauli p) {
  if (p == Pauli::I) return;
  PauliOp e(n_);
  e.set(q, p);
  for (auto& r : destab_)
    if (!r.commutes_with(e)) r.set_phase(r.phase() + 2);
  for (auto& r : stab_)
    if (!r.commutes_with(e)) r.set_phase(r.phase() + 2);
}

int StabilizerState::measure_z(size_t q, Rng& rng) {
  if (lost_[q]) return 1;
  int p = -1;
  for (size_t i = 0; i < n_; ++i)
    if (stab_[i].xbit(q)) {
      p = static_cast<int>(i);
      break;
    }
  if (p >= 0) {
    // random outcome
    PauliOp old = stab_[p];
    for (size_t i = 0; i < n_; ++i) {
      if (static_cast<int>(i) != p && stab_[i].xbit(q)) stab_[i].lmul(old);
      if (destab_[i].xbit(q)) {
        if (static_cast<int>(i) == p) continue;  // replaced below
        destab_[i].lmul(old);
      }
    }
    int r = static_cast<int>(rng.next_u64() & 1);
    destab_[p] = old;
    PauliOp zq(n_);
    zq.set(q, Pauli::Z);
    zq.set_phase(r ? 2 : 0);
    stab_[p] = zq;
    return r;
  }
  // deterministic outcome
  PauliOp scratch(n_);
  for (size_t i = 0; i < n_; ++i)
    if (destab_[i].xbit(q)) scratch.lmul(stab_[i]);
  if (scratch.phase() != 0 && scratch.phase() != 2)
    throw std::logic_error("tableau corrupted: imaginary measurement phase");
  return scratch.phase() == 2 ? 1 : 0;
}

int StabilizerState::expectation(const PauliOp& op) const {
  for (auto& s : stab_)
    if (!op.commutes_with(s)) return 0;
  PauliOp scratch(n_);
  for (size_t i = 0; i < n_; ++i)
    if (!op.commutes_with(destab_[i])) scratch.lmul(stab_[i]);
  if (!scratch.same_letters(op))
    throw std::logic_error("expectation: operator outside group span");
  int rel = (scratch.phase() - op.phase() + 4) % 4;
  if (rel == 0) return +1;
  if (rel == 2) return -1;
  throw std::logic_error("expectation: imaginary relative phase");
}

}  // namespace atomsim
