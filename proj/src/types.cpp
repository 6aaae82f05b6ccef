#include "atomsim/types.hpp"

#include <stdexcept>

#include "atomsim/pauli.hpp"

namespace atomsim {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': case '_': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
  }
  throw std::invalid_argument(std::string("bad pauli character: ") + c);
}

namespace {
// x/z bit encoding per symbol
inline void bits_of(Pauli p, uint8_t& x, uint8_t& z) {
  switch (p) {
    case Pauli::I: x = 0; z = 0; break;
    case Pauli::X: x = 1; z = 0; break;
    case Pauli::Y: x = 1; z = 1; break;
    case Pauli::Z: x = 0; z = 1; break;
  }
}
inline Pauli symbol_of(uint8_t x, uint8_t z) {
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}
// i-power picked up when multiplying single-qubit letters a*b, with the
// convention Y = i X Z.
inline int mul_phase(uint8_t xa, uint8_t za, uint8_t xb, uint8_t zb) {
  // Table over (a, b) letters; rows a, cols b in order I,X,Y,Z.
  static const int tab[4][4] = {
      //      I   X   Y   Z
      /*I*/ { 0,  0,  0,  0},
      /*X*/ { 0,  0,  1, -1},
      /*Y*/ { 0, -1,  0,  1},
      /*Z*/ { 0,  1, -1,  0},
  };
  auto idx = [](uint8_t x, uint8_t z) { return x ? (z ? 2 : 1) : (z ? 3 : 0); };
  return tab[idx(xa, za)][idx(xb, zb)];
}
}  // namespace

PauliOp PauliOp::from_string(const std::string& s, int sign) {
  PauliOp op(s.size());
  for (size_t q = 0; q < s.size(); ++q) op.set(q, pauli_from_char(s[q]));
  op.set_phase(sign == -1 ? 2 : 0);
  return op;
}

Pauli PauliOp::at(size_t q) const { return symbol_of(x_[q], z_[q]); }

void PauliOp::set(size_t q, Pauli p) { bits_of(p, x_[q], z_[q]); }

int PauliOp::sign() const {
  if (phase_ == 0) return +1;
  if (phase_ == 2) return -1;
  throw std::logic_error("PauliOp has imaginary phase");
}

bool PauliOp::identity() const {
  for (size_t q = 0; q < n(); ++q)
    if (x_[q] || z_[q]) return false;
  return true;
}

bool PauliOp::commutes_with(const PauliOp& o) const {
  int anti = 0;
  for (size_t q = 0; q < n(); ++q)
    anti ^= (x_[q] & o.z_[q]) ^ (z_[q] & o.x_[q]);
  return anti == 0;
}

std::vector<size_t> PauliOp::support() const {
  std::vector<size_t> s;
  for (size_t q = 0; q < n(); ++q)
    if (x_[q] || z_[q]) s.push_back(q);
  return s;
}

size_t PauliOp::weight() const { return support().size(); }

void PauliOp::lmul(const PauliOp& other) {
  int ph = phase_ + other.phase_;
  for (size_t q = 0; q < n(); ++q) {
    ph += mul_phase(other.x_[q], other.z_[q], x_[q], z_[q]);
    x_[q] ^= other.x_[q];
    z_[q] ^= other.z_[q];
  }
  set_phase(ph);
}

void PauliOp::conj_rotation(size_t q, int axis, int quarter_turns) {
  int k = ((quarter_turns % 4) + 4) % 4;
  if (k == 0) return;
  uint8_t x = x_[q], z = z_[q];
  if (!x && !z) return;
  // one quarter turn at a time; exp(-i pi/4 A) conjugation
  for (int step = 0; step < k; ++step) {
    x = x_[q]; z = z_[q];
    int ph = 0;
    uint8_t nx = x, nz = z;
    switch (axis) {
      case 0:  // X: Y->Z, Z->-Y
        if (x && z) { nx = 0; nz = 1; }           // Y -> Z
        else if (!x && z) { nx = 1; nz = 1; ph = 2; }  // Z -> -Y
        break;
      case 1:  // Y: Z->X, X->-Z
        if (!x && z) { nx = 1; nz = 0; }          // Z -> X
        else if (x && !z) { nx = 0; nz = 1; ph = 2; }  // X -> -Z
        break;
      case 2:  // Z: X->Y, Y->-X
        if (x && !z) { nx = 1; nz = 1; }          // X -> Y
        else if (x && z) { nx = 1; nz = 0; ph = 2; }   // Y -> -X
        break;
    }
    x_[q] = nx;
    z_[q] = nz;
    set_phase(phase_ + ph);
  }
}

void PauliOp::conj_cz(size_t a, size_t b) {
  // X_a -> X_a Z_b (and symmetric); sign flips for X x Y-type overlaps
  if (x_[a] && x_[b] && (z_[a] ^ z_[b])) set_phase(phase_ + 2);
  z_[a] ^= x_[b];
  z_[b] ^= x_[a];
}

std::string PauliOp::to_string() const {
  std::string s;
  s.reserve(n() + 1);
  s += (phase_ == 0 ? '+' : phase_ == 2 ? '-' : '?');
  for (size_t q = 0; q < n(); ++q) s += pauli_char(at(q));
  return s;
}

PauliString PauliString::from_string(const std::string& s, int sign) {
  PauliString p;
  p.sign = sign;
  p.ops.reserve(s.size());
  for (char c : s) p.ops.push_back(pauli_from_char(c));
  return p;
}

PauliOp PauliString::to_op() const {
  PauliOp op(ops.size());
  for (size_t q = 0; q < ops.size(); ++q) op.set(q, ops[q]);
  op.set_phase(sign == -1 ? 2 : 0);
  return op;
}

std::string PauliString::to_string() const {
  std::string s;
  s += (sign >= 0 ? '+' : '-');
  for (Pauli p : ops) s += pauli_char(p);
  return s;
}

std::vector<size_t> PauliString::support() const {
  std::vector<size_t> s;
  for (size_t q = 0; q < ops.size(); ++q)
    if (ops[q] != Pauli::I) s.push_back(q);
  return s;
}

size_t PauliString::weight() const { return support().size(); }

bool PauliString::commutes_with(const PauliString& o) const {
  return to_op().commutes_with(o.to_op());
}

int Circuit::index_of(int atom_id) const {
  for (size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i].id == atom_id) return static_cast<int>(i);
  return -1;
}

ShotRecord::ShotRecord(std::vector<uint8_t> bits_in, std::vector<uint8_t> lost_in)
    : bits_(std::move(bits_in)), lost_(std::move(lost_in)) {
  if (bits_.size() != lost_.size())
    throw std::invalid_argument("ShotRecord: bits/lost size mismatch");
  for (size_t q = 0; q < bits_.size(); ++q)
    if (lost_[q]) bits_[q] = 1;  // lost atoms always read 1
}

}  // namespace atomsim
