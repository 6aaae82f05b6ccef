#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace atomsim {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

// n-qubit Pauli operator stored as per-qubit (x,z) bit pairs with a global
// phase exponent k, meaning i^k * X^x Z^z on each site. Stabilizer rows and
// the echo-frame bookkeeping both use this representation; for physical
// operators the phase stays in {0, 2} (signs +1 / -1).
class PauliOp {
 public:
  PauliOp() = default;
  explicit PauliOp(size_t n) : x_(n, 0), z_(n, 0) {}
  // e.g. from_string("XZI", +1); string index = qubit index.
  static PauliOp from_string(const std::string& s, int sign = +1);

  size_t n() const { return x_.size(); }
  Pauli at(size_t q) const;
  void set(size_t q, Pauli p);
  bool xbit(size_t q) const { return x_[q]; }
  bool zbit(size_t q) const { return z_[q]; }

  // phase exponent mod 4 (operator = i^phase * product of unsigned Paulis)
  int phase() const { return phase_; }
  void set_phase(int k) { phase_ = ((k % 4) + 4) % 4; }
  int sign() const;  // +1 or -1; throws if phase is imaginary

  bool identity() const;
  bool commutes_with(const PauliOp& o) const;
  std::vector<size_t> support() const;
  size_t weight() const;

  // this <- other * this (left multiplication), phases tracked mod 4
  void lmul(const PauliOp& other);

  // Conjugation by Clifford gates: P -> U P U^dagger.
  void conj_rotation(size_t q, int axis /*0=X,1=Y,2=Z*/, int quarter_turns);
  void conj_cz(size_t a, size_t b);

  std::string to_string() const;
  bool same_letters(const PauliOp& o) const { return x_ == o.x_ && z_ == o.z_; }
  bool operator==(const PauliOp& o) const = default;

 private:
  std::vector<uint8_t> x_, z_;
  int phase_ = 0;
};

// Sign-only Pauli string over atoms, the user-facing operator type for
// stabilizers and logicals.
struct PauliString {
  std::vector<Pauli> ops;
  int sign = +1;

  static PauliString from_string(const std::string& s, int sign = +1);
  PauliOp to_op() const;
  std::string to_string() const;
  std::vector<size_t> support() const;
  size_t weight() const;
  bool commutes_with(const PauliString& o) const;
};

}  // namespace atomsim
