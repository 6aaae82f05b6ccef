#include "atomsim/expectation.hpp"

#include <cmath>

#include "atomsim/errors.hpp"

namespace atomsim {

int shot_parity(const ShotRecord& shot, const std::vector<size_t>& support) {
  int p = 0;
  for (size_t q : support) p ^= shot.bit(q);
  return p;
}

Estimate pauli_expectation(const std::vector<ShotRecord>& shots,
                           const PauliString& op,
                           const MeasurementSetting& setting) {
  if (op.ops.size() != setting.basis.size())
    throw BasisMismatch("operator length does not match setting");
  std::vector<size_t> supp;
  for (size_t q = 0; q < op.ops.size(); ++q) {
    Pauli p = op.ops[q];
    if (p == Pauli::I) continue;
    MeasBasis b = setting.basis[q];
    bool ok = (p == Pauli::X && b == MeasBasis::X) ||
              (p == Pauli::Z && b == MeasBasis::Z) ||
              (p == Pauli::Y && b == MeasBasis::Y);
    if (!ok)
      throw BasisMismatch("operator not diagonal in setting '" + setting.name +
                          "' at atom " + std::to_string(q));
    supp.push_back(q);
  }
  if (supp.empty())
    throw BasisMismatch("operator has empty support");

  Estimate e;
  e.n_shots = shots.size();
  if (shots.empty()) return e;
  long sum = 0;
  for (auto& s : shots) sum += shot_parity(s, supp) ? -1 : +1;
  e.mean = op.sign * static_cast<double>(sum) / shots.size();
  double var = 1.0 - e.mean * e.mean;
  if (var < 0) var = 0;
  e.stderror = std::sqrt(var / shots.size());
  return e;
}

}  // namespace atomsim
