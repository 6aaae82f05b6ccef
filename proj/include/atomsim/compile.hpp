#pragma once

#include <map>
#include <string>
#include <vector>

#include "atomsim/codes.hpp"
#include "atomsim/types.hpp"

namespace atomsim {

// A code operator reduced to a readout observable: its shot estimate is
// sign * (-1)^(bit parity over support). The sign correction folds in the
// echo pulses (conjugated symbolically through the rest of the circuit) and
// the measurement-rotation direction; it is computed at compile time, never
// hardcoded.
struct MeasuredObservable {
  std::string name;
  char type = 'x';         // stabilizer type / which logical component
  bool is_logical = false;
  int logical_index = -1;
  PauliString code_op;     // operator in the code basis, sign +1
  std::vector<size_t> support;
  int sign = +1;
  Setting setting = Setting::Xside;
};

struct CompiledCircuit {
  Circuit circuit;
  Setting setting = Setting::Xside;
  MeasurementSetting meas;                 // per-atom readout basis, code frame
  std::vector<MeasuredObservable> stabilizers;
  std::vector<MeasuredObservable> logicals_x;  // X_L-type, this setting only
  std::vector<MeasuredObservable> logicals_z;  // Z_L-type, this setting only
};

using Layout = std::map<int, std::array<double, 2>>;  // atom id -> position

Layout default_layout(const CodeSpec& code);

// Build the full preparation + measurement circuit for one setting:
// |+>^N init, the shipped CZ layers with echo pulses between consecutive
// layers (and after the last when the count is odd), Move stages between
// layers, the sublattice rotation for the setting, and a final Z readout.
CompiledCircuit compile_code_circuit(const CodeSpec& code, const Layout& layout,
                                     Setting setting);

// Echo frame of a compiled circuit: the product of all echo pulses
// conjugated forward to the end of the circuit (symbols only).
PauliOp echo_frame(const Circuit& c);

// Sign correction for one code-basis operator under a compiled circuit;
// throws BasisMismatch when the operator is not measurable in the setting.
int measured_sign(const CodeSpec& code, const Circuit& circuit,
                  Setting setting, const PauliString& op);

}  // namespace atomsim
