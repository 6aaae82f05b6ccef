#pragma once

#include <vector>

#include "atomsim/codes.hpp"
#include "atomsim/pauli.hpp"

namespace atomsim {

// Per-stabilizer outcomes in {+1,-1}, ordered like code.stabilizers.
struct Syndrome {
  std::vector<int> values;
};

// Decode a syndrome to a Pauli correction on the data qubits.
//  * SteaneLookup maps each nonzero 3-bit syndrome of one type to the unique
//    single-qubit correction of the opposite type.
//  * MWPM pairs the -1 stabilizers with exact minimum-weight matching over
//    the code's qubit-sharing graph. Planar codes include a boundary vertex;
//    periodic codes reconstruct the one dropped generator from the group
//    relation instead. Ambiguous minimum-weight matchings never flip a
//    logical readout.
PauliString decode(const Syndrome& syndrome, const CodeSpec& code);

}  // namespace atomsim
