#pragma once

#include <string>

#include "atomsim/types.hpp"

namespace atomsim {

// Circuit files: JSON with fields
//   {name, atoms:[{id,trap,row,col,x,y}], layers:[{kind,...}]}
// positions in micrometers, durations in microseconds, angles in radians.
std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);
Circuit load_circuit(const std::string& path);
void save_circuit(const Circuit& c, const std::string& path);

}  // namespace atomsim
