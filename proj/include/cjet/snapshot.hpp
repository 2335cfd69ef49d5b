#ifndef CJET_SNAPSHOT_HPP
#define CJET_SNAPSHOT_HPP

#include <string>

#include "cjet/dynamics.hpp"

namespace cjet {

// .cjsnap format: one JSON header line
//   {"L":..,"N":..,"time":..,"R":..,"kappa":..,"g":..,"slope":..}
// terminated by '\n', followed by two little-endian IEEE-754 float64 arrays
// of length N: eta, then the periodic psi part.

void write_snapshot(const std::string& path, const JetState& state);
JetState read_snapshot(const std::string& path);

} // namespace cjet

#endif
