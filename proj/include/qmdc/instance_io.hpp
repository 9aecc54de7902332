#pragma once

#include <iosfwd>
#include <string>

#include "qmdc/hamiltonian.hpp"

namespace qmdc {

// Line-oriented instance text format:
//   # comment
//   d <int>
//   n <int>
//   edge <u> <v> <w>
// Vertices are 0-based; weights are decimal doubles.
Instance parse_instance(std::istream& in);
Instance parse_instance_string(const std::string& text);
Instance load_instance(const std::string& path);

void write_instance(const Instance& g, std::ostream& out);
void save_instance(const Instance& g, const std::string& path);

} // namespace qmdc
