#pragma once

#include <string>
#include <vector>

#include "mapcover/periodic_map.hpp"

namespace mapcover {

// The eleven vertex-transitive plane tilings, by vertex configuration.
const std::vector<std::string>& tiling_names();

// "3.6.3.6" -> {3, 6, 3, 6}.
std::vector<int> parse_vertex_config(const std::string& name);

// Builds the named tiling from the stored fixture tables (generated once by
// the geometric constructor in the test suite).  The result is validated and
// its vertex figures are checked against the name before returning.
PeriodicMap build_tiling(const std::string& name);

bool is_tiling_name(const std::string& name);

// True for the three regular tilings 4.4.4.4, 3.3.3.3.3.3, 6.6.6.
bool is_regular_tiling(const std::string& name);

} // namespace mapcover
