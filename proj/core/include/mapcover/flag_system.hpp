#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mapcover/word.hpp"

namespace mapcover {

// A finite map on a closed surface, given as its set of flags together with
// the three adjacency involutions.  adj[i][f] is the flag differing from f
// in its rank-i component (0 = vertex, 1 = edge, 2 = face).
//
// Instances are plain data; treat them as immutable once built.  All
// operations assume a validated system unless stated otherwise.
struct FlagSystem {
  int32_t n = 0;
  std::array<std::vector<int32_t>, 3> adj;
  // Optional per-flag (vertex, edge, face) ids, filled by the builders.
  std::vector<std::array<int32_t, 3>> labels;
};

struct ValidationReport {
  bool ok = true;
  std::string axiom;    // name of the first violated axiom, empty if ok
  int32_t witness = -1; // a flag witnessing the violation
};

// Checks, in order: array sizes, each adj[i] an involution without fixed
// points, adj[0] and adj[2] commute, products of two distinct involutions
// are fixed-point-free, and the flag graph is connected.
ValidationReport validate(const FlagSystem& fs);

// Applies a word letter by letter: f, f^w0, (f^w0)^w1, ...
int32_t adjacent(const FlagSystem& fs, int32_t flag, const Word& w);

// Orbits of the subgroup generated by the given involutions, as a partition
// of the flags.  Orbits are ordered by their smallest flag; each orbit is
// sorted.  gens must be a non-empty subset of {0,1,2}.
std::vector<std::vector<int32_t>> cell_orbits(const FlagSystem& fs,
                                              const std::vector<int>& gens);

// V - E + F with V = #orbits{1,2}, E = #orbits{0,2}, F = #orbits{0,1}.
int64_t euler_characteristic(const FlagSystem& fs);

// True iff the flag graph is bipartite (every adjacency swaps sides).
bool is_orientable(const FlagSystem& fs);

// Builds a flag system from polygonal faces given as cyclic vertex loops.
// Vertices are 0..n_vertices-1, edges are derived as unordered vertex pairs,
// and every edge must occur in exactly two faces.  Loops must be simple.
FlagSystem build_from_faces(int n_vertices,
                            const std::vector<std::vector<int32_t>>& faces);

FlagSystem cube();
FlagSystem triangular_prism();

// Quotient by a fixed-point-free involution on flags that commutes with all
// three adjacencies and identifies no flag with one of its neighbours.
FlagSystem quotient_by_involution(const FlagSystem& fs,
                                  const std::vector<int32_t>& invol);

// The antipodal quotient of the cube: 24 flags on the projective plane.
FlagSystem hemi_cube();

std::string to_json(const FlagSystem& fs);
FlagSystem flag_system_from_json(std::string_view text);

// GraphViz output of the flag graph; edges carry label 0, 1 or 2.
std::string to_dot(const FlagSystem& fs);

} // namespace mapcover
