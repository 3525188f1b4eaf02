#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mapcover/flag_system.hpp"
#include "mapcover/word.hpp"

namespace mapcover {

// A flag of a lattice-periodic planar map: a flag class of the fundamental
// cell plus an integer translation.
struct PeriodicFlag {
  int32_t cell = 0;
  int32_t tx = 0;
  int32_t ty = 0;

  bool operator==(const PeriodicFlag&) const = default;
};

struct PeriodicFlagHash {
  size_t operator()(const PeriodicFlag& f) const {
    uint64_t h = static_cast<uint32_t>(f.cell);
    h = h * 0x9e3779b97f4a7c15ull + static_cast<uint32_t>(f.tx);
    h = h * 0x9e3779b97f4a7c15ull + static_cast<uint32_t>(f.ty);
    return static_cast<size_t>(h ^ (h >> 32));
  }
};

// A periodic planar map with m flag classes per fundamental cell.  The three
// adjacencies act on classes and carry lattice offsets:
// (c, t) ^ r_i = (cell_to[i][c], t + dt[i][c]).
struct PeriodicMap {
  int32_t m = 0;
  std::string name;
  std::array<std::vector<int32_t>, 3> cell_to;
  std::array<std::vector<std::array<int32_t, 2>>, 3> dt;

  PeriodicFlag step(PeriodicFlag f, int gen) const {
    const auto& d = dt[gen][f.cell];
    return {cell_to[gen][f.cell], f.tx + d[0], f.ty + d[1]};
  }
};

PeriodicFlag padjacent(const PeriodicMap& pm, PeriodicFlag f, const Word& w);

// Same axioms as for finite flag systems, adapted to the infinite graph.
// Connectivity is decided exactly: the cell graph must be connected and the
// closed-walk offsets must generate the full translation lattice.
ValidationReport validate(const PeriodicMap& pm);

// Size of the face through f: the order of the rotation r0 r1 at f.
int face_size(const PeriodicMap& pm, PeriodicFlag f, int cap = 64);
// Degree of the vertex through f: the order of the rotation r1 r2 at f.
int vertex_degree(const PeriodicMap& pm, PeriodicFlag f, int cap = 64);
// Sizes of the faces around the vertex of f, in rotational order.
std::vector<int> vertex_figure(const PeriodicMap& pm, PeriodicFlag f);

// True iff `figure` equals `config` as a cyclic sequence, up to rotation and
// reversal.
bool figure_matches(const std::vector<int>& figure, const std::vector<int>& config);

// An automorphism of the periodic map.  Every automorphism acts affinely on
// the lattice encoding: (c, t) |-> (cell_image[c], shift[c] + L t), with L a
// determinant +-1 integer matrix (row-major in `lin`).  An automorphism is
// determined by the image of any single flag.
struct Automorphism {
  std::vector<int32_t> cell_image;
  std::vector<std::array<int32_t, 2>> shift;
  std::array<int32_t, 4> lin{1, 0, 0, 1};

  PeriodicFlag apply(PeriodicFlag f) const {
    return {cell_image[f.cell],
            shift[f.cell][0] + lin[0] * f.tx + lin[1] * f.ty,
            shift[f.cell][1] + lin[2] * f.tx + lin[3] * f.ty};
  }

  // Image of the base flag (0, (0,0)); determines the automorphism.
  PeriodicFlag pivot() const { return apply({0, 0, 0}); }

  bool is_identity() const;
  // Pure lattice translation: identity on cells with L = I.
  bool is_translation() const;
  std::array<int32_t, 2> translation() const { return shift[0]; }

  // this after other: (this o other)(f) = this(other(f)).
  Automorphism compose_after(const Automorphism& other) const;
  Automorphism inverse() const;

  bool operator==(const Automorphism&) const = default;
};

// The unique automorphism mapping src to dst, if one exists.  The candidate
// assignment is propagated over a (2*window+1)^2-cell block around src and
// accepted only if it is conflict-free, translation-equivariant with an
// invertible linear part, and bijective on cells; those conditions make the
// affine extension a global automorphism, so the window check is exact.
std::optional<Automorphism> automorphism_from(const PeriodicMap& pm,
                                              PeriodicFlag src,
                                              PeriodicFlag dst,
                                              int window = 1);

struct AutOrbits {
  int32_t k = 0;                      // number of orbits
  std::vector<int32_t> orbit_of_cell; // cell -> orbit index
  std::vector<int32_t> rep_cell;      // orbit -> lowest cell in it
};

// Orbits of the automorphism group on flags, as a partition of the cells
// (translations identify all offsets of a class).  Orbits are indexed by
// their lowest cell.
AutOrbits aut_orbits(const PeriodicMap& pm);

// Finite quotient by the sublattice k Z x l Z; a torus map when valid.
FlagSystem torus_quotient(const PeriodicMap& pm, int k, int l);

std::string to_json(const PeriodicMap& pm);
PeriodicMap periodic_map_from_json(std::string_view text);

bool operator==(const PeriodicMap& a, const PeriodicMap& b);

} // namespace mapcover
