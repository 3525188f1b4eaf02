#pragma once

// Geometric construction of the eleven vertex-transitive unit-edge tilings:
// faces are placed by exact coordinates in Q(sqrt2, sqrt3), the translation
// lattice is detected from the grown patch, and the flag classes modulo the
// lattice are read off to produce a PeriodicMap.  Serves as the independent
// oracle for the shipped tiling tables.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mapcover/periodic_map.hpp"
#include "qfield.hpp"

namespace tiling_oracle {

struct Corner {
  int start = 0;  // outgoing edge direction, units of 15 degrees
  int width = 0;  // interior angle in units
  int32_t face = -1;
};

struct OVertex {
  Vec2 pos;
  std::vector<Corner> corners; // sorted by start
  int width_sum = 0;
  bool complete() const { return width_sum == 24; }
};

struct OFace {
  int size = 0;
  std::vector<int32_t> verts; // boundary, counterclockwise
  std::vector<int> dirs;      // outgoing direction at verts[i]
};

struct World {
  std::vector<OVertex> verts;
  std::vector<OFace> faces;
  std::unordered_map<Vec2, int32_t, Vec2Hash> pos_index;
  // (vertex, outgoing direction) -> face with that boundary half-edge
  std::map<std::pair<int32_t, int>, int32_t> half_edge;
  // (min vid, max vid) -> adjacent faces
  std::map<std::pair<int32_t, int32_t>, std::vector<int32_t>> edge_faces;
};

enum class PlaceResult { kPlaced, kAlreadyThere, kConflict };

class TilingGrower {
public:
  explicit TilingGrower(std::vector<int> config);

  // Completes every vertex within `radius` of the origin; places faces by
  // forced propagation and branches with backtracking on ambiguity.
  void grow(double radius);

  const World& world() const { return world_; }
  const std::vector<int>& config() const { return config_; }

  // Detected translation basis (shortest and shortest independent).
  std::pair<Vec2, Vec2> lattice_basis() const;

  // Flag classes modulo the detected lattice as a periodic map.
  mapcover::PeriodicMap quotient(const std::string& name) const;

private:
  PlaceResult place_face(int32_t v0, int dir0, int size);
  int32_t vertex_at(const Vec2& p); // existing or newly created

  struct Arc {
    int end_dir = 0;              // direction where the next corner starts
    std::vector<int> candidates;  // possible sizes of the next face
  };
  std::vector<Arc> arcs_of(int32_t v) const;

  std::vector<int> config_;
  // All rotations of the configuration and of its reversal: the readings a
  // vertex figure may present.
  std::vector<std::vector<int>> readings_;
  World world_;
  std::vector<int32_t> worklist_;
};

// Convenience: grow, quotient and validate one tiling by name.
mapcover::PeriodicMap oracle_tiling(const std::string& name, double radius = 10.0);

// Renders a fixture table for all the given tilings as a C++ include file.
std::string render_fixture_table(const std::vector<std::string>& names);

} // namespace tiling_oracle
