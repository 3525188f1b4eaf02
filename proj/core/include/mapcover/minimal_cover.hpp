#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mapcover/flag_system.hpp"
#include "mapcover/monodromy.hpp"

namespace mapcover {

struct CoverResult {
  FlagSystem cover;
  std::vector<int32_t> projection; // cover flag -> base flag
  bool complete = true;
};

// The minimal regular cover of a finite map: flags are the monodromy group
// elements, generator i sends g to g * r_i, and g projects to the image of
// flag 0 under g.  Throws CapExceeded if the group closure outgrows `cap`.
CoverResult finite_cover(const FlagSystem& fs, size_t cap = kDefaultElementCap);

// Tests whether two flag systems are isomorphic (label-preserving).
bool is_isomorphic(const FlagSystem& a, const FlagSystem& b);

// Ball of the monodromy group under the generators {r0, r1, r2}, stored as a
// finite flag complex.  Elements are kept in packed form (nibble-packed orbit
// permutation plus one 5-byte automorphism reference per orbit) so large
// radii stay in memory; edge arrays are optional.
class CoverPatch {
public:
  CoverPatch(const MonodromyContext& ctx, int radius, bool with_edges,
             size_t cap);

  const MonodromyContext& context() const { return *ctx_; }
  int radius() const { return radius_; }
  size_t size() const { return count_; }
  bool has_edges() const { return with_edges_; }

  MonElement element(size_t i) const;
  int32_t dist(size_t i) const { return dist_[i]; }
  // Index of element * r_gen, or -1 when it falls outside the patch.
  int32_t neighbor(size_t i, int gen) const;
  std::optional<size_t> find(const MonElement& e) const;

  size_t memory_bytes() const;

private:
  size_t stride() const { return 8 + 5 * static_cast<size_t>(k_); }
  void pack(const MonElement& e, uint8_t* out) const;
  MonElement unpack(const uint8_t* in) const;
  uint64_t hash_key(const uint8_t* key) const;
  int64_t table_lookup(const uint8_t* key) const; // index or -1
  void table_insert(const uint8_t* key, uint32_t index);
  void rehash();

  const MonodromyContext* ctx_;
  int32_t k_ = 0;
  int radius_ = 0;
  bool with_edges_ = false;
  size_t count_ = 0;
  std::vector<uint8_t> keys_;
  std::vector<int32_t> dist_;
  std::array<std::vector<int32_t>, 3> edges_;
  std::vector<uint32_t> table_; // open addressing, entries are index + 1
  uint64_t table_mask_ = 0;
};

CoverPatch cover_patch(const MonodromyContext& ctx, int radius,
                       bool with_edges = true, size_t cap = kDefaultElementCap);

struct PatchStats {
  int radius = 0;
  int64_t elements = 0;     // triangles of the patch complex
  int64_t vertices = 0;     // corner fans
  int64_t edges = 0;        // matched side pairs plus boundary sides
  int64_t faces = 0;        // = elements
  int64_t chi = 0;
  int64_t boundary_cycles = 0;
  bool orientable = false;
  int64_t genus = 0;        // orientable genus when orientable
  int64_t crosscaps = 0;    // non-orientable genus otherwise
};

// Euler characteristic, boundary and genus of the patch as a compact surface
// with boundary.  Requires a patch built with edges.
PatchStats patch_stats(const CoverPatch& patch);

// lcm of the face sizes and of the vertex degrees.
std::pair<int64_t, int64_t> pq_type(const PeriodicMap& pm);

struct BranchClass {
  int32_t rep_cell = 0; // lowest cell of the class
  int64_t size = 0;     // face size or vertex degree
  int64_t index = 0;    // p / size (faces) or q / degree (vertices)
};

struct BranchOrders {
  int64_t p = 0;
  int64_t q = 0;
  std::vector<BranchClass> faces;    // face classes modulo lattice translations
  std::vector<BranchClass> vertices; // vertex classes modulo lattice translations
};

BranchOrders branch_orders(const PeriodicMap& pm);

// CSV rows "r,elements,chi,boundary,genus" (header included).
std::string patch_csv(const std::vector<PatchStats>& rows);

} // namespace mapcover
