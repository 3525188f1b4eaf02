#include "mapcover/ends.hpp"

#include <unordered_map>

#include "uf.hpp"

namespace mapcover {

using detail::UnionFind;

DualGraphOf::DualGraphOf(const CoverPatch& patch) {
  const size_t n = patch.size();
  UnionFind uf(n);
  std::vector<std::array<int32_t, 3>> nb(n);
  for (size_t i = 0; i < n; ++i) {
    for (int s = 0; s < 3; ++s) {
      nb[i][static_cast<size_t>(s)] = patch.neighbor(i, s);
    }
    for (int s = 0; s < 2; ++s) {
      if (nb[i][static_cast<size_t>(s)] >= 0) {
        uf.unite(static_cast<int32_t>(i), nb[i][static_cast<size_t>(s)]);
      }
    }
  }

  // A face class is complete when it is closed under generators 0 and 1.
  std::unordered_map<int32_t, char> complete_root;
  for (size_t i = 0; i < n; ++i) {
    int32_t r = uf.find(static_cast<int32_t>(i));
    auto [it, fresh] = complete_root.emplace(r, 1);
    if (nb[i][0] < 0 || nb[i][1] < 0) it->second = 0;
    (void)fresh;
  }

  face_of_.assign(n, -1);
  std::unordered_map<int32_t, int32_t> id_of_root;
  std::vector<std::vector<int32_t>> members;
  for (size_t i = 0; i < n; ++i) {
    int32_t r = uf.find(static_cast<int32_t>(i));
    if (!complete_root.at(r)) continue;
    auto [it, fresh] = id_of_root.emplace(r, static_cast<int32_t>(members.size()));
    if (fresh) members.emplace_back();
    face_of_[i] = it->second;
    members[static_cast<size_t>(it->second)].push_back(static_cast<int32_t>(i));
  }

  const int64_t p = pq_type(patch.context().map()).first;
  adj_.resize(members.size());
  interior_.assign(members.size(), 1);
  for (size_t f = 0; f < members.size(); ++f) {
    if (static_cast<int64_t>(members[f].size()) != 2 * p) {
      throw std::logic_error("complete cover face with " +
                             std::to_string(members[f].size()) + " flags, expected " +
                             std::to_string(2 * p));
    }
    for (int32_t i : members[f]) {
      int32_t j2 = nb[static_cast<size_t>(i)][2];
      if (j2 < 0 || face_of_[static_cast<size_t>(j2)] < 0) {
        interior_[f] = 0;
        continue;
      }
      // One dual edge per geometric edge: each edge contributes the flag pair
      // {i, i*r0} on this side, so record it from the smaller index only.
      if (i < nb[static_cast<size_t>(i)][0]) {
        adj_[f].push_back(face_of_[static_cast<size_t>(j2)]);
      }
    }
  }

  if (n == 0 || face_of_[0] < 0) {
    throw std::invalid_argument(
        "dual graph needs a patch radius large enough to close the identity face");
  }
  root_ = face_of_[0];
}

std::vector<DualGraphOf::Node> DualGraphOf::neighbors(const Node& f) const {
  if (!interior_[static_cast<size_t>(f)]) {
    throw CapExceeded(
        "dual graph probe reached an incomplete face; increase the patch radius");
  }
  return adj_[static_cast<size_t>(f)];
}

HyperbolicFlagGraph::HyperbolicFlagGraph(int p, int q, size_t max_triangles)
    : p_(p), q_(q), cap_(max_triangles) {
  if (p < 3 || q < 3) {
    throw std::invalid_argument("tessellation parameters must be at least 3");
  }
  if (2 * (p + q) >= p * q) {
    throw std::invalid_argument(
        "tessellation is not hyperbolic: requires 1/p + 1/q < 1/2");
  }
  nb_.push_back({-1, -1, -1});
}

int32_t HyperbolicFlagGraph::cycle_len(int corner) const {
  // Fans alternate the two generators that keep the corner's cell: vertex
  // corners close after 2q triangles, edge corners after 4, face corners
  // after 2p.
  if (corner == 0) return 2 * q_;
  if (corner == 1) return 4;
  return 2 * p_;
}

int32_t HyperbolicFlagGraph::resolve(int32_t tri, int side) const {
  if (nb_[static_cast<size_t>(tri)][static_cast<size_t>(side)] >= 0) {
    return nb_[static_cast<size_t>(tri)][static_cast<size_t>(side)];
  }
  // If either corner fan of this side already holds the full cycle of
  // triangles, the open ends must be glued; otherwise the neighbor does not
  // exist yet and is spawned.
  for (int t = 0; t < 3; ++t) {
    if (t == side) continue;
    int out = 3 - t - side; // the other side at corner t
    int32_t cur = tri;
    int32_t cnt = 1;
    while (nb_[static_cast<size_t>(cur)][static_cast<size_t>(out)] >= 0) {
      cur = nb_[static_cast<size_t>(cur)][static_cast<size_t>(out)];
      out = 3 - t - out;
      ++cnt;
      if (cnt > cycle_len(t)) {
        throw std::logic_error("tessellation fan exceeded its cycle length");
      }
    }
    if (cnt == cycle_len(t)) {
      if (out != side) {
        throw std::logic_error("tessellation fan closed on mismatched side labels");
      }
      nb_[static_cast<size_t>(tri)][static_cast<size_t>(side)] = cur;
      nb_[static_cast<size_t>(cur)][static_cast<size_t>(out)] = tri;
      return cur;
    }
  }
  if (nb_.size() >= cap_) {
    throw CapExceeded("tessellation exceeded the triangle cap of " +
                      std::to_string(cap_));
  }
  int32_t id = static_cast<int32_t>(nb_.size());
  nb_.push_back({-1, -1, -1});
  nb_[static_cast<size_t>(id)][static_cast<size_t>(side)] = tri;
  nb_[static_cast<size_t>(tri)][static_cast<size_t>(side)] = id;
  return id;
}

std::vector<HyperbolicFlagGraph::Node> HyperbolicFlagGraph::neighbors(
    const Node& n) const {
  if (n < 0 || static_cast<size_t>(n) >= nb_.size()) {
    throw std::out_of_range("unknown tessellation triangle");
  }
  return {resolve(n, 0), resolve(n, 1), resolve(n, 2)};
}

int64_t HyperbolicFlagGraph::fan_length(Node tri, int corner) const {
  int first = -1;
  for (int s = 0; s < 3; ++s) {
    if (s != corner) {
      first = s;
      break;
    }
  }
  int32_t cur = tri;
  int out = first;
  int64_t cnt = 0;
  do {
    cur = resolve(cur, out);
    out = 3 - corner - out;
    ++cnt;
    if (cnt > 4 * static_cast<int64_t>(cycle_len(corner))) {
      throw std::logic_error("fan walk failed to close");
    }
  } while (!(cur == tri && out == first));
  return cnt;
}

} // namespace mapcover
