#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <deque>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "mapcover/minimal_cover.hpp"
#include "mapcover/monodromy.hpp"
#include "mapcover/periodic_map.hpp"

namespace mapcover {

// A locally finite connected graph presented by a root and a neighbor
// oracle.  Node must be equality-comparable and hashable via G::NodeHash.
template <class G>
concept GraphGen = requires(const G& g, const typename G::Node& n) {
  typename G::Node;
  typename G::NodeHash;
  { g.root() } -> std::convertible_to<typename G::Node>;
  { g.neighbors(n) } -> std::convertible_to<std::vector<typename G::Node>>;
};

// Distance map of the ball of radius R around the root.  Nodes at distance R
// are recorded but not expanded.
template <GraphGen G>
std::unordered_map<typename G::Node, int32_t, typename G::NodeHash>
ball(const G& g, int32_t R, size_t max_nodes = kDefaultElementCap) {
  std::unordered_map<typename G::Node, int32_t, typename G::NodeHash> dist;
  std::deque<typename G::Node> queue;
  dist.emplace(g.root(), 0);
  queue.push_back(g.root());
  while (!queue.empty()) {
    typename G::Node u = queue.front();
    queue.pop_front();
    int32_t d = dist.at(u);
    if (d >= R) continue;
    for (const auto& v : g.neighbors(u)) {
      if (dist.emplace(v, d + 1).second) {
        if (dist.size() > max_nodes) {
          throw CapExceeded("ball exceeded the node cap of " +
                            std::to_string(max_nodes));
        }
        queue.push_back(v);
      }
    }
  }
  return dist;
}

// Number of connected components of the annulus r < d <= R that contain a
// node at distance exactly R.  For graphs marked kAcyclic (trees), distinct
// nodes at distance r+1 head disjoint infinite subtrees, so the probe equals
// the size of sphere r+1 and only a ball of radius r+1 is explored.
template <GraphGen G>
int64_t ends_probe(const G& g, int32_t r, int32_t R,
                   size_t max_nodes = kDefaultElementCap) {
  if (!(0 <= r && r < R)) {
    throw std::invalid_argument("ends_probe requires 0 <= r < R");
  }
  if constexpr (requires { G::kAcyclic; }) {
    if (G::kAcyclic) {
      auto dist = ball(g, r + 1, max_nodes);
      int64_t count = 0;
      for (const auto& [node, d] : dist) {
        if (d == r + 1) ++count;
      }
      return count;
    }
  }
  auto dist = ball(g, R, max_nodes);

  std::vector<typename G::Node> nodes;
  std::unordered_map<typename G::Node, int32_t, typename G::NodeHash> index;
  for (const auto& [node, d] : dist) {
    if (d > r) {
      index.emplace(node, static_cast<int32_t>(nodes.size()));
      nodes.push_back(node);
    }
  }

  std::vector<int32_t> parent(nodes.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int32_t>(i);
  auto find = [&](int32_t x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  };

  for (size_t i = 0; i < nodes.size(); ++i) {
    for (const auto& v : g.neighbors(nodes[i])) {
      auto it = index.find(v);
      if (it != index.end()) unite(static_cast<int32_t>(i), it->second);
    }
  }

  std::unordered_map<int32_t, char> reaches;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (dist.at(nodes[i]) == R) reaches[find(static_cast<int32_t>(i))] = 1;
  }
  return static_cast<int64_t>(reaches.size());
}

struct EndsProbeRow {
  int32_t r = 0;
  int32_t R = 0;
  int64_t components = 0;
};

inline std::vector<std::pair<int32_t, int32_t>> default_probe_schedule() {
  return {{2, 6}, {4, 10}, {6, 14}, {8, 18}};
}

struct OneEndReport {
  std::vector<EndsProbeRow> rows;
  bool pass = false; // every probe found exactly one component
};

template <GraphGen G>
OneEndReport one_end_certificate(
    const G& g,
    const std::vector<std::pair<int32_t, int32_t>>& schedule = default_probe_schedule(),
    size_t max_nodes = kDefaultElementCap) {
  OneEndReport rep;
  rep.pass = true;
  for (auto [r, R] : schedule) {
    int64_t c = ends_probe(g, r, R, max_nodes);
    rep.rows.push_back({r, R, c});
    if (c != 1) rep.pass = false;
  }
  return rep;
}

// Adapter that hides any fast-path markers so the generic annulus probe runs.
template <class G>
struct GenericView {
  const G* inner;
  using Node = typename G::Node;
  using NodeHash = typename G::NodeHash;
  Node root() const { return inner->root(); }
  std::vector<Node> neighbors(const Node& n) const { return inner->neighbors(n); }
};

// ---- graph builders -------------------------------------------------------

struct LineGraph {
  using Node = int64_t;
  struct NodeHash {
    size_t operator()(Node n) const { return std::hash<int64_t>{}(n); }
  };
  Node root() const { return 0; }
  std::vector<Node> neighbors(const Node& n) const { return {n - 1, n + 1}; }
};

struct GridGraph {
  struct Node {
    int32_t x = 0, y = 0;
    bool operator==(const Node&) const = default;
  };
  struct NodeHash {
    size_t operator()(const Node& n) const {
      uint64_t v = (static_cast<uint64_t>(static_cast<uint32_t>(n.x)) << 32) |
                   static_cast<uint32_t>(n.y);
      v *= 0x9e3779b97f4a7c15ull;
      v ^= v >> 32;
      return static_cast<size_t>(v);
    }
  };
  Node root() const { return {0, 0}; }
  std::vector<Node> neighbors(const Node& n) const {
    return {{n.x + 1, n.y}, {n.x - 1, n.y}, {n.x, n.y + 1}, {n.x, n.y - 1}};
  }
};

// Regular tree of degree d >= 3: nodes are reduced words over d involution
// letters, nibble-packed into two 64-bit words (depth up to 31).
struct TreeGraph {
  static constexpr bool kAcyclic = true;
  struct Node {
    uint64_t lo = 0, hi = 0;
    uint32_t len = 0;
    bool operator==(const Node&) const = default;
  };
  struct NodeHash {
    size_t operator()(const Node& n) const {
      uint64_t h = n.lo * 0x9e3779b97f4a7c15ull;
      h ^= (n.hi + 0x9e3779b97f4a7c15ull) + (h << 6) + (h >> 2);
      h ^= n.len * 0xff51afd7ed558ccdull;
      return static_cast<size_t>(h);
    }
  };

  int degree;
  explicit TreeGraph(int d) : degree(d) {
    if (d < 3 || d > 16) {
      throw std::invalid_argument("tree degree must be between 3 and 16");
    }
  }

  static uint32_t letter_at(const Node& n, uint32_t pos) {
    uint64_t w = pos < 16 ? n.lo : n.hi;
    return static_cast<uint32_t>((w >> (4 * (pos & 15))) & 0xf);
  }
  static Node with_letter(Node n, uint32_t pos, uint32_t letter) {
    uint64_t& w = pos < 16 ? n.lo : n.hi;
    w &= ~(0xfull << (4 * (pos & 15)));
    w |= static_cast<uint64_t>(letter) << (4 * (pos & 15));
    return n;
  }

  Node root() const { return {}; }
  std::vector<Node> neighbors(const Node& n) const {
    std::vector<Node> out;
    out.reserve(static_cast<size_t>(degree));
    for (uint32_t l = 0; l < static_cast<uint32_t>(degree); ++l) {
      if (n.len > 0 && letter_at(n, n.len - 1) == l) {
        Node m = with_letter(n, n.len - 1, 0);
        m.len = n.len - 1;
        out.push_back(m);
      } else {
        if (n.len >= 31) throw CapExceeded("tree node depth exceeds 31");
        Node m = with_letter(n, n.len, l);
        m.len = n.len + 1;
        out.push_back(m);
      }
    }
    return out;
  }
};

// Cayley graph of the group <a, b, c | a^2, b^2, c^2, (abc)^2> on the
// bipartite hexagonal lattice: white nodes carry labels into blacks at
// (a,b), (a-1,b), (a,b-1) and back.  Every hexagon reads a,b,c,a,b,c.
struct HexCayleyH {
  struct Node {
    int32_t a = 0, b = 0;
    uint8_t black = 0;
    bool operator==(const Node&) const = default;
  };
  struct NodeHash {
    size_t operator()(const Node& n) const {
      uint64_t v = (static_cast<uint64_t>(static_cast<uint32_t>(n.a)) << 33) ^
                   (static_cast<uint64_t>(static_cast<uint32_t>(n.b)) << 1) ^ n.black;
      v *= 0x9e3779b97f4a7c15ull;
      v ^= v >> 32;
      return static_cast<size_t>(v);
    }
  };

  Node root() const { return {0, 0, 0}; }
  Node labeled_step(const Node& n, int label) const {
    if (n.black == 0) {
      switch (label) {
        case 0: return {n.a, n.b, 1};
        case 1: return {n.a - 1, n.b, 1};
        default: return {n.a, n.b - 1, 1};
      }
    }
    switch (label) {
      case 0: return {n.a, n.b, 0};
      case 1: return {n.a + 1, n.b, 0};
      default: return {n.a, n.b + 1, 0};
    }
  }
  std::vector<Node> neighbors(const Node& n) const {
    return {labeled_step(n, 0), labeled_step(n, 1), labeled_step(n, 2)};
  }
};

template <class G1, class G2>
struct ProductGraph {
  G1 g1;
  G2 g2;
  struct Node {
    typename G1::Node a;
    typename G2::Node b;
    bool operator==(const Node&) const = default;
  };
  struct NodeHash {
    size_t operator()(const Node& n) const {
      size_t h1 = typename G1::NodeHash{}(n.a);
      size_t h2 = typename G2::NodeHash{}(n.b);
      return h1 ^ (h2 * 0x9e3779b97f4a7c15ull + (h1 << 6) + (h1 >> 2));
    }
  };
  Node root() const { return {g1.root(), g2.root()}; }
  std::vector<Node> neighbors(const Node& n) const {
    std::vector<Node> out;
    for (const auto& a : g1.neighbors(n.a)) out.push_back({a, n.b});
    for (const auto& b : g2.neighbors(n.b)) out.push_back({n.a, b});
    return out;
  }
};

// The flag graph of a periodic map as an infinite graph generator.
struct FlagGraphOf {
  PeriodicMap pm;
  using Node = PeriodicFlag;
  using NodeHash = PeriodicFlagHash;
  Node root() const { return {0, 0, 0}; }
  std::vector<Node> neighbors(const Node& n) const {
    return {pm.step(n, 0), pm.step(n, 1), pm.step(n, 2)};
  }
};

// Dual graph of a cover patch: nodes are the complete faces (closed orbits
// of generators 0 and 1), with one edge per shared geometric edge (crossed
// by generator 2).  Probing past the interior region raises CapExceeded, so
// results are exact for the infinite cover.
class DualGraphOf {
public:
  explicit DualGraphOf(const CoverPatch& patch);

  using Node = int32_t;
  struct NodeHash {
    size_t operator()(Node n) const { return std::hash<int32_t>{}(n); }
  };

  Node root() const { return root_; }
  std::vector<Node> neighbors(const Node& f) const;

  size_t complete_face_count() const { return adj_.size(); }
  bool is_interior(Node f) const { return interior_[static_cast<size_t>(f)] != 0; }
  // Complete-face class index of a patch element, or -1.
  int32_t face_of_element(size_t element) const {
    return face_of_[element];
  }

private:
  std::vector<std::vector<int32_t>> adj_; // indexed by complete face id
  std::vector<char> interior_;
  std::vector<int32_t> face_of_;
  int32_t root_ = -1;
};

// Lazily materialized flag graph of the regular hyperbolic tessellation with
// p-gon faces, q around each vertex (requires 1/p + 1/q < 1/2).  Triangles
// are flags; fans close after exactly 2p, 4 and 2q triangles around face,
// edge and vertex corners, which forces every gluing.
class HyperbolicFlagGraph {
public:
  HyperbolicFlagGraph(int p, int q, size_t max_triangles = kDefaultElementCap);

  using Node = int32_t;
  struct NodeHash {
    size_t operator()(Node n) const { return std::hash<int32_t>{}(n); }
  };

  Node root() const { return 0; }
  std::vector<Node> neighbors(const Node& n) const;
  size_t triangle_count() const { return nb_.size(); }
  int64_t fan_length(Node tri, int corner) const; // walks the closed fan

private:
  int32_t resolve(int32_t tri, int side) const;
  int32_t cycle_len(int corner) const;

  int p_, q_;
  size_t cap_;
  mutable std::vector<std::array<int32_t, 3>> nb_;
};

// DOT rendering of the ball of radius R (nodes labelled by distance).
template <GraphGen G>
std::string ball_dot(const G& g, int32_t R, size_t max_nodes = kDefaultElementCap) {
  auto dist = ball(g, R, max_nodes);
  std::unordered_map<typename G::Node, int32_t, typename G::NodeHash> index;
  std::vector<typename G::Node> nodes;
  for (const auto& [node, d] : dist) {
    index.emplace(node, static_cast<int32_t>(nodes.size()));
    nodes.push_back(node);
  }
  std::ostringstream os;
  os << "graph ball {\n";
  for (size_t i = 0; i < nodes.size(); ++i) {
    os << "  n" << i << " [label=\"" << dist.at(nodes[i]) << "\"];\n";
  }
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (dist.at(nodes[i]) >= R) continue;
    for (const auto& v : g.neighbors(nodes[i])) {
      auto it = index.find(v);
      if (it == index.end()) continue;
      // Nodes on the boundary sphere are never expanded, so edges into them
      // print from this side regardless of index order.
      if (static_cast<size_t>(it->second) > i || dist.at(v) >= R) {
        os << "  n" << i << " -- n" << it->second << ";\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

} // namespace mapcover
