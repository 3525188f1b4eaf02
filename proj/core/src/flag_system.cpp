#include "mapcover/flag_system.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mapcover {

ValidationReport validate(const FlagSystem& fs) {
  ValidationReport rep;
  auto fail = [&](const std::string& axiom, int32_t witness) {
    rep.ok = false;
    rep.axiom = axiom;
    rep.witness = witness;
    return rep;
  };

  if (fs.n <= 0) return fail("nonempty", -1);
  for (int i = 0; i < 3; ++i) {
    if (static_cast<int32_t>(fs.adj[i].size()) != fs.n) return fail("sizes", -1);
    for (int32_t f = 0; f < fs.n; ++f) {
      int32_t g = fs.adj[i][f];
      if (g < 0 || g >= fs.n) return fail("range", f);
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int32_t f = 0; f < fs.n; ++f) {
      if (fs.adj[i][f] == f) return fail("involution_fixed_point_" + std::to_string(i), f);
      if (fs.adj[i][fs.adj[i][f]] != f) return fail("involution_" + std::to_string(i), f);
    }
  }
  for (int32_t f = 0; f < fs.n; ++f) {
    if (fs.adj[0][fs.adj[2][f]] != fs.adj[2][fs.adj[0][f]])
      return fail("commute_02", f);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      for (int32_t f = 0; f < fs.n; ++f) {
        if (fs.adj[j][fs.adj[i][f]] == f)
          return fail("product_fixed_point_" + std::to_string(i) + std::to_string(j), f);
      }
    }
  }
  // Connectivity.
  std::vector<char> seen(static_cast<size_t>(fs.n), 0);
  std::queue<int32_t> q;
  q.push(0);
  seen[0] = 1;
  int32_t count = 1;
  while (!q.empty()) {
    int32_t f = q.front();
    q.pop();
    for (int i = 0; i < 3; ++i) {
      int32_t g = fs.adj[i][f];
      if (!seen[g]) {
        seen[g] = 1;
        ++count;
        q.push(g);
      }
    }
  }
  if (count != fs.n) return fail("connected", -1);
  return rep;
}

int32_t adjacent(const FlagSystem& fs, int32_t flag, const Word& w) {
  int32_t f = flag;
  for (uint8_t l : w.letters()) f = fs.adj[l][f];
  return f;
}

std::vector<std::vector<int32_t>> cell_orbits(const FlagSystem& fs,
                                              const std::vector<int>& gens) {
  if (gens.empty()) throw std::invalid_argument("cell_orbits: empty generator set");
  std::vector<char> seen(static_cast<size_t>(fs.n), 0);
  std::vector<std::vector<int32_t>> orbits;
  for (int32_t f0 = 0; f0 < fs.n; ++f0) {
    if (seen[f0]) continue;
    std::vector<int32_t> orbit;
    std::queue<int32_t> q;
    q.push(f0);
    seen[f0] = 1;
    while (!q.empty()) {
      int32_t f = q.front();
      q.pop();
      orbit.push_back(f);
      for (int i : gens) {
        int32_t g = fs.adj[i][f];
        if (!seen[g]) {
          seen[g] = 1;
          q.push(g);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

int64_t euler_characteristic(const FlagSystem& fs) {
  int64_t v = static_cast<int64_t>(cell_orbits(fs, {1, 2}).size());
  int64_t e = static_cast<int64_t>(cell_orbits(fs, {0, 2}).size());
  int64_t f = static_cast<int64_t>(cell_orbits(fs, {0, 1}).size());
  return v - e + f;
}

bool is_orientable(const FlagSystem& fs) {
  std::vector<int8_t> color(static_cast<size_t>(fs.n), -1);
  std::queue<int32_t> q;
  color[0] = 0;
  q.push(0);
  while (!q.empty()) {
    int32_t f = q.front();
    q.pop();
    for (int i = 0; i < 3; ++i) {
      int32_t g = fs.adj[i][f];
      if (color[g] < 0) {
        color[g] = static_cast<int8_t>(1 - color[f]);
        q.push(g);
      } else if (color[g] == color[f]) {
        return false;
      }
    }
  }
  return true;
}

FlagSystem build_from_faces(int n_vertices,
                            const std::vector<std::vector<int32_t>>& faces) {
  // Edge ids from unordered vertex pairs.
  std::map<std::pair<int32_t, int32_t>, int32_t> edge_id;
  auto edge_key = [](int32_t a, int32_t b) {
    return std::make_pair(std::min(a, b), std::max(a, b));
  };
  for (const auto& loop : faces) {
    if (loop.size() < 3) throw std::invalid_argument("face with fewer than 3 vertices");
    for (size_t i = 0; i < loop.size(); ++i) {
      int32_t a = loop[i];
      int32_t b = loop[(i + 1) % loop.size()];
      if (a < 0 || a >= n_vertices || b < 0 || b >= n_vertices)
        throw std::invalid_argument("face references unknown vertex");
      if (a == b) throw std::invalid_argument("degenerate face edge");
      auto key = edge_key(a, b);
      if (!edge_id.count(key)) edge_id.emplace(key, static_cast<int32_t>(edge_id.size()));
    }
  }

  // Two flags per (face, boundary edge): one per endpoint.
  FlagSystem fs;
  std::map<std::array<int32_t, 3>, int32_t> flag_id; // (v, e, f) -> id
  for (int32_t fi = 0; fi < static_cast<int32_t>(faces.size()); ++fi) {
    const auto& loop = faces[fi];
    for (size_t i = 0; i < loop.size(); ++i) {
      int32_t a = loop[i];
      int32_t b = loop[(i + 1) % loop.size()];
      int32_t e = edge_id.at(edge_key(a, b));
      for (int32_t v : {a, b}) {
        std::array<int32_t, 3> lab{v, e, fi};
        if (flag_id.count(lab)) throw std::invalid_argument("face loop visits an edge twice");
        flag_id.emplace(lab, static_cast<int32_t>(flag_id.size()));
        fs.labels.push_back(lab);
      }
    }
  }
  fs.n = static_cast<int32_t>(fs.labels.size());
  for (int i = 0; i < 3; ++i) fs.adj[i].assign(static_cast<size_t>(fs.n), -1);

  // adj0: swap endpoint within the same (edge, face).
  // adj1: swap edge within the same (vertex, face).
  // adj2: swap face within the same (vertex, edge).
  std::map<std::pair<int32_t, int32_t>, std::vector<int32_t>> by_ef, by_vf, by_ve;
  for (int32_t f = 0; f < fs.n; ++f) {
    auto [v, e, fc] = fs.labels[static_cast<size_t>(f)];
    by_ef[{e, fc}].push_back(f);
    by_vf[{v, fc}].push_back(f);
    by_ve[{v, e}].push_back(f);
  }
  auto pair_up = [&](const auto& groups, int which, const char* what) {
    for (const auto& [key, flags] : groups) {
      if (flags.size() != 2)
        throw std::invalid_argument(std::string("incidence not paired for ") + what);
      fs.adj[which][flags[0]] = flags[1];
      fs.adj[which][flags[1]] = flags[0];
    }
  };
  pair_up(by_ef, 0, "(edge,face)");
  pair_up(by_vf, 1, "(vertex,face)");
  pair_up(by_ve, 2, "(vertex,edge)");
  return fs;
}

FlagSystem cube() {
  // Vertices are bit-coded (x,y,z) corners, faces listed with outward loops.
  std::vector<std::vector<int32_t>> faces = {
      {0, 1, 3, 2}, // z = 0
      {4, 6, 7, 5}, // z = 1
      {0, 4, 5, 1}, // y = 0
      {2, 3, 7, 6}, // y = 1
      {0, 2, 6, 4}, // x = 0
      {1, 5, 7, 3}, // x = 1
  };
  return build_from_faces(8, faces);
}

FlagSystem triangular_prism() {
  std::vector<std::vector<int32_t>> faces = {
      {0, 1, 2},
      {5, 4, 3},
      {0, 3, 4, 1},
      {1, 4, 5, 2},
      {2, 5, 3, 0},
  };
  return build_from_faces(6, faces);
}

FlagSystem quotient_by_involution(const FlagSystem& fs,
                                  const std::vector<int32_t>& invol) {
  if (static_cast<int32_t>(invol.size()) != fs.n)
    throw std::invalid_argument("involution size mismatch");
  for (int32_t f = 0; f < fs.n; ++f) {
    if (invol[f] == f) throw std::invalid_argument("involution has a fixed flag");
    if (invol[invol[f]] != f) throw std::invalid_argument("not an involution");
    for (int i = 0; i < 3; ++i) {
      if (invol[fs.adj[i][f]] != fs.adj[i][invol[f]])
        throw std::invalid_argument("involution does not commute with adjacency");
      if (invol[f] == fs.adj[i][f])
        throw std::invalid_argument("involution identifies adjacent flags");
    }
  }
  std::vector<int32_t> cls(static_cast<size_t>(fs.n), -1);
  int32_t m = 0;
  for (int32_t f = 0; f < fs.n; ++f) {
    if (cls[f] < 0) {
      cls[f] = m;
      cls[invol[f]] = m;
      ++m;
    }
  }
  FlagSystem out;
  out.n = m;
  for (int i = 0; i < 3; ++i) out.adj[i].assign(static_cast<size_t>(m), -1);
  for (int32_t f = 0; f < fs.n; ++f) {
    for (int i = 0; i < 3; ++i) out.adj[i][cls[f]] = cls[fs.adj[i][f]];
  }
  return out;
}

FlagSystem hemi_cube() {
  FlagSystem c = cube();
  // Antipode on bit-coded vertices is complement; faces pair as listed in
  // cube() (0,1), (2,3), (4,5); edges pair via their endpoint pairs.
  std::map<std::array<int32_t, 3>, int32_t> flag_id;
  for (int32_t f = 0; f < c.n; ++f) flag_id.emplace(c.labels[static_cast<size_t>(f)], f);

  // Recover each edge's endpoints from the labels.
  std::map<int32_t, std::pair<int32_t, int32_t>> edge_ends;
  for (int32_t f = 0; f < c.n; ++f) {
    auto [v, e, fc] = c.labels[static_cast<size_t>(f)];
    auto it = edge_ends.find(e);
    if (it == edge_ends.end()) {
      edge_ends.emplace(e, std::make_pair(v, v));
    } else {
      if (it->second.first != v) it->second.second = v;
    }
  }
  std::map<std::pair<int32_t, int32_t>, int32_t> edge_by_ends;
  for (auto& [e, ends] : edge_ends) {
    auto mn = std::min(ends.first, ends.second);
    auto mx = std::max(ends.first, ends.second);
    edge_by_ends.emplace(std::make_pair(mn, mx), e);
  }

  std::vector<int32_t> invol(static_cast<size_t>(c.n));
  for (int32_t f = 0; f < c.n; ++f) {
    auto [v, e, fc] = c.labels[static_cast<size_t>(f)];
    int32_t av = 7 - v;
    auto ends = edge_ends.at(e);
    int32_t a0 = 7 - ends.first, a1 = 7 - ends.second;
    int32_t ae = edge_by_ends.at({std::min(a0, a1), std::max(a0, a1)});
    int32_t af = fc ^ 1;
    invol[f] = flag_id.at({av, ae, af});
  }
  return quotient_by_involution(c, invol);
}

std::string to_json(const FlagSystem& fs) {
  nlohmann::json j;
  j["n"] = fs.n;
  j["adj0"] = fs.adj[0];
  j["adj1"] = fs.adj[1];
  j["adj2"] = fs.adj[2];
  if (!fs.labels.empty()) {
    nlohmann::json labs = nlohmann::json::array();
    for (const auto& l : fs.labels) labs.push_back({l[0], l[1], l[2]});
    j["labels"] = labs;
  }
  return j.dump(2);
}

FlagSystem flag_system_from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FlagSystem fs;
  fs.n = j.at("n").get<int32_t>();
  fs.adj[0] = j.at("adj0").get<std::vector<int32_t>>();
  fs.adj[1] = j.at("adj1").get<std::vector<int32_t>>();
  fs.adj[2] = j.at("adj2").get<std::vector<int32_t>>();
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) {
      fs.labels.push_back({l.at(0).get<int32_t>(), l.at(1).get<int32_t>(),
                           l.at(2).get<int32_t>()});
    }
  }
  return fs;
}

std::string to_dot(const FlagSystem& fs) {
  std::ostringstream os;
  os << "graph flags {\n";
  for (int32_t f = 0; f < fs.n; ++f) {
    for (int i = 0; i < 3; ++i) {
      int32_t g = fs.adj[i][f];
      if (f < g) os << "  " << f << " -- " << g << " [label=" << i << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

} // namespace mapcover
