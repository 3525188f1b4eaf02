#include "mapcover/periodic_map.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mapcover {

PeriodicFlag padjacent(const PeriodicMap& pm, PeriodicFlag f, const Word& w) {
  for (uint8_t l : w.letters()) f = pm.step(f, l);
  return f;
}

namespace {

// Index of the sublattice of Z^2 generated by `vecs` (0 if rank < 2).
int64_t lattice_index(std::vector<std::array<int64_t, 2>> vecs) {
  // Gaussian elimination over Z: bring to upper triangular via gcd steps.
  std::array<int64_t, 2> a{0, 0}, b{0, 0}; // rows of the reduced basis
  for (auto v : vecs) {
    // Reduce the x component of v against a.
    while (v[0] != 0) {
      if (a[0] == 0) {
        std::swap(a, v);
        continue;
      }
      int64_t q = v[0] / a[0];
      v[0] -= q * a[0];
      v[1] -= q * a[1];
      if (v[0] != 0) std::swap(a, v);
    }
    // v is now (0, y); fold into b by gcd on y.
    if (v[1] != 0) b[1] = std::gcd(b[1], std::abs(v[1]));
    // Keep a's y reduced against b for stability (not required for the index).
  }
  if (a[0] == 0 || b[1] == 0) return 0;
  return std::abs(a[0]) * b[1];
}

} // namespace

ValidationReport validate(const PeriodicMap& pm) {
  ValidationReport rep;
  auto fail = [&](const std::string& axiom, int32_t witness) {
    rep.ok = false;
    rep.axiom = axiom;
    rep.witness = witness;
    return rep;
  };

  if (pm.m <= 0) return fail("nonempty", -1);
  for (int i = 0; i < 3; ++i) {
    if (static_cast<int32_t>(pm.cell_to[i].size()) != pm.m ||
        static_cast<int32_t>(pm.dt[i].size()) != pm.m)
      return fail("sizes", -1);
    for (int32_t c = 0; c < pm.m; ++c) {
      if (pm.cell_to[i][c] < 0 || pm.cell_to[i][c] >= pm.m) return fail("range", c);
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int32_t c = 0; c < pm.m; ++c) {
      PeriodicFlag f{c, 0, 0};
      PeriodicFlag g = pm.step(f, i);
      if (g == f) return fail("involution_fixed_point_" + std::to_string(i), c);
      if (pm.step(g, i) != f) return fail("involution_" + std::to_string(i), c);
    }
  }
  for (int32_t c = 0; c < pm.m; ++c) {
    PeriodicFlag f{c, 0, 0};
    if (pm.step(pm.step(f, 0), 2) != pm.step(pm.step(f, 2), 0))
      return fail("commute_02", c);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      for (int32_t c = 0; c < pm.m; ++c) {
        PeriodicFlag f{c, 0, 0};
        if (pm.step(pm.step(f, i), j) == f)
          return fail("product_fixed_point_" + std::to_string(i) + std::to_string(j), c);
      }
    }
  }

  // Connectivity of the infinite flag graph: the cell graph must be
  // connected, and the offsets of its closed walks must generate all of Z^2.
  std::vector<char> seen(static_cast<size_t>(pm.m), 0);
  std::vector<std::array<int64_t, 2>> potential(static_cast<size_t>(pm.m), {0, 0});
  std::vector<std::array<int64_t, 2>> cycles;
  std::queue<int32_t> q;
  seen[0] = 1;
  q.push(0);
  int32_t count = 1;
  while (!q.empty()) {
    int32_t c = q.front();
    q.pop();
    for (int i = 0; i < 3; ++i) {
      int32_t c2 = pm.cell_to[i][c];
      std::array<int64_t, 2> p2{potential[c][0] + pm.dt[i][c][0],
                                potential[c][1] + pm.dt[i][c][1]};
      if (!seen[c2]) {
        seen[c2] = 1;
        potential[c2] = p2;
        ++count;
        q.push(c2);
      } else {
        cycles.push_back({p2[0] - potential[c2][0], p2[1] - potential[c2][1]});
      }
    }
  }
  if (count != pm.m) return fail("connected_cells", -1);
  if (lattice_index(cycles) != 1) return fail("connected_lattice", -1);
  return rep;
}

int face_size(const PeriodicMap& pm, PeriodicFlag f, int cap) {
  PeriodicFlag g = f;
  for (int s = 1; s <= cap; ++s) {
    g = pm.step(pm.step(g, 0), 1);
    if (g == f) return s;
  }
  throw std::runtime_error("face_size: rotation order exceeds cap");
}

int vertex_degree(const PeriodicMap& pm, PeriodicFlag f, int cap) {
  PeriodicFlag g = f;
  for (int s = 1; s <= cap; ++s) {
    g = pm.step(pm.step(g, 1), 2);
    if (g == f) return s;
  }
  throw std::runtime_error("vertex_degree: rotation order exceeds cap");
}

std::vector<int> vertex_figure(const PeriodicMap& pm, PeriodicFlag f) {
  int d = vertex_degree(pm, f);
  std::vector<int> sizes;
  sizes.reserve(static_cast<size_t>(d));
  PeriodicFlag g = f;
  for (int j = 0; j < d; ++j) {
    sizes.push_back(face_size(pm, g));
    g = pm.step(pm.step(g, 1), 2);
  }
  return sizes;
}

bool figure_matches(const std::vector<int>& figure, const std::vector<int>& config) {
  if (figure.size() != config.size()) return false;
  size_t n = figure.size();
  for (int rev = 0; rev < 2; ++rev) {
    std::vector<int> probe = figure;
    if (rev) std::reverse(probe.begin(), probe.end());
    for (size_t r = 0; r < n; ++r) {
      bool match = true;
      for (size_t i = 0; i < n && match; ++i) {
        if (probe[(r + i) % n] != config[i]) match = false;
      }
      if (match) return true;
    }
  }
  return false;
}

bool Automorphism::is_identity() const {
  if (lin != std::array<int32_t, 4>{1, 0, 0, 1}) return false;
  for (size_t c = 0; c < cell_image.size(); ++c) {
    if (cell_image[c] != static_cast<int32_t>(c)) return false;
    if (shift[c] != std::array<int32_t, 2>{0, 0}) return false;
  }
  return true;
}

bool Automorphism::is_translation() const {
  if (lin != std::array<int32_t, 4>{1, 0, 0, 1}) return false;
  for (size_t c = 0; c < cell_image.size(); ++c) {
    if (cell_image[c] != static_cast<int32_t>(c)) return false;
  }
  return true;
}

Automorphism Automorphism::compose_after(const Automorphism& other) const {
  size_t m = cell_image.size();
  Automorphism out;
  out.cell_image.resize(m);
  out.shift.resize(m);
  for (size_t c = 0; c < m; ++c) {
    int32_t mid = other.cell_image[c];
    out.cell_image[c] = cell_image[mid];
    out.shift[c] = {shift[mid][0] + lin[0] * other.shift[c][0] + lin[1] * other.shift[c][1],
                    shift[mid][1] + lin[2] * other.shift[c][0] + lin[3] * other.shift[c][1]};
  }
  out.lin = {lin[0] * other.lin[0] + lin[1] * other.lin[2],
             lin[0] * other.lin[1] + lin[1] * other.lin[3],
             lin[2] * other.lin[0] + lin[3] * other.lin[2],
             lin[2] * other.lin[1] + lin[3] * other.lin[3]};
  return out;
}

Automorphism Automorphism::inverse() const {
  size_t m = cell_image.size();
  int32_t det = lin[0] * lin[3] - lin[1] * lin[2];
  if (det != 1 && det != -1) throw std::logic_error("automorphism with non-unimodular linear part");
  Automorphism out;
  out.lin = {det * lin[3], -det * lin[1], -det * lin[2], det * lin[0]};
  // With det = +-1, the adjugate divided by det inverts L; det*adj works
  // because det is its own inverse.
  out.cell_image.resize(m);
  out.shift.resize(m);
  for (size_t c = 0; c < m; ++c) {
    int32_t c2 = cell_image[c];
    out.cell_image[c2] = static_cast<int32_t>(c);
    // phi(c,0) = (c2, s); phi^{-1}(c2, 0) = (c, -L^{-1} s).
    out.shift[c2] = {-(out.lin[0] * shift[c][0] + out.lin[1] * shift[c][1]),
                     -(out.lin[2] * shift[c][0] + out.lin[3] * shift[c][1])};
  }
  return out;
}

std::optional<Automorphism> automorphism_from(const PeriodicMap& pm,
                                              PeriodicFlag src,
                                              PeriodicFlag dst,
                                              int window) {
  // Try growing windows; a valid map's window graph around src is connected
  // for some small radius, so unassigned core flags mean "grow", while any
  // conflict is a definite failure.
  for (int W = window; W <= window + 3; ++W) {
    int side = 2 * W + 1;
    auto in_region = [&](PeriodicFlag f) {
      return std::abs(f.tx - src.tx) <= W && std::abs(f.ty - src.ty) <= W;
    };
    auto region_index = [&](PeriodicFlag f) {
      return (static_cast<size_t>(f.cell) * static_cast<size_t>(side) +
              static_cast<size_t>(f.tx - src.tx + W)) *
                 static_cast<size_t>(side) +
             static_cast<size_t>(f.ty - src.ty + W);
    };
    size_t total = static_cast<size_t>(pm.m) * static_cast<size_t>(side) *
                   static_cast<size_t>(side);
    std::vector<char> assigned(total, 0);
    std::vector<PeriodicFlag> image(total);

    bool conflict = false;
    std::queue<PeriodicFlag> q;
    assigned[region_index(src)] = 1;
    image[region_index(src)] = dst;
    q.push(src);
    while (!q.empty() && !conflict) {
      PeriodicFlag f = q.front();
      q.pop();
      PeriodicFlag img = image[region_index(f)];
      for (int i = 0; i < 3; ++i) {
        PeriodicFlag g = pm.step(f, i);
        if (!in_region(g)) continue;
        PeriodicFlag gi = pm.step(img, i);
        size_t idx = region_index(g);
        if (!assigned[idx]) {
          assigned[idx] = 1;
          image[idx] = gi;
          q.push(g);
        } else if (image[idx] != gi) {
          conflict = true;
          break;
        }
      }
    }
    if (conflict) return std::nullopt;

    // The 3x3-cell core around src must be covered before we can read the
    // affine data off the assignment.
    bool core_covered = true;
    for (int32_t c = 0; c < pm.m && core_covered; ++c) {
      for (int dx = -1; dx <= 1 && core_covered; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
          PeriodicFlag f{c, src.tx + dx, src.ty + dy};
          if (!assigned[region_index(f)]) {
            core_covered = false;
            break;
          }
        }
      }
    }
    if (!core_covered) continue; // grow the window

    // Translation equivariance: image offsets must move by a constant per
    // lattice generator, with unchanged image cell.
    std::array<std::array<int32_t, 2>, 2> delta{};
    std::array<bool, 2> have_delta{false, false};
    for (int32_t c = 0; c < pm.m; ++c) {
      for (int dx = -W; dx <= W; ++dx) {
        for (int dy = -W; dy <= W; ++dy) {
          PeriodicFlag f{c, src.tx + dx, src.ty + dy};
          size_t fi = region_index(f);
          if (!assigned[fi]) continue;
          for (int j = 0; j < 2; ++j) {
            PeriodicFlag f2{c, f.tx + (j == 0 ? 1 : 0), f.ty + (j == 1 ? 1 : 0)};
            if (!in_region(f2)) continue;
            size_t f2i = region_index(f2);
            if (!assigned[f2i]) continue;
            if (image[f2i].cell != image[fi].cell) return std::nullopt;
            std::array<int32_t, 2> d{image[f2i].tx - image[fi].tx,
                                     image[f2i].ty - image[fi].ty};
            if (!have_delta[j]) {
              delta[j] = d;
              have_delta[j] = true;
            } else if (delta[j] != d) {
              return std::nullopt;
            }
          }
        }
      }
    }
    if (!have_delta[0] || !have_delta[1]) continue;

    Automorphism a;
    a.lin = {delta[0][0], delta[1][0], delta[0][1], delta[1][1]};
    int32_t det = a.lin[0] * a.lin[3] - a.lin[1] * a.lin[2];
    if (det != 1 && det != -1) return std::nullopt;

    a.cell_image.resize(static_cast<size_t>(pm.m));
    a.shift.resize(static_cast<size_t>(pm.m));
    std::vector<char> hit(static_cast<size_t>(pm.m), 0);
    for (int32_t c = 0; c < pm.m; ++c) {
      PeriodicFlag f{c, src.tx, src.ty};
      PeriodicFlag img = image[region_index(f)];
      a.cell_image[c] = img.cell;
      a.shift[c] = {img.tx - (a.lin[0] * src.tx + a.lin[1] * src.ty),
                    img.ty - (a.lin[2] * src.tx + a.lin[3] * src.ty)};
      if (hit[img.cell]) return std::nullopt; // not injective on cells
      hit[img.cell] = 1;
    }

    // Affine rule must commute with every adjacency (checked once per cell;
    // equivariance extends it to all flags).
    for (int32_t c = 0; c < pm.m; ++c) {
      PeriodicFlag f{c, 0, 0};
      for (int i = 0; i < 3; ++i) {
        if (a.apply(pm.step(f, i)) != pm.step(a.apply(f), i)) return std::nullopt;
      }
    }
    if (a.apply(src) != dst) return std::nullopt;
    return a;
  }
  return std::nullopt;
}

AutOrbits aut_orbits(const PeriodicMap& pm) {
  std::vector<int32_t> parent(static_cast<size_t>(pm.m));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int32_t(int32_t)> find = [&](int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  // Cheap local invariant to skip hopeless pairs.
  std::vector<std::pair<int, int>> sig(static_cast<size_t>(pm.m));
  for (int32_t c = 0; c < pm.m; ++c) {
    PeriodicFlag f{c, 0, 0};
    sig[c] = {face_size(pm, f), vertex_degree(pm, f)};
  }

  for (int32_t c = 0; c < pm.m; ++c) {
    for (int32_t c2 = c + 1; c2 < pm.m; ++c2) {
      if (sig[c] != sig[c2]) continue;
      if (find(c) == find(c2)) continue;
      if (automorphism_from(pm, {c, 0, 0}, {c2, 0, 0})) {
        parent[find(c2)] = find(c);
      }
    }
  }

  AutOrbits out;
  out.orbit_of_cell.assign(static_cast<size_t>(pm.m), -1);
  for (int32_t c = 0; c < pm.m; ++c) {
    int32_t r = find(c);
    if (out.orbit_of_cell[r] < 0) {
      out.orbit_of_cell[r] = out.k;
      out.rep_cell.push_back(r);
      ++out.k;
    }
    out.orbit_of_cell[c] = out.orbit_of_cell[r];
  }
  return out;
}

FlagSystem torus_quotient(const PeriodicMap& pm, int k, int l) {
  if (k < 1 || l < 1) throw std::invalid_argument("torus_quotient: k, l must be >= 1");
  auto mod = [](int32_t a, int32_t n) { return ((a % n) + n) % n; };
  auto id = [&](int32_t c, int32_t x, int32_t y) {
    return c + pm.m * (x + static_cast<int32_t>(k) * y);
  };
  FlagSystem fs;
  fs.n = pm.m * k * l;
  for (int i = 0; i < 3; ++i) fs.adj[i].assign(static_cast<size_t>(fs.n), -1);
  for (int32_t y = 0; y < l; ++y) {
    for (int32_t x = 0; x < k; ++x) {
      for (int32_t c = 0; c < pm.m; ++c) {
        for (int i = 0; i < 3; ++i) {
          PeriodicFlag g = pm.step({c, x, y}, i);
          fs.adj[i][id(c, x, y)] = id(g.cell, mod(g.tx, k), mod(g.ty, l));
        }
      }
    }
  }
  return fs;
}

std::string to_json(const PeriodicMap& pm) {
  nlohmann::json j;
  j["m"] = pm.m;
  j["name"] = pm.name;
  nlohmann::json padj = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) {
    nlohmann::json gen = nlohmann::json::array();
    for (int32_t c = 0; c < pm.m; ++c) {
      gen.push_back({pm.cell_to[i][c], pm.dt[i][c][0], pm.dt[i][c][1]});
    }
    padj.push_back(gen);
  }
  j["padj"] = padj;
  return j.dump(2);
}

PeriodicMap periodic_map_from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PeriodicMap pm;
  pm.m = j.at("m").get<int32_t>();
  if (j.contains("name")) pm.name = j.at("name").get<std::string>();
  const auto& padj = j.at("padj");
  if (padj.size() != 3) throw std::invalid_argument("padj must have 3 generators");
  for (int i = 0; i < 3; ++i) {
    const auto& gen = padj.at(i);
    if (static_cast<int32_t>(gen.size()) != pm.m)
      throw std::invalid_argument("padj generator size mismatch");
    pm.cell_to[i].resize(static_cast<size_t>(pm.m));
    pm.dt[i].resize(static_cast<size_t>(pm.m));
    for (int32_t c = 0; c < pm.m; ++c) {
      pm.cell_to[i][c] = gen.at(c).at(0).get<int32_t>();
      pm.dt[i][c] = {gen.at(c).at(1).get<int32_t>(), gen.at(c).at(2).get<int32_t>()};
    }
  }
  return pm;
}

bool operator==(const PeriodicMap& a, const PeriodicMap& b) {
  return a.m == b.m && a.name == b.name && a.cell_to == b.cell_to && a.dt == b.dt;
}

} // namespace mapcover
