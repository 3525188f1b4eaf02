#include "mapcover/minimal_cover.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "uf.hpp"

namespace mapcover {

using detail::UnionFind;

namespace {

struct PermHash {
  size_t operator()(const std::vector<int32_t>& p) const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (int32_t v : p) {
      h ^= static_cast<uint64_t>(static_cast<uint32_t>(v));
      h *= 0x100000001b3ull;
    }
    return static_cast<size_t>(h);
  }
};

} // namespace

CoverResult finite_cover(const FlagSystem& fs, size_t cap) {
  CoverResult out;
  MonEnumerateResult mon = mon_enumerate(fs, cap);
  if (!mon.complete) {
    throw CapExceeded("finite cover closure exceeded the element cap of " +
                      std::to_string(cap));
  }

  const size_t count = mon.elements.size();
  std::unordered_map<std::vector<int32_t>, int32_t, PermHash> index;
  index.reserve(count * 2);
  for (size_t i = 0; i < count; ++i) {
    index.emplace(mon.elements[i], static_cast<int32_t>(i));
  }

  out.cover.n = static_cast<int32_t>(count);
  out.projection.resize(count);
  for (int gen = 0; gen < 3; ++gen) {
    out.cover.adj[static_cast<size_t>(gen)].resize(count);
  }
  const size_t n = static_cast<size_t>(fs.n);
  std::vector<int32_t> h(n);
  for (size_t i = 0; i < count; ++i) {
    const auto& g = mon.elements[i];
    out.projection[i] = g[0];
    for (int gen = 0; gen < 3; ++gen) {
      for (size_t f = 0; f < n; ++f) {
        h[f] = fs.adj[static_cast<size_t>(gen)][static_cast<size_t>(g[f])];
      }
      out.cover.adj[static_cast<size_t>(gen)][i] = index.at(h);
    }
  }
  return out;
}

bool is_isomorphic(const FlagSystem& a, const FlagSystem& b) {
  if (a.n != b.n) return false;
  const size_t n = static_cast<size_t>(a.n);
  for (int32_t seed = 0; seed < b.n; ++seed) {
    std::vector<int32_t> img(n, -1);
    std::vector<int32_t> queue;
    img[0] = seed;
    queue.push_back(0);
    bool ok = true;
    for (size_t head = 0; ok && head < queue.size(); ++head) {
      int32_t f = queue[head];
      for (int gen = 0; gen < 3 && ok; ++gen) {
        int32_t fn = a.adj[static_cast<size_t>(gen)][static_cast<size_t>(f)];
        int32_t in = b.adj[static_cast<size_t>(gen)][static_cast<size_t>(img[static_cast<size_t>(f)])];
        if (img[static_cast<size_t>(fn)] == -1) {
          img[static_cast<size_t>(fn)] = in;
          queue.push_back(fn);
        } else if (img[static_cast<size_t>(fn)] != in) {
          ok = false;
        }
      }
    }
    if (!ok || queue.size() != n) continue;
    std::vector<char> hit(n, 0);
    bool bij = true;
    for (size_t f = 0; f < n; ++f) {
      if (hit[static_cast<size_t>(img[f])]) {
        bij = false;
        break;
      }
      hit[static_cast<size_t>(img[f])] = 1;
    }
    if (bij) return true;
  }
  return false;
}

CoverPatch::CoverPatch(const MonodromyContext& ctx, int radius, bool with_edges,
                       size_t cap)
    : ctx_(&ctx), k_(ctx.k()), radius_(radius), with_edges_(with_edges) {
  if (ctx.map().m > 255) {
    throw std::invalid_argument("cover patch: more than 255 flag classes");
  }
  if (radius < 0) throw std::invalid_argument("cover patch: negative radius");

  table_.assign(1024, 0);
  table_mask_ = table_.size() - 1;

  std::array<uint8_t, 96> key{};
  auto push = [&](const MonElement& e, int32_t d) {
    if (count_ >= cap) {
      throw CapExceeded("cover patch exceeded the element cap of " +
                        std::to_string(cap));
    }
    keys_.resize(keys_.size() + stride());
    pack(e, keys_.data() + count_ * stride());
    dist_.push_back(d);
    if (with_edges_) {
      for (auto& ev : edges_) ev.push_back(-1);
    }
    table_insert(keys_.data() + count_ * stride(), static_cast<uint32_t>(count_));
    ++count_;
  };

  push(ctx.identity(), 0);
  for (size_t head = 0; head < count_; ++head) {
    MonElement g = unpack(keys_.data() + head * stride());
    int32_t d = dist_[head];
    for (int gen = 0; gen < 3; ++gen) {
      MonElement ng = ctx.mul_gen(g, gen);
      pack(ng, key.data());
      int64_t found = table_lookup(key.data());
      if (found < 0) {
        if (d >= radius_) continue;
        found = static_cast<int64_t>(count_);
        push(ng, d + 1);
      }
      if (with_edges_) {
        edges_[static_cast<size_t>(gen)][head] = static_cast<int32_t>(found);
        edges_[static_cast<size_t>(gen)][static_cast<size_t>(found)] =
            static_cast<int32_t>(head);
      }
    }
  }
}

void CoverPatch::pack(const MonElement& e, uint8_t* out) const {
  uint64_t s = 0;
  for (size_t i = 0; i < e.sigma.size(); ++i) {
    s |= static_cast<uint64_t>(e.sigma[i] & 0xf) << (4 * i);
  }
  std::memcpy(out, &s, 8);
  uint8_t* p = out + 8;
  for (const auto& a : e.alpha) {
    if (a.tx < -32768 || a.tx > 32767 || a.ty < -32768 || a.ty > 32767) {
      throw std::overflow_error("cover patch: translation offset out of 16-bit range");
    }
    *p++ = static_cast<uint8_t>(a.base_cell);
    int16_t tx = static_cast<int16_t>(a.tx);
    int16_t ty = static_cast<int16_t>(a.ty);
    std::memcpy(p, &tx, 2);
    p += 2;
    std::memcpy(p, &ty, 2);
    p += 2;
  }
}

MonElement CoverPatch::unpack(const uint8_t* in) const {
  MonElement e;
  e.sigma.resize(static_cast<size_t>(k_));
  e.alpha.resize(static_cast<size_t>(k_));
  uint64_t s;
  std::memcpy(&s, in, 8);
  const uint8_t* p = in + 8;
  for (int32_t i = 0; i < k_; ++i) {
    e.sigma[static_cast<size_t>(i)] = static_cast<uint8_t>((s >> (4 * i)) & 0xf);
    AlphaRef a;
    a.base_cell = *p++;
    int16_t tx, ty;
    std::memcpy(&tx, p, 2);
    p += 2;
    std::memcpy(&ty, p, 2);
    p += 2;
    a.tx = tx;
    a.ty = ty;
    e.alpha[static_cast<size_t>(i)] = a;
  }
  return e;
}

uint64_t CoverPatch::hash_key(const uint8_t* key) const {
  uint64_t h = 0xcbf29ce484222325ull;
  for (size_t i = 0; i < stride(); ++i) {
    h ^= key[i];
    h *= 0x100000001b3ull;
  }
  // Avalanche the low bits for power-of-two masking.
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return h;
}

int64_t CoverPatch::table_lookup(const uint8_t* key) const {
  uint64_t pos = hash_key(key) & table_mask_;
  while (table_[pos] != 0) {
    uint32_t idx = table_[pos] - 1;
    if (std::memcmp(keys_.data() + static_cast<size_t>(idx) * stride(), key,
                    stride()) == 0) {
      return idx;
    }
    pos = (pos + 1) & table_mask_;
  }
  return -1;
}

void CoverPatch::table_insert(const uint8_t* key, uint32_t index) {
  if ((count_ + 1) * 10 >= table_.size() * 6) rehash();
  uint64_t pos = hash_key(key) & table_mask_;
  while (table_[pos] != 0) pos = (pos + 1) & table_mask_;
  table_[pos] = index + 1;
}

void CoverPatch::rehash() {
  std::vector<uint32_t> old = std::move(table_);
  table_.assign(old.size() * 2, 0);
  table_mask_ = table_.size() - 1;
  for (size_t i = 0; i < count_; ++i) {
    uint64_t pos = hash_key(keys_.data() + i * stride()) & table_mask_;
    while (table_[pos] != 0) pos = (pos + 1) & table_mask_;
    table_[pos] = static_cast<uint32_t>(i) + 1;
  }
}

MonElement CoverPatch::element(size_t i) const {
  return unpack(keys_.data() + i * stride());
}

int32_t CoverPatch::neighbor(size_t i, int gen) const {
  if (with_edges_) return edges_[static_cast<size_t>(gen)][i];
  MonElement ng = ctx_->mul_gen(element(i), gen);
  auto found = find(ng);
  return found ? static_cast<int32_t>(*found) : -1;
}

std::optional<size_t> CoverPatch::find(const MonElement& e) const {
  std::array<uint8_t, 96> key{};
  pack(e, key.data());
  int64_t idx = table_lookup(key.data());
  if (idx < 0) return std::nullopt;
  return static_cast<size_t>(idx);
}

size_t CoverPatch::memory_bytes() const {
  size_t b = keys_.capacity() + dist_.capacity() * 4 + table_.capacity() * 4;
  for (const auto& ev : edges_) b += ev.capacity() * 4;
  return b;
}

CoverPatch cover_patch(const MonodromyContext& ctx, int radius, bool with_edges,
                       size_t cap) {
  return CoverPatch(ctx, radius, with_edges, cap);
}

PatchStats patch_stats(const CoverPatch& patch) {
  if (!patch.has_edges()) {
    throw std::invalid_argument("patch_stats requires a patch built with edges");
  }
  PatchStats st;
  st.radius = patch.radius();
  const size_t n = patch.size();
  st.elements = static_cast<int64_t>(n);
  st.faces = st.elements;

  // Corner slot c of element i is the fan around the cell component that
  // generators other than c preserve.
  UnionFind fans(3 * n);
  int64_t matched_pairs = 0;
  int64_t boundary_sides = 0;
  for (size_t i = 0; i < n; ++i) {
    for (int s = 0; s < 3; ++s) {
      int32_t j = patch.neighbor(i, s);
      if (j < 0) {
        ++boundary_sides;
        continue;
      }
      if (static_cast<size_t>(j) > i) ++matched_pairs;
      for (int c = 0; c < 3; ++c) {
        if (c == s) continue;
        fans.unite(static_cast<int32_t>(3 * i + static_cast<size_t>(c)),
                   static_cast<int32_t>(3 * static_cast<size_t>(j) + static_cast<size_t>(c)));
      }
    }
  }
  st.edges = matched_pairs + boundary_sides;

  std::vector<int32_t> fan_roots;
  std::unordered_map<int32_t, int32_t> root_index;
  for (size_t i = 0; i < 3 * n; ++i) {
    int32_t r = fans.find(static_cast<int32_t>(i));
    if (root_index.emplace(r, static_cast<int32_t>(fan_roots.size())).second) {
      fan_roots.push_back(r);
    }
  }
  st.vertices = static_cast<int64_t>(fan_roots.size());
  st.chi = st.vertices - st.edges + st.faces;

  // Each boundary side has one end at each of its two corners; each open fan
  // carries exactly two such ends.  Walking side -> corner -> other side
  // traces the boundary cycles.
  struct SideEnd {
    int64_t side; // 3 * element + generator
  };
  std::unordered_map<int32_t, std::vector<int64_t>> ends; // fan root -> sides
  for (size_t i = 0; i < n; ++i) {
    for (int s = 0; s < 3; ++s) {
      if (patch.neighbor(i, s) >= 0) continue;
      for (int c = 0; c < 3; ++c) {
        if (c == s) continue;
        int32_t r = fans.find(static_cast<int32_t>(3 * i + static_cast<size_t>(c)));
        ends[r].push_back(static_cast<int64_t>(3 * i + static_cast<size_t>(s)));
      }
    }
  }
  for (const auto& [root, sides] : ends) {
    if (sides.size() != 2) {
      throw std::logic_error("patch boundary fan with " +
                             std::to_string(sides.size()) + " open side ends");
    }
  }

  std::unordered_map<int64_t, std::array<int32_t, 2>> side_corners;
  for (size_t i = 0; i < n; ++i) {
    for (int s = 0; s < 3; ++s) {
      if (patch.neighbor(i, s) >= 0) continue;
      std::array<int32_t, 2> cs{};
      int w = 0;
      for (int c = 0; c < 3; ++c) {
        if (c == s) continue;
        cs[static_cast<size_t>(w++)] =
            fans.find(static_cast<int32_t>(3 * i + static_cast<size_t>(c)));
      }
      side_corners[static_cast<int64_t>(3 * i + static_cast<size_t>(s))] = cs;
    }
  }

  std::unordered_map<int64_t, bool> visited;
  for (const auto& [side, cs] : side_corners) visited[side] = false;
  for (const auto& [start, cs0] : side_corners) {
    if (visited[start]) continue;
    ++st.boundary_cycles;
    int64_t side = start;
    int32_t corner = cs0[0];
    while (true) {
      visited[side] = true;
      const auto& pair = ends.at(corner);
      int64_t next = (pair[0] == side) ? pair[1] : pair[0];
      const auto& ncs = side_corners.at(next);
      corner = (ncs[0] == corner) ? ncs[1] : ncs[0];
      side = next;
      if (side == start) break;
    }
  }

  // Two-color the elements across matched sides.
  std::vector<int8_t> color(n, -1);
  st.orientable = true;
  std::vector<size_t> stack;
  for (size_t seed = 0; seed < n && st.orientable; ++seed) {
    if (color[seed] != -1) continue;
    color[seed] = 0;
    stack.push_back(seed);
    while (!stack.empty() && st.orientable) {
      size_t i = stack.back();
      stack.pop_back();
      for (int s = 0; s < 3; ++s) {
        int32_t j = patch.neighbor(i, s);
        if (j < 0) continue;
        if (color[static_cast<size_t>(j)] == -1) {
          color[static_cast<size_t>(j)] = static_cast<int8_t>(1 - color[i]);
          stack.push_back(static_cast<size_t>(j));
        } else if (color[static_cast<size_t>(j)] == color[i]) {
          st.orientable = false;
          break;
        }
      }
    }
    stack.clear();
  }

  if (st.orientable) {
    int64_t twice = 2 - st.chi - st.boundary_cycles;
    if (twice % 2 != 0 || twice < 0) {
      throw std::logic_error("orientable patch with odd or negative 2g = " +
                             std::to_string(twice));
    }
    st.genus = twice / 2;
  } else {
    st.crosscaps = 2 - st.chi - st.boundary_cycles;
  }
  return st;
}

namespace {

// Classes of cells under the orbits of two generators, i.e. faces (gens 0,1)
// or vertices (gens 1,2) modulo lattice translations.
std::vector<int32_t> cell_classes(const PeriodicMap& pm, int ga, int gb) {
  UnionFind uf(static_cast<size_t>(pm.m));
  for (int32_t c = 0; c < pm.m; ++c) {
    uf.unite(c, pm.cell_to[static_cast<size_t>(ga)][static_cast<size_t>(c)]);
    uf.unite(c, pm.cell_to[static_cast<size_t>(gb)][static_cast<size_t>(c)]);
  }
  std::vector<int32_t> reps;
  std::vector<char> seen(static_cast<size_t>(pm.m), 0);
  for (int32_t c = 0; c < pm.m; ++c) {
    int32_t r = uf.find(c);
    if (!seen[static_cast<size_t>(r)]) {
      seen[static_cast<size_t>(r)] = 1;
      reps.push_back(r);
    }
  }
  return reps;
}

} // namespace

std::pair<int64_t, int64_t> pq_type(const PeriodicMap& pm) {
  int64_t p = 1;
  for (int32_t rep : cell_classes(pm, 0, 1)) {
    p = std::lcm(p, static_cast<int64_t>(face_size(pm, {rep, 0, 0})));
  }
  int64_t q = 1;
  for (int32_t rep : cell_classes(pm, 1, 2)) {
    q = std::lcm(q, static_cast<int64_t>(vertex_degree(pm, {rep, 0, 0})));
  }
  return {p, q};
}

BranchOrders branch_orders(const PeriodicMap& pm) {
  BranchOrders out;
  auto [p, q] = pq_type(pm);
  out.p = p;
  out.q = q;
  for (int32_t rep : cell_classes(pm, 0, 1)) {
    int64_t size = face_size(pm, {rep, 0, 0});
    out.faces.push_back({rep, size, p / size});
  }
  for (int32_t rep : cell_classes(pm, 1, 2)) {
    int64_t deg = vertex_degree(pm, {rep, 0, 0});
    out.vertices.push_back({rep, deg, q / deg});
  }
  return out;
}

std::string patch_csv(const std::vector<PatchStats>& rows) {
  std::ostringstream os;
  os << "r,elements,chi,boundary,genus\n";
  for (const auto& st : rows) {
    if (!st.orientable) {
      throw std::invalid_argument("patch_csv: non-orientable patch row");
    }
    os << st.radius << ',' << st.elements << ',' << st.chi << ','
       << st.boundary_cycles << ',' << st.genus << '\n';
  }
  return os.str();
}

} // namespace mapcover
