#include "mapcover/monodromy.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace mapcover {

namespace {

int64_t default_power_bound(int32_t k) {
  int64_t f = 1;
  for (int32_t i = 2; i <= k; ++i) f *= i;
  return f * 12;
}

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

MonodromyContext::MonodromyContext(PeriodicMap pm)
    : pm_(std::move(pm)), orbits_(aut_orbits(pm_)) {
  if (orbits_.k > 16) {
    throw std::invalid_argument("monodromy context: more than 16 orbits");
  }
  bases_.resize(static_cast<size_t>(pm_.m));
  alpha_memo_.resize(static_cast<size_t>(orbits_.k));
  for (int g = 0; g < 3; ++g) {
    gens_[g] = evaluate(Word(std::vector<uint8_t>{static_cast<uint8_t>(g)}));
  }
  gens_ready_ = true;
}

const MonodromyContext::BaseEntry& MonodromyContext::base(int32_t cell) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = bases_[static_cast<size_t>(cell)];
  if (!slot) {
    auto entry = std::make_unique<BaseEntry>();
    auto aut = automorphism_from(pm_, {0, 0, 0}, {cell, 0, 0});
    if (aut) {
      entry->exists = true;
      entry->aut = *aut;
      entry->lin = aut->lin;
    }
    slot = std::move(entry);
  }
  if (!slot->exists) {
    throw std::logic_error("monodromy context: no base automorphism with this pivot cell");
  }
  return *slot;
}

AlphaRef MonodromyContext::decompose(const Automorphism& a) const {
  PeriodicFlag pivot = a.apply({0, 0, 0});
  return {pivot.cell, pivot.tx, pivot.ty};
}

PeriodicFlag MonodromyContext::alpha_apply(const AlphaRef& a, PeriodicFlag f) const {
  if (a.base_cell == 0) {
    return {f.cell, f.tx + a.tx, f.ty + a.ty};
  }
  const BaseEntry& b = base(a.base_cell);
  PeriodicFlag r = b.aut.apply(f);
  return {r.cell, r.tx + a.tx, r.ty + a.ty};
}

AlphaRef MonodromyContext::alpha_compose(const AlphaRef& x, const AlphaRef& y) const {
  // An automorphism is determined by its pivot (the image of flag (0,(0,0))),
  // and the AlphaRef fields are exactly that pivot, so composing is one
  // application: pivot(x o y) = x(pivot(y)).
  PeriodicFlag p = alpha_apply(x, {y.base_cell, y.tx, y.ty});
  return {p.cell, p.tx, p.ty};
}

AlphaRef MonodromyContext::alpha_inverse(const AlphaRef& x) const {
  if (x.base_cell == 0) {
    return {0, -x.tx, -x.ty};
  }
  const BaseEntry& b = base(x.base_cell);
  // x = T_u o b, so x^-1(flag0) = b^-1(-u).
  PeriodicFlag p = b.aut.inverse().apply({0, -x.tx, -x.ty});
  return {p.cell, p.tx, p.ty};
}

MonElement MonodromyContext::identity() const {
  MonElement e;
  e.sigma.resize(static_cast<size_t>(orbits_.k));
  e.alpha.assign(static_cast<size_t>(orbits_.k), AlphaRef{});
  for (int32_t i = 0; i < orbits_.k; ++i) e.sigma[static_cast<size_t>(i)] = static_cast<uint8_t>(i);
  return e;
}

AlphaRef MonodromyContext::alpha_for(int32_t orbit, PeriodicFlag image) const {
  // The automorphism carrying rep(orbit) to `image` only depends on the image
  // cell once translations are factored out, so memoize by the cell.
  PeriodicFlag cell_image{image.cell, 0, 0};
  std::optional<AlphaRef> cached;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto& memo = alpha_memo_[static_cast<size_t>(orbit)];
    auto it = memo.find(cell_image);
    if (it != memo.end()) cached = it->second;
  }
  if (!cached) {
    PeriodicFlag src = rep(orbit);
    auto aut = automorphism_from(pm_, src, cell_image);
    if (!aut) {
      throw std::logic_error("monodromy context: flags in one orbit admit no automorphism");
    }
    cached = decompose(*aut);
    std::lock_guard<std::mutex> lock(mu_);
    alpha_memo_[static_cast<size_t>(orbit)][cell_image] = *cached;
  }
  // Shift so the composite maps rep(orbit) to `image` exactly.
  return {cached->base_cell, cached->tx + image.tx, cached->ty + image.ty};
}

MonElement MonodromyContext::evaluate(const Word& w) const {
  MonElement e;
  e.sigma.resize(static_cast<size_t>(orbits_.k));
  e.alpha.resize(static_cast<size_t>(orbits_.k));
  for (int32_t i = 0; i < orbits_.k; ++i) {
    PeriodicFlag img = padjacent(pm_, rep(i), w);
    int32_t j = orbits_.orbit_of_cell[static_cast<size_t>(img.cell)];
    e.sigma[static_cast<size_t>(i)] = static_cast<uint8_t>(j);
    e.alpha[static_cast<size_t>(i)] = alpha_for(j, img);
  }
  return e;
}

MonElement MonodromyContext::compose(const MonElement& a, const MonElement& b) const {
  const size_t k = a.sigma.size();
  MonElement c;
  c.sigma.resize(k);
  c.alpha.resize(k);
  for (size_t i = 0; i < k; ++i) {
    uint8_t mid = a.sigma[i];
    c.sigma[i] = b.sigma[mid];
    c.alpha[i] = alpha_compose(a.alpha[i], b.alpha[mid]);
  }
  return c;
}

MonElement MonodromyContext::inverse(const MonElement& a) const {
  const size_t k = a.sigma.size();
  MonElement r;
  r.sigma.resize(k);
  r.alpha.resize(k);
  for (size_t i = 0; i < k; ++i) {
    uint8_t j = a.sigma[i];
    r.sigma[j] = static_cast<uint8_t>(i);
    r.alpha[j] = alpha_inverse(a.alpha[i]);
  }
  return r;
}

MonElement MonodromyContext::power(const MonElement& a, int64_t n) const {
  if (n < 0) return power(inverse(a), -n);
  MonElement acc = identity();
  MonElement sq = a;
  while (n > 0) {
    if (n & 1) acc = compose(acc, sq);
    sq = compose(sq, sq);
    n >>= 1;
  }
  return acc;
}

MonElement MonodromyContext::gen_element(int gen) const {
  if (gen < 0 || gen > 2) throw std::invalid_argument("generator must be 0, 1 or 2");
  if (!gens_ready_) {
    return evaluate(Word(std::vector<uint8_t>{static_cast<uint8_t>(gen)}));
  }
  return gens_[static_cast<size_t>(gen)];
}

MonElement MonodromyContext::mul_gen(const MonElement& a, int gen) const {
  return compose(a, gen_element(gen));
}

bool MonodromyContext::is_identity(const MonElement& e) const {
  for (size_t i = 0; i < e.sigma.size(); ++i) {
    if (e.sigma[i] != i) return false;
    if (!(e.alpha[i] == AlphaRef{})) return false;
  }
  return true;
}

PeriodicFlag MonodromyContext::rep_image(const MonElement& e, int32_t orbit) const {
  int32_t j = e.sigma[static_cast<size_t>(orbit)];
  return alpha_apply(e.alpha[static_cast<size_t>(orbit)], rep(j));
}

TranslationPowerResult translation_power(const MonodromyContext& ctx,
                                         const MonElement& e, int64_t max_power) {
  TranslationPowerResult out;
  int64_t bound = max_power > 0 ? max_power : default_power_bound(ctx.k());
  auto is_translation_like = [&](const MonElement& g) {
    for (size_t i = 0; i < g.sigma.size(); ++i) {
      if (g.sigma[i] != i) return false;
      if (g.alpha[i].base_cell != 0) return false;
    }
    return true;
  };
  // Brent cycle detection keeps memory flat if the element has finite order
  // without ever turning into pure translations (cannot happen for a valid
  // map's monodromy, but guards corrupt inputs).
  MonElement cur = e;
  MonElement checkpoint = e;
  int64_t next_checkpoint = 2;
  for (int64_t n = 1; n <= bound; ++n) {
    if (is_translation_like(cur)) {
      out.found = true;
      out.power = n;
      out.element = cur;
      out.trivial = ctx.is_identity(cur);
      out.vectors.reserve(cur.alpha.size());
      for (const auto& a : cur.alpha) out.vectors.push_back({a.tx, a.ty});
      return out;
    }
    if (n > 1 && cur == checkpoint) return out; // cycled without success
    if (n == next_checkpoint) {
      checkpoint = cur;
      next_checkpoint *= 2;
    }
    cur = ctx.compose(cur, e);
  }
  return out;
}

bool commutator_is_trivial(const MonodromyContext& ctx, const Word& w1, int64_t k1,
                           const Word& w2, int64_t k2) {
  MonElement a = ctx.power(ctx.evaluate(w1), k1);
  MonElement b = ctx.power(ctx.evaluate(w2), k2);
  MonElement comm =
      ctx.compose(ctx.compose(ctx.compose(ctx.inverse(b), ctx.inverse(a)), b), a);
  return ctx.is_identity(comm);
}

namespace {

// BFS word from flag (0,(0,0)) to `target`, widening the search window until
// the target is reached.
std::optional<Word> word_to_flag(const PeriodicMap& pm, PeriodicFlag target) {
  for (int window = 3; window <= 9; window += 2) {
    std::unordered_map<PeriodicFlag, std::pair<PeriodicFlag, uint8_t>, PeriodicFlagHash>
        parent;
    std::deque<PeriodicFlag> queue;
    PeriodicFlag start{0, 0, 0};
    parent.emplace(start, std::make_pair(start, uint8_t{3}));
    queue.push_back(start);
    while (!queue.empty()) {
      PeriodicFlag f = queue.front();
      queue.pop_front();
      if (f == target) {
        std::vector<uint8_t> letters;
        PeriodicFlag cur = f;
        while (!(cur == start)) {
          auto& pr = parent.at(cur);
          letters.push_back(pr.second);
          cur = pr.first;
        }
        std::reverse(letters.begin(), letters.end());
        return Word(std::move(letters));
      }
      for (uint8_t g = 0; g < 3; ++g) {
        PeriodicFlag n = pm.step(f, g);
        if (std::abs(n.tx) > window || std::abs(n.ty) > window) continue;
        if (parent.emplace(n, std::make_pair(f, g)).second) queue.push_back(n);
      }
    }
  }
  return std::nullopt;
}

} // namespace

KernelRankWitness kernel_rank_witness(const MonodromyContext& ctx) {
  KernelRankWitness out;
  auto w1 = word_to_flag(ctx.map(), {0, 1, 0});
  auto w2 = word_to_flag(ctx.map(), {0, 0, 1});
  if (!w1 || !w2) return out;
  out.w1 = *w1;
  out.w2 = *w2;

  auto tp1 = translation_power(ctx, ctx.evaluate(out.w1));
  auto tp2 = translation_power(ctx, ctx.evaluate(out.w2));
  if (!tp1.found || !tp2.found || tp1.trivial || tp2.trivial) return out;
  out.k1 = tp1.power;
  out.k2 = tp2.power;
  out.a = tp1.element;
  out.b = tp2.element;
  out.va = tp1.vectors;
  out.vb = tp2.vectors;

  auto det2 = [](const std::array<int32_t, 2>& u, const std::array<int32_t, 2>& v) {
    return static_cast<int64_t>(u[0]) * v[1] - static_cast<int64_t>(u[1]) * v[0];
  };
  out.independent = det2(out.va[0], out.vb[0]) != 0;
  out.independent_all_orbits = true;
  for (size_t i = 0; i < out.va.size(); ++i) {
    if (det2(out.va[i], out.vb[i]) == 0) out.independent_all_orbits = false;
  }
  out.commute = ctx.compose(out.a, out.b) == ctx.compose(out.b, out.a) &&
                commutator_is_trivial(ctx, out.w1, out.k1, out.w2, out.k2);
  out.found = out.independent && out.commute;
  return out;
}

MonEnumerateResult mon_enumerate(const FlagSystem& fs, size_t cap) {
  MonEnumerateResult out;
  const size_t n = static_cast<size_t>(fs.n);
  std::vector<int32_t> id(n);
  for (size_t i = 0; i < n; ++i) id[i] = static_cast<int32_t>(i);

  std::unordered_set<std::vector<int32_t>, PermHash> seen;
  seen.insert(id);
  out.elements.push_back(id);
  size_t head = 0;
  while (head < out.elements.size()) {
    std::vector<int32_t> g = out.elements[head++];
    for (int gen = 0; gen < 3; ++gen) {
      std::vector<int32_t> h(n);
      for (size_t f = 0; f < n; ++f) {
        h[f] = fs.adj[static_cast<size_t>(gen)][static_cast<size_t>(g[f])];
      }
      if (seen.insert(h).second) {
        if (out.elements.size() >= cap) {
          out.complete = false;
          return out;
        }
        out.elements.push_back(std::move(h));
      }
    }
  }
  return out;
}

} // namespace mapcover
