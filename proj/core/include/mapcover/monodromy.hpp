#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mapcover/periodic_map.hpp"
#include "mapcover/word.hpp"

namespace mapcover {

// Thrown when an enumeration grows past its configured element cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr size_t kDefaultElementCap = 5'000'000;

// A reference to an automorphism, factored as T_(tx,ty) o base, where base
// is the unique automorphism with pivot (base_cell, (0,0)).  base_cell 0 is
// the identity, so base_cell == 0 means a pure lattice translation.
struct AlphaRef {
  int32_t base_cell = 0;
  int32_t tx = 0;
  int32_t ty = 0;
  bool operator==(const AlphaRef&) const = default;
};

// An element of the monodromy group of a periodic map, encoded by its
// permutation of the automorphism orbits together with one automorphism per
// orbit: rep_i . w = alpha[i](rep_{sigma[i]}).
struct MonElement {
  std::vector<uint8_t> sigma;
  std::vector<AlphaRef> alpha;
  bool operator==(const MonElement&) const = default;
};

struct MonElementHash {
  size_t operator()(const MonElement& e) const {
    uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&](uint64_t v) {
      h ^= v;
      h *= 0x100000001b3ull;
    };
    for (uint8_t s : e.sigma) mix(s);
    for (const auto& a : e.alpha) {
      mix(static_cast<uint32_t>(a.base_cell));
      mix(static_cast<uint32_t>(a.tx));
      mix(static_cast<uint32_t>(a.ty));
    }
    return static_cast<size_t>(h);
  }
};

// Shared state for exact monodromy computations on one periodic map: the
// automorphism orbits, their canonical representatives (lowest cell, offset
// zero), and lazily built tables of base automorphisms.  Methods are safe to
// call concurrently.
class MonodromyContext {
public:
  explicit MonodromyContext(PeriodicMap pm);

  const PeriodicMap& map() const { return pm_; }
  const AutOrbits& orbits() const { return orbits_; }
  int32_t k() const { return orbits_.k; }
  PeriodicFlag rep(int32_t orbit) const {
    return {orbits_.rep_cell[orbit], 0, 0};
  }

  MonElement identity() const;
  MonElement evaluate(const Word& w) const;
  // a then b, acting on the right: rep . (uv) = (rep . u) . v.
  MonElement compose(const MonElement& a, const MonElement& b) const;
  MonElement inverse(const MonElement& a) const;
  MonElement power(const MonElement& a, int64_t n) const;
  MonElement gen_element(int gen) const;
  MonElement mul_gen(const MonElement& a, int gen) const;

  bool is_identity(const MonElement& e) const;
  bool fixes_all_flags(const Word& w) const { return is_identity(evaluate(w)); }

  // Image of the orbit representative under the element.
  PeriodicFlag rep_image(const MonElement& e, int32_t orbit) const;
  // Covering projection: the image of the base flag (0,(0,0)).
  PeriodicFlag project(const MonElement& e) const { return rep_image(e, 0); }

  PeriodicFlag alpha_apply(const AlphaRef& a, PeriodicFlag f) const;
  bool alpha_is_translation(const AlphaRef& a) const { return a.base_cell == 0; }
  AlphaRef alpha_compose(const AlphaRef& x, const AlphaRef& y) const; // x o y
  AlphaRef alpha_inverse(const AlphaRef& x) const;

private:
  struct BaseEntry {
    bool exists = false;
    Automorphism aut;
    std::array<int32_t, 4> lin{1, 0, 0, 1};
  };

  const BaseEntry& base(int32_t cell) const;
  AlphaRef decompose(const Automorphism& a) const;
  AlphaRef alpha_for(int32_t orbit, PeriodicFlag image) const;

  PeriodicMap pm_;
  AutOrbits orbits_;

  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<BaseEntry>> bases_;
  mutable std::vector<std::unordered_map<PeriodicFlag, AlphaRef, PeriodicFlagHash>>
      alpha_memo_;
  std::array<MonElement, 3> gens_;
  bool gens_ready_ = false;
};

struct TranslationPowerResult {
  bool found = false;
  int64_t power = 0;    // smallest n >= 1 with sigma = id and all alphas translations
  MonElement element;   // e^power
  bool trivial = false; // element is the identity
  std::vector<std::array<int32_t, 2>> vectors; // per-orbit translation vectors
};

// Smallest positive power of e that permutes no orbits and acts by lattice
// translations on every orbit.  max_power 0 means the default bound k! * 12.
TranslationPowerResult translation_power(const MonodromyContext& ctx,
                                         const MonElement& e,
                                         int64_t max_power = 0);

// Evaluates the commutator word w2^-k2 w1^-k1 w2^k2 w1^k1 and tests identity.
bool commutator_is_trivial(const MonodromyContext& ctx, const Word& w1, int64_t k1,
                           const Word& w2, int64_t k2);

struct KernelRankWitness {
  bool found = false;
  Word w1, w2;      // words whose powers give the witnesses
  int64_t k1 = 0, k2 = 0;
  MonElement a, b;  // a = evaluate(w1)^k1, b = evaluate(w2)^k2
  std::vector<std::array<int32_t, 2>> va, vb; // per-orbit translation vectors
  bool commute = false;
  bool independent = false;          // orbit-0 vectors linearly independent
  bool independent_all_orbits = false;
};

// Two commuting kernel elements acting by translations along independent
// vectors: a computational witness that the kernel has rank at least two.
KernelRankWitness kernel_rank_witness(const MonodromyContext& ctx);

struct MonEnumerateResult {
  bool complete = true; // false if the cap stopped the closure
  std::vector<std::vector<int32_t>> elements; // permutations of the flags
};

// Closure of {r0, r1, r2} inside the symmetric group on the flags.
MonEnumerateResult mon_enumerate(const FlagSystem& fs,
                                 size_t cap = kDefaultElementCap);

} // namespace mapcover
