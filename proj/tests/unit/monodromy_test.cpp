#include "doctest.h"

#include <random>

#include "mapcover/monodromy.hpp"
#include "mapcover/tilings.hpp"

using namespace mapcover;

namespace {

Word random_word(std::mt19937& rng, size_t max_len) {
  std::uniform_int_distribution<size_t> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, 2);
  std::vector<uint8_t> letters(len(rng));
  for (auto& l : letters) l = static_cast<uint8_t>(letter(rng));
  return Word(std::move(letters));
}

// Independent identity oracle: a word fixes all flags iff it fixes every flag
// of a 3x3 block of fundamental cells (the action commutes with translations).
bool fixes_window(const PeriodicMap& pm, const Word& w) {
  for (int32_t c = 0; c < pm.m; ++c) {
    for (int32_t tx = -1; tx <= 1; ++tx) {
      for (int32_t ty = -1; ty <= 1; ++ty) {
        PeriodicFlag f{c, tx, ty};
        if (!(padjacent(pm, f, w) == f)) return false;
      }
    }
  }
  return true;
}

} // namespace

TEST_CASE("monodromy group orders of the finite builders") {
  MonEnumerateResult cube_mon = mon_enumerate(cube());
  CHECK(cube_mon.complete);
  CHECK(cube_mon.elements.size() == 48); // equals the flag count: regular

  MonEnumerateResult prism_mon = mon_enumerate(triangular_prism());
  CHECK(prism_mon.complete);
  CHECK(prism_mon.elements.size() == 1296); // 36 flags: far from regular

  MonEnumerateResult hemi_mon = mon_enumerate(hemi_cube());
  CHECK(hemi_mon.complete);
  CHECK(hemi_mon.elements.size() == 24);
}

TEST_CASE("mon_enumerate reports an exceeded cap") {
  MonEnumerateResult res = mon_enumerate(triangular_prism(), 100);
  CHECK_FALSE(res.complete);
  CHECK(res.elements.size() == 100);
}

TEST_CASE("context basics on 3.6.3.6") {
  MonodromyContext ctx(build_tiling("3.6.3.6"));
  CHECK(ctx.k() == 2);
  CHECK(ctx.map().m == 24);

  MonElement id = ctx.identity();
  CHECK(ctx.is_identity(id));
  CHECK(ctx.project(id) == PeriodicFlag{0, 0, 0});

  for (int gen = 0; gen < 3; ++gen) {
    MonElement g = ctx.gen_element(gen);
    CHECK_FALSE(ctx.is_identity(g));
    CHECK(ctx.is_identity(ctx.compose(g, g)));
    CHECK(ctx.project(g) == ctx.map().step({0, 0, 0}, gen));
  }
}

TEST_CASE("evaluate is a homomorphism onto the flag action") {
  std::mt19937 rng(12345);
  for (const std::string name : {"3.6.3.6", "4.4.4.4", "3.3.4.3.4"}) {
    CAPTURE(name);
    MonodromyContext ctx(build_tiling(name));
    for (int trial = 0; trial < 60; ++trial) {
      Word u = random_word(rng, 16);
      Word v = random_word(rng, 16);
      MonElement uv = ctx.evaluate(u.concat(v));
      CHECK(uv == ctx.compose(ctx.evaluate(u), ctx.evaluate(v)));

      // the projection follows the word letter by letter
      CHECK(ctx.project(uv) == padjacent(ctx.map(), {0, 0, 0}, u.concat(v)));
    }
    // inverse and power agree with compose
    Word u = random_word(rng, 12);
    MonElement e = ctx.evaluate(u);
    CHECK(ctx.is_identity(ctx.compose(e, ctx.inverse(e))));
    CHECK(ctx.is_identity(ctx.compose(ctx.inverse(e), e)));
    CHECK(ctx.power(e, 3) == ctx.compose(ctx.compose(e, e), e));
    CHECK(ctx.power(e, 0) == ctx.identity());
  }
}

TEST_CASE("identity detection agrees with the window oracle") {
  std::mt19937 rng(777);
  for (const std::string name : {"3.6.3.6", "3.3.3.4.4", "6.6.6"}) {
    CAPTURE(name);
    MonodromyContext ctx(build_tiling(name));
    int identities_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
      Word w = random_word(rng, 12);
      bool direct = fixes_window(ctx.map(), w);
      CHECK(ctx.fixes_all_flags(w) == direct);
      identities_seen += direct ? 1 : 0;
    }
    CHECK(identities_seen > 0); // empty and trivial words do occur
  }
}

TEST_CASE("relation words evaluate to the identity") {
  MonodromyContext ctx(build_tiling("3.6.3.6"));
  CHECK(ctx.fixes_all_flags(Word::parse("00")));
  CHECK(ctx.fixes_all_flags(Word::parse("(02)^2")));
  CHECK(ctx.fixes_all_flags(Word::parse("(01)^6")));  // lcm of face sizes
  CHECK(ctx.fixes_all_flags(Word::parse("(12)^4")));  // all vertices 4-valent
  CHECK_FALSE(ctx.fixes_all_flags(Word::parse("(01)^3"))); // hexagons resist
  CHECK_FALSE(ctx.fixes_all_flags(Word::parse("01")));
}

TEST_CASE("translation power of a face rotation") {
  MonodromyContext ctx(build_tiling("4.4.4.4"));
  MonElement rot = ctx.evaluate(Word::parse("01"));
  TranslationPowerResult res = translation_power(ctx, rot);
  REQUIRE(res.found);
  CHECK(res.power == 4); // a quarter turn: the fourth power is the identity
  CHECK(res.trivial);
}

TEST_CASE("kernel rank witness on 3.6.3.6") {
  MonodromyContext ctx(build_tiling("3.6.3.6"));
  KernelRankWitness w = kernel_rank_witness(ctx);
  REQUIRE(w.found);
  CHECK(w.k1 == 2);
  CHECK(w.k2 == 2);
  CHECK(w.commute);
  CHECK(w.independent);
  CHECK(w.a == ctx.power(ctx.evaluate(w.w1), w.k1));
  CHECK(w.b == ctx.power(ctx.evaluate(w.w2), w.k2));
  for (int32_t o = 0; o < ctx.k(); ++o) {
    CHECK(ctx.alpha_is_translation(w.a.alpha[static_cast<size_t>(o)]));
    CHECK(ctx.alpha_is_translation(w.b.alpha[static_cast<size_t>(o)]));
  }
  CHECK(commutator_is_trivial(ctx, w.w1, w.k1, w.w2, w.k2));
}

TEST_CASE("kernel witnesses exist for regular tilings too") {
  for (const std::string name : {"4.4.4.4", "6.6.6", "3.3.3.3.3.3"}) {
    CAPTURE(name);
    MonodromyContext ctx(build_tiling(name));
    KernelRankWitness w = kernel_rank_witness(ctx);
    REQUIRE(w.found);
    CHECK(w.k1 == 1);
    CHECK(w.k2 == 1);
    CHECK(w.commute);
    CHECK(w.independent);
  }
}
