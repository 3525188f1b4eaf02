#include "doctest.h"

#include <string>

#include "mapcover/minimal_cover.hpp"
#include "mapcover/tilings.hpp"

using namespace mapcover;

TEST_CASE("the cube is its own minimal regular cover") {
  FlagSystem base = cube();
  CoverResult res = finite_cover(base);
  REQUIRE(res.complete);
  CHECK(res.cover.n == 48);
  CHECK(validate(res.cover).ok);
  CHECK(euler_characteristic(res.cover) == 2);
  CHECK(is_orientable(res.cover));
  CHECK(is_isomorphic(res.cover, base));
}

TEST_CASE("the hemi cube is regular too") {
  CoverResult res = finite_cover(hemi_cube());
  REQUIRE(res.complete);
  CHECK(res.cover.n == 24);
  CHECK(euler_characteristic(res.cover) == 1);
  CHECK_FALSE(is_orientable(res.cover));
  CHECK(is_isomorphic(res.cover, hemi_cube()));
}

TEST_CASE("the prism cover is a genus-28 regular map") {
  FlagSystem base = triangular_prism();
  CoverResult res = finite_cover(base);
  REQUIRE(res.complete);
  CHECK(res.cover.n == 1296);
  CHECK(validate(res.cover).ok);
  CHECK(euler_characteristic(res.cover) == -54);
  CHECK(is_orientable(res.cover)); // genus (2 - chi) / 2 = 28
  CHECK_FALSE(is_isomorphic(res.cover, base));

  // the projection commutes with all three adjacencies
  REQUIRE(res.projection.size() == static_cast<size_t>(res.cover.n));
  for (int32_t f = 0; f < res.cover.n; ++f) {
    for (int gen = 0; gen < 3; ++gen) {
      CHECK(res.projection[static_cast<size_t>(res.cover.adj[gen][f])] ==
            base.adj[gen][static_cast<size_t>(res.projection[static_cast<size_t>(f)])]);
    }
  }
}

TEST_CASE("is_isomorphic distinguishes maps of equal size") {
  CHECK(is_isomorphic(cube(), cube()));
  CHECK_FALSE(is_isomorphic(cube(), triangular_prism()));
  CHECK_FALSE(is_isomorphic(cube(), hemi_cube()));
}

TEST_CASE("finite_cover respects the cap") {
  CHECK_THROWS_AS(finite_cover(triangular_prism(), 100), CapExceeded);
}

TEST_CASE("cover patch structure") {
  MonodromyContext ctx(build_tiling("3.6.3.6"));

  CoverPatch p0 = cover_patch(ctx, 0);
  CHECK(p0.size() == 1);
  CHECK(ctx.is_identity(p0.element(0)));

  CoverPatch p1 = cover_patch(ctx, 1);
  CHECK(p1.size() == 4); // identity and the three generators

  CoverPatch patch = cover_patch(ctx, 8, true);
  CHECK(patch.radius() == 8);
  CHECK(patch.has_edges());
  CHECK(patch.memory_bytes() > 0);
  for (size_t i = 0; i < patch.size(); ++i) {
    CHECK(patch.dist(i) <= 8);
    auto idx = patch.find(patch.element(i));
    REQUIRE(idx.has_value());
    CHECK(*idx == i);
    for (int gen = 0; gen < 3; ++gen) {
      int32_t j = patch.neighbor(i, gen);
      if (j >= 0) {
        CHECK(patch.neighbor(static_cast<size_t>(j), gen) == static_cast<int32_t>(i));
      } else {
        CHECK(patch.dist(i) == 8); // only boundary elements lack neighbors
      }
    }
  }

  // a lean patch enumerates the same elements and answers neighbors by lookup
  CoverPatch lean = cover_patch(ctx, 8, false);
  CHECK_FALSE(lean.has_edges());
  REQUIRE(lean.size() == patch.size());
  for (size_t i = 0; i < lean.size(); ++i) {
    for (int gen = 0; gen < 3; ++gen) {
      CHECK(lean.neighbor(i, gen) == patch.neighbor(i, gen));
    }
  }

  CHECK_THROWS_AS(cover_patch(ctx, 12, true, 50), CapExceeded);
}

TEST_CASE("patch stats of the 3.6.3.6 cover") {
  MonodromyContext ctx(build_tiling("3.6.3.6"));
  const int radii[] = {4, 6, 8, 10, 12};
  const int64_t expect_elements[] = {29, 70, 148, 292, 558};
  const int64_t expect_genus[] = {0, 0, 0, 0, 1};
  for (size_t i = 0; i < 5; ++i) {
    CAPTURE(radii[i]);
    PatchStats st = patch_stats(cover_patch(ctx, radii[i], true));
    CHECK(st.radius == radii[i]);
    CHECK(st.elements == expect_elements[i]);
    CHECK(st.genus == expect_genus[i]);
    CHECK(st.orientable);
    CHECK(st.boundary_cycles >= 1);
    CHECK(st.crosscaps == 0);
    // genus from the bordered-surface formula
    CHECK(2 - 2 * st.genus - st.boundary_cycles == st.chi);
    CHECK(st.vertices - st.edges + st.faces == st.chi);
  }

  CHECK_THROWS_AS(patch_stats(cover_patch(ctx, 4, false)), std::invalid_argument);
}

TEST_CASE("patch csv format") {
  MonodromyContext ctx(build_tiling("3.6.3.6"));
  std::vector<PatchStats> rows;
  rows.push_back(patch_stats(cover_patch(ctx, 4, true)));
  rows.push_back(patch_stats(cover_patch(ctx, 6, true)));
  std::string csv = patch_csv(rows);
  CHECK(csv.rfind("r,elements,chi,boundary,genus\n", 0) == 0);
  CHECK(csv.find("\n4,29,") != std::string::npos);
  CHECK(csv.find("\n6,70,") != std::string::npos);
}
