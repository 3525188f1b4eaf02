#include "doctest.h"

#include <algorithm>

#include "mapcover/flag_system.hpp"

using namespace mapcover;

TEST_CASE("cube flag system") {
  FlagSystem fs = cube();
  REQUIRE(fs.n == 48);
  ValidationReport rep = validate(fs);
  CHECK(rep.ok);
  CHECK(rep.axiom.empty());

  CHECK(cell_orbits(fs, {1, 2}).size() == 8);  // vertices
  CHECK(cell_orbits(fs, {0, 2}).size() == 12); // edges
  CHECK(cell_orbits(fs, {0, 1}).size() == 6);  // faces
  CHECK(euler_characteristic(fs) == 2);
  CHECK(is_orientable(fs));
}

TEST_CASE("triangular prism flag system") {
  FlagSystem fs = triangular_prism();
  REQUIRE(fs.n == 36);
  CHECK(validate(fs).ok);
  CHECK(cell_orbits(fs, {1, 2}).size() == 6);
  CHECK(cell_orbits(fs, {0, 2}).size() == 9);
  CHECK(cell_orbits(fs, {0, 1}).size() == 5);
  CHECK(euler_characteristic(fs) == 2);
  CHECK(is_orientable(fs));
}

TEST_CASE("hemi cube is a projective-plane map") {
  FlagSystem fs = hemi_cube();
  REQUIRE(fs.n == 24);
  CHECK(validate(fs).ok);
  CHECK(cell_orbits(fs, {1, 2}).size() == 4);
  CHECK(cell_orbits(fs, {0, 2}).size() == 6);
  CHECK(cell_orbits(fs, {0, 1}).size() == 3);
  CHECK(euler_characteristic(fs) == 1);
  CHECK_FALSE(is_orientable(fs));
}

TEST_CASE("adjacent walks a word through the flag graph") {
  FlagSystem fs = cube();
  Word w = Word::parse("012");
  int32_t f = adjacent(fs, 0, w);
  int32_t g = fs.adj[2][fs.adj[1][fs.adj[0][0]]];
  CHECK(f == g);
  // every letter is an involution
  for (int gen = 0; gen < 3; ++gen) {
    for (int32_t i = 0; i < fs.n; ++i) {
      CHECK(fs.adj[gen][fs.adj[gen][i]] == i);
      CHECK(fs.adj[gen][i] != i);
    }
  }
}

TEST_CASE("validate rejects broken systems") {
  FlagSystem fs = cube();

  SUBCASE("fixed point") {
    fs.adj[1][0] = 0;
    ValidationReport rep = validate(fs);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.axiom.empty());
  }
  SUBCASE("not an involution") {
    fs.adj[0][fs.adj[0][0]] = fs.adj[0][0] == 1 ? 2 : 1;
    CHECK_FALSE(validate(fs).ok);
  }
  SUBCASE("r0 r2 fails to commute") {
    // swap two targets of adj[2] so the commutation square breaks somewhere
    std::swap(fs.adj[2][0], fs.adj[2][fs.adj[0][fs.adj[2][0]]]);
    CHECK_FALSE(validate(fs).ok);
  }
  SUBCASE("disconnected") {
    FlagSystem two;
    two.n = fs.n * 2;
    for (int gen = 0; gen < 3; ++gen) {
      two.adj[gen].resize(static_cast<size_t>(two.n));
      for (int32_t i = 0; i < fs.n; ++i) {
        two.adj[gen][static_cast<size_t>(i)] = fs.adj[gen][static_cast<size_t>(i)];
        two.adj[gen][static_cast<size_t>(i + fs.n)] =
            fs.adj[gen][static_cast<size_t>(i)] + fs.n;
      }
    }
    ValidationReport rep = validate(two);
    CHECK_FALSE(rep.ok);
    CHECK(rep.axiom == "connected");
  }
}

TEST_CASE("build_from_faces checks edge usage") {
  // two triangles glued along all three edges: a sphere-like pillow
  FlagSystem pillow = build_from_faces(3, {{0, 1, 2}, {0, 2, 1}});
  CHECK(pillow.n == 12);
  CHECK(validate(pillow).ok);
  CHECK(euler_characteristic(pillow) == 2);

  // an edge appearing once only
  CHECK_THROWS_AS(build_from_faces(3, {{0, 1, 2}}), std::invalid_argument);
  // an edge appearing three times
  CHECK_THROWS_AS(build_from_faces(4, {{0, 1, 2}, {0, 1, 3}, {0, 1, 2}}),
                  std::invalid_argument);
}

TEST_CASE("flag system json round trip") {
  FlagSystem fs = triangular_prism();
  std::string text = to_json(fs);
  FlagSystem back = flag_system_from_json(text);
  CHECK(back.n == fs.n);
  CHECK(back.adj == fs.adj);
  CHECK(validate(back).ok);
}

TEST_CASE("flag system dot output") {
  std::string dot = to_dot(hemi_cube());
  CHECK(dot.find("graph") != std::string::npos);
  CHECK(dot.find("label") != std::string::npos);
}

TEST_CASE("hemi cube is the antipodal quotient of the cube") {
  FlagSystem c = cube();
  FlagSystem h = hemi_cube();
  // the quotient halves every cell count
  CHECK(h.n * 2 == c.n);
  CHECK(cell_orbits(h, {1, 2}).size() * 2 == cell_orbits(c, {1, 2}).size());
}
