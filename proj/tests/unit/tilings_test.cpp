#include "doctest.h"

#include <map>
#include <string>
#include <vector>

#include "mapcover/minimal_cover.hpp"
#include "mapcover/tilings.hpp"

using namespace mapcover;

namespace {

const std::map<std::string, int32_t>& expected_m() {
  static const std::map<std::string, int32_t> table = {
      {"3.3.3.3.3.3", 12}, {"4.4.4.4", 8},   {"6.6.6", 12},
      {"3.3.3.3.6", 60},   {"3.3.3.4.4", 20}, {"3.3.4.3.4", 40},
      {"3.4.6.4", 48},     {"3.6.3.6", 24},   {"3.12.12", 36},
      {"4.6.12", 72},      {"4.8.8", 24},
  };
  return table;
}

const std::map<std::string, int32_t>& expected_orbits() {
  static const std::map<std::string, int32_t> table = {
      {"3.3.3.3.3.3", 1}, {"4.4.4.4", 1},   {"6.6.6", 1},
      {"3.3.3.3.6", 10},  {"3.3.3.4.4", 5}, {"3.3.4.3.4", 5},
      {"3.4.6.4", 4},     {"3.6.3.6", 2},   {"3.12.12", 3},
      {"4.6.12", 6},      {"4.8.8", 3},
  };
  return table;
}

} // namespace

TEST_CASE("the tiling catalogue") {
  const auto& names = tiling_names();
  REQUIRE(names.size() == 11);
  for (const auto& name : names) {
    CHECK(is_tiling_name(name));
    CHECK(expected_m().count(name) == 1);
  }
  CHECK_FALSE(is_tiling_name("5.5.5"));
  CHECK(is_regular_tiling("4.4.4.4"));
  CHECK(is_regular_tiling("3.3.3.3.3.3"));
  CHECK(is_regular_tiling("6.6.6"));
  CHECK_FALSE(is_regular_tiling("3.6.3.6"));
}

TEST_CASE("parse_vertex_config") {
  CHECK(parse_vertex_config("3.6.3.6") == std::vector<int>{3, 6, 3, 6});
  CHECK(parse_vertex_config("3.12.12") == std::vector<int>{3, 12, 12});
  CHECK_THROWS(parse_vertex_config("3..6"));
  CHECK_THROWS(parse_vertex_config(""));
}

TEST_CASE("every tiling builds, validates and matches its vertex figure") {
  for (const auto& name : tiling_names()) {
    CAPTURE(name);
    PeriodicMap pm = build_tiling(name);
    CHECK(pm.m == expected_m().at(name));
    CHECK(pm.name == name);
    CHECK(validate(pm).ok);

    std::vector<int> config = parse_vertex_config(name);
    for (int32_t c = 0; c < pm.m; ++c) {
      CHECK(figure_matches(vertex_figure(pm, {c, 0, 0}), config));
    }
  }
  CHECK_THROWS_AS(build_tiling("7.7.7"), std::invalid_argument);
}

TEST_CASE("automorphism orbit counts") {
  for (const auto& name : tiling_names()) {
    CAPTURE(name);
    AutOrbits orbits = aut_orbits(build_tiling(name));
    CHECK(orbits.k == expected_orbits().at(name));
    // orbit representatives are the lowest cells of their orbits
    for (int32_t o = 0; o < orbits.k; ++o) {
      CHECK(orbits.orbit_of_cell[static_cast<size_t>(orbits.rep_cell[o])] == o);
    }
  }
}

TEST_CASE("pq types follow the vertex configurations") {
  const std::map<std::string, std::pair<int64_t, int64_t>> expected = {
      {"3.3.3.3.3.3", {3, 6}}, {"4.4.4.4", {4, 4}},  {"6.6.6", {6, 3}},
      {"3.3.3.3.6", {6, 5}},   {"3.3.3.4.4", {12, 5}}, {"3.3.4.3.4", {12, 5}},
      {"3.4.6.4", {12, 4}},    {"3.6.3.6", {6, 4}},   {"3.12.12", {12, 3}},
      {"4.6.12", {12, 3}},     {"4.8.8", {8, 3}},
  };
  for (const auto& [name, pq] : expected) {
    CAPTURE(name);
    CHECK(pq_type(build_tiling(name)) == pq);
  }
}

TEST_CASE("branch orders of 3.6.3.6") {
  BranchOrders bo = branch_orders(build_tiling("3.6.3.6"));
  CHECK(bo.p == 6);
  CHECK(bo.q == 4);
  REQUIRE_FALSE(bo.faces.empty());
  bool saw_triangle = false, saw_hexagon = false;
  for (const auto& cls : bo.faces) {
    if (cls.size == 3) {
      CHECK(cls.index == 2);
      saw_triangle = true;
    } else {
      CHECK(cls.size == 6);
      CHECK(cls.index == 1);
      saw_hexagon = true;
    }
  }
  CHECK(saw_triangle);
  CHECK(saw_hexagon);
  for (const auto& cls : bo.vertices) {
    CHECK(cls.size == 4);
    CHECK(cls.index == 1);
  }
}

TEST_CASE("torus quotients are torus maps") {
  for (const std::string name : {"3.6.3.6", "4.4.4.4", "3.12.12"}) {
    CAPTURE(name);
    PeriodicMap pm = build_tiling(name);
    FlagSystem torus = torus_quotient(pm, 2, 3);
    CHECK(torus.n == pm.m * 6);
    CHECK(validate(torus).ok);
    CHECK(euler_characteristic(torus) == 0);
    CHECK(is_orientable(torus));
  }
}

TEST_CASE("periodic map json round trip") {
  PeriodicMap pm = build_tiling("3.4.6.4");
  PeriodicMap back = periodic_map_from_json(to_json(pm));
  CHECK(back == pm);
}

TEST_CASE("periodic steps are involutions with commuting 0 and 2") {
  PeriodicMap pm = build_tiling("4.6.12");
  for (int32_t c = 0; c < pm.m; ++c) {
    PeriodicFlag f{c, 5, -3};
    for (int gen = 0; gen < 3; ++gen) {
      CHECK(pm.step(pm.step(f, gen), gen) == f);
    }
    CHECK(pm.step(pm.step(f, 0), 2) == pm.step(pm.step(f, 2), 0));
  }
}
