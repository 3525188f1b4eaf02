#include "mapcover/tilings.hpp"

#include <sstream>
#include <stdexcept>

namespace mapcover {

namespace {

struct TilingFixture {
  const char* name;
  int32_t m;
  const int32_t* data; // 3 generators x m cells x (cell, dx, dy)
};

#include "tilings_data.inc"

const TilingFixture* find_fixture(const std::string& name) {
  for (const auto& fx : kTilingFixtures) {
    if (fx.name && name == fx.name) return &fx;
  }
  return nullptr;
}

} // namespace

const std::vector<std::string>& tiling_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& fx : kTilingFixtures) {
      if (fx.name) v.emplace_back(fx.name);
    }
    return v;
  }();
  return names;
}

std::vector<int> parse_vertex_config(const std::string& name) {
  std::vector<int> out;
  std::istringstream is(name);
  std::string part;
  while (std::getline(is, part, '.')) {
    if (part.empty()) throw std::invalid_argument("bad vertex configuration: " + name);
    out.push_back(std::stoi(part));
  }
  if (out.size() < 3) throw std::invalid_argument("bad vertex configuration: " + name);
  return out;
}

bool is_tiling_name(const std::string& name) { return find_fixture(name) != nullptr; }

bool is_regular_tiling(const std::string& name) {
  return name == "4.4.4.4" || name == "3.3.3.3.3.3" || name == "6.6.6";
}

PeriodicMap build_tiling(const std::string& name) {
  const TilingFixture* fx = find_fixture(name);
  if (!fx) throw std::invalid_argument("unknown tiling: " + name);
  PeriodicMap pm;
  pm.name = fx->name;
  pm.m = fx->m;
  const int32_t* p = fx->data;
  for (int i = 0; i < 3; ++i) {
    pm.cell_to[i].resize(static_cast<size_t>(pm.m));
    pm.dt[i].resize(static_cast<size_t>(pm.m));
    for (int32_t c = 0; c < pm.m; ++c) {
      pm.cell_to[i][c] = *p++;
      int32_t dx = *p++;
      int32_t dy = *p++;
      pm.dt[i][c] = {dx, dy};
    }
  }
  ValidationReport rep = validate(pm);
  if (!rep.ok) throw std::logic_error("tiling fixture invalid (" + rep.axiom + "): " + name);
  auto config = parse_vertex_config(name);
  for (int32_t c = 0; c < pm.m; ++c) {
    if (!figure_matches(vertex_figure(pm, {c, 0, 0}), config))
      throw std::logic_error("tiling fixture has wrong vertex figure: " + name);
  }
  return pm;
}

} // namespace mapcover
