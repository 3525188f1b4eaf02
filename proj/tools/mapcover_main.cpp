// mapcover: command-line front end for the map/cover toolkit.
//
// Exit status: 0 when the requested check passes (or the computation
// succeeds), 1 when a certificate or verdict fails, 2 on usage errors,
// 3 when a resource cap stops the run.  MAPCOVER_MAX_ELEMENTS overrides
// the default element/node cap.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mapcover/certificates.hpp"
#include "mapcover/ends.hpp"
#include "mapcover/flag_system.hpp"
#include "mapcover/minimal_cover.hpp"
#include "mapcover/monodromy.hpp"
#include "mapcover/periodic_map.hpp"
#include "mapcover/tilings.hpp"
#include "mapcover/word.hpp"

using namespace mapcover;

namespace {

size_t effective_cap() {
  if (const char* env = std::getenv("MAPCOVER_MAX_ELEMENTS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
    throw std::invalid_argument(
        "MAPCOVER_MAX_ELEMENTS must be a positive integer");
  }
  return kDefaultElementCap;
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-" || path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

FlagSystem finite_map_by_name(const std::string& name) {
  if (name == "cube") return cube();
  if (name == "triangular_prism" || name == "prism") return triangular_prism();
  if (name == "hemi_cube") return hemi_cube();
  throw std::invalid_argument(
      "unknown finite map '" + name +
      "' (expected cube, triangular_prism or hemi_cube)");
}

std::string vec2_str(const std::array<int32_t, 2>& v) {
  return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + ")";
}

std::string element_str(const MonodromyContext& ctx, const MonElement& e) {
  std::ostringstream os;
  for (size_t i = 0; i < e.sigma.size(); ++i) {
    if (i) os << " ";
    const AlphaRef& a = e.alpha[i];
    os << i << "->" << static_cast<int>(e.sigma[i]) << ":";
    if (ctx.alpha_is_translation(a)) {
      os << "T(" << a.tx << "," << a.ty << ")";
    } else {
      os << "A" << a.base_cell << "+(" << a.tx << "," << a.ty << ")";
    }
  }
  return os.str();
}

std::vector<std::pair<int32_t, int32_t>> parse_schedule(const std::string& text) {
  std::vector<std::pair<int32_t, int32_t>> schedule;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("schedule entries look like r:R");
    }
    int r = std::stoi(item.substr(0, colon));
    int R = std::stoi(item.substr(colon + 1));
    if (!(0 <= r && r < R)) {
      throw std::invalid_argument("schedule entries need 0 <= r < R");
    }
    if (!schedule.empty() && schedule.back().first >= r) {
      throw std::invalid_argument("schedule radii must be strictly increasing");
    }
    schedule.push_back({r, R});
  }
  if (schedule.empty()) throw std::invalid_argument("empty schedule");
  return schedule;
}

std::vector<int> parse_radii(const std::string& text) {
  std::vector<int> radii;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int r = std::stoi(item);
    if (r < 0) throw std::invalid_argument("radii must be nonnegative");
    if (!radii.empty() && radii.back() >= r) {
      throw std::invalid_argument("radii must be strictly increasing");
    }
    radii.push_back(r);
  }
  if (radii.empty()) throw std::invalid_argument("empty radius list");
  return radii;
}

// Graph selector grammar: line | grid | tree:D | hex | hxh |
// hyperbolic:P,Q | flags:TILING | dual:TILING[:PATCH_RADIUS].
template <class Fn>
int with_graph(const std::string& selector, size_t cap, Fn&& fn) {
  if (selector == "line") return fn(LineGraph{});
  if (selector == "grid") return fn(GridGraph{});
  if (selector == "hex") return fn(HexCayleyH{});
  if (selector == "hxh") {
    return fn(ProductGraph<HexCayleyH, HexCayleyH>{HexCayleyH{}, HexCayleyH{}});
  }
  auto colon = selector.find(':');
  std::string head = selector.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : selector.substr(colon + 1);
  if (head == "tree") {
    return fn(TreeGraph(std::stoi(rest)));
  }
  if (head == "hyperbolic") {
    auto comma = rest.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("hyperbolic graphs look like hyperbolic:P,Q");
    }
    return fn(HyperbolicFlagGraph(std::stoi(rest.substr(0, comma)),
                                  std::stoi(rest.substr(comma + 1)), cap));
  }
  if (head == "flags") {
    return fn(FlagGraphOf{build_tiling(rest)});
  }
  if (head == "dual") {
    auto colon2 = rest.find(':');
    std::string tiling = rest.substr(0, colon2);
    int radius = colon2 == std::string::npos ? 32
                                             : std::stoi(rest.substr(colon2 + 1));
    MonodromyContext ctx(build_tiling(tiling));
    CoverPatch patch = cover_patch(ctx, radius, true, cap);
    return fn(DualGraphOf(patch));
  }
  throw std::invalid_argument(
      "unknown graph '" + selector +
      "' (expected line, grid, tree:D, hex, hxh, hyperbolic:P,Q, "
      "flags:TILING or dual:TILING[:RADIUS])");
}

// ------------------------------------------------------------------ commands

struct BuildArgs {
  std::string tiling, map, json_out, dot_out;
};

int run_build(const BuildArgs& a) {
  if (a.tiling.empty() == a.map.empty()) {
    throw std::invalid_argument("pass exactly one of --tiling or --map");
  }
  if (!a.tiling.empty()) {
    PeriodicMap pm = build_tiling(a.tiling);
    AutOrbits orbits = aut_orbits(pm);
    auto [p, q] = pq_type(pm);
    std::printf("tiling=%s flags_per_cell=%d aut_orbits=%d p=%lld q=%lld\n",
                pm.name.c_str(), pm.m, orbits.k, static_cast<long long>(p),
                static_cast<long long>(q));
    if (!a.json_out.empty()) write_output(a.json_out, to_json(pm));
    if (!a.dot_out.empty()) {
      throw std::invalid_argument("--dot applies to finite maps (--map)");
    }
    return 0;
  }
  FlagSystem fs = finite_map_by_name(a.map);
  int64_t chi = euler_characteristic(fs);
  std::printf("map=%s flags=%d chi=%lld orientable=%d\n", a.map.c_str(), fs.n,
              static_cast<long long>(chi), is_orientable(fs) ? 1 : 0);
  if (!a.json_out.empty()) write_output(a.json_out, to_json(fs));
  if (!a.dot_out.empty()) write_output(a.dot_out, to_dot(fs));
  return 0;
}

struct ValidateArgs {
  std::string tiling, map, json_in;
};

int run_validate(const ValidateArgs& a) {
  int sources = (!a.tiling.empty()) + (!a.map.empty()) + (!a.json_in.empty());
  if (sources != 1) {
    throw std::invalid_argument("pass exactly one of --tiling, --map, --in");
  }
  ValidationReport rep;
  std::string what;
  if (!a.tiling.empty()) {
    rep = validate(build_tiling(a.tiling));
    what = a.tiling;
  } else if (!a.map.empty()) {
    rep = validate(finite_map_by_name(a.map));
    what = a.map;
  } else {
    std::ifstream in(a.json_in, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + a.json_in);
    std::stringstream buf;
    buf << in.rdbuf();
    rep = validate(flag_system_from_json(buf.str()));
    what = a.json_in;
  }
  if (rep.ok) {
    std::printf("%s: valid\n", what.c_str());
    return 0;
  }
  std::printf("%s: INVALID axiom=%s witness=%d\n", what.c_str(),
              rep.axiom.c_str(), rep.witness);
  return 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"map/cover toolkit: flag systems, monodromy, covers, ends"};
  app.require_subcommand(1);

  size_t cap = 0;
  try {
    cap = effective_cap();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  // ---- build
  BuildArgs build_args;
  CLI::App* cmd_build = app.add_subcommand("build", "build a tiling or finite map");
  cmd_build->add_option("--tiling", build_args.tiling,
                        "vertex configuration, e.g. 3.6.3.6");
  cmd_build->add_option("--map", build_args.map,
                        "finite map: cube, triangular_prism, hemi_cube");
  cmd_build->add_option("--json", build_args.json_out,
                        "write the JSON encoding to this path ('-' = stdout)");
  cmd_build->add_option("--dot", build_args.dot_out,
                        "write the flag graph in DOT (finite maps only)");

  // ---- validate
  ValidateArgs validate_args;
  CLI::App* cmd_validate =
      app.add_subcommand("validate", "check the flag-system axioms");
  cmd_validate->add_option("--tiling", validate_args.tiling, "tiling name");
  cmd_validate->add_option("--map", validate_args.map, "finite map name");
  cmd_validate->add_option("--in", validate_args.json_in,
                           "flag system JSON file");

  // ---- mon
  CLI::App* cmd_mon =
      app.add_subcommand("mon", "monodromy elements of a periodic tiling");
  cmd_mon->require_subcommand(1);
  std::string mon_tiling, mon_word;
  int64_t mon_max_power = 0;

  CLI::App* mon_eval = cmd_mon->add_subcommand(
      "eval", "evaluate a word to orbit permutation + per-orbit motion");
  mon_eval->add_option("--tiling", mon_tiling)->required();
  mon_eval->add_option("--word", mon_word, "letters 0/1/2, (..)^k powers")
      ->required();

  CLI::App* mon_fixes = cmd_mon->add_subcommand(
      "fixes-all", "does the word fix every flag? (exit 0 iff true)");
  mon_fixes->add_option("--tiling", mon_tiling)->required();
  mon_fixes->add_option("--word", mon_word)->required();

  CLI::App* mon_tp = cmd_mon->add_subcommand(
      "translation-power",
      "smallest power acting by pure lattice translations");
  mon_tp->add_option("--tiling", mon_tiling)->required();
  mon_tp->add_option("--word", mon_word)->required();
  mon_tp->add_option("--max-power", mon_max_power, "search bound (0 = default)");

  CLI::App* mon_witness = cmd_mon->add_subcommand(
      "witness", "two commuting independent translation kernel elements");
  mon_witness->add_option("--tiling", mon_tiling)->required();

  // ---- cover
  CLI::App* cmd_cover =
      app.add_subcommand("cover", "minimal regular cover and its patches");
  cmd_cover->require_subcommand(1);
  std::string cover_map, cover_tiling, cover_json, cover_csv;
  std::string cover_radii_text = "4,6,8,10,12";
  CLI::App* cover_finite = cmd_cover->add_subcommand(
      "finite", "minimal regular cover of a finite map");
  cover_finite->add_option("--map", cover_map)->required();
  cover_finite->add_option("--json", cover_json,
                           "write the cover's JSON encoding");
  CLI::App* cover_patch_cmd = cmd_cover->add_subcommand(
      "patch", "grow cover patches and report their surface invariants");
  cover_patch_cmd->add_option("--tiling", cover_tiling)->required();
  cover_patch_cmd->add_option("--radii", cover_radii_text,
                              "strictly increasing list, e.g. 4,6,8");
  cover_patch_cmd->add_option("--csv", cover_csv,
                              "write 'r,elements,chi,boundary,genus' rows");

  // ---- ends
  CLI::App* cmd_ends = app.add_subcommand("ends", "end structure of graphs");
  cmd_ends->require_subcommand(1);
  std::string ends_graph, ends_schedule_text, ends_dot;
  int32_t ends_r = 0, ends_R = 0;
  CLI::App* ends_probe_cmd = cmd_ends->add_subcommand(
      "probe", "count annulus components between radii r and R");
  ends_probe_cmd
      ->add_option("--graph", ends_graph,
                   "line|grid|tree:D|hex|hxh|hyperbolic:P,Q|flags:TILING|"
                   "dual:TILING[:RADIUS]")
      ->required();
  ends_probe_cmd->add_option("--r", ends_r)->required();
  ends_probe_cmd->add_option("--R", ends_R)->required();
  ends_probe_cmd->add_option("--dot", ends_dot,
                             "also write the radius-R ball in DOT");
  CLI::App* ends_certify_cmd = cmd_ends->add_subcommand(
      "certify", "one-end certificate over a probe schedule");
  ends_certify_cmd->add_option("--graph", ends_graph)->required();
  ends_certify_cmd->add_option("--schedule", ends_schedule_text,
                               "comma list of r:R (default 2:6,4:10,6:14,8:18)");

  // ---- certify
  CLI::App* cmd_certify =
      app.add_subcommand("certify", "desk-scale certificates");
  cmd_certify->require_subcommand(1);
  int cert_radius = 40;
  int64_t cert_scan = 3000;
  std::string cert_tiling, cert_genus_radii_text, cert_schedule_text;
  int cert_dual_patch_radius = 0;
  bool cert_dual_hypothesis = false;
  CLI::App* cert_words = cmd_certify->add_subcommand(
      "363636", "identification words fix all flags of 3.6.3.6");
  cert_words->add_option("--radius", cert_radius, "patch radius (>= 40)");
  CLI::App* cert_euler = cmd_certify->add_subcommand(
      "euler", "no planar filling reaches Euler characteristic 2");
  cert_euler->add_option("--scan", cert_scan, "extra nonnegative scan bound");
  CLI::App* cert_loch = cmd_certify->add_subcommand(
      "loch-ness", "one end + growing genus for a tiling's cover");
  cert_loch->add_option("--tiling", cert_tiling)->required();
  cert_loch->add_flag("--dual-hypothesis", cert_dual_hypothesis,
                      "analyze vertex degrees instead of face sizes");
  cert_loch->add_option("--genus-radii", cert_genus_radii_text,
                        "patch radii for the genus table (default 4,6,8,10,12)");
  cert_loch->add_option("--dual-schedule", cert_schedule_text,
                        "probe schedule r:R,... (default 1:3,2:4)");
  cert_loch->add_option("--dual-patch-radius", cert_dual_patch_radius,
                        "patch radius behind the dual probes (0 = grow)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_build->parsed()) return run_build(build_args);
    if (cmd_validate->parsed()) return run_validate(validate_args);

    if (cmd_mon->parsed()) {
      MonodromyContext ctx(build_tiling(mon_tiling));
      if (mon_eval->parsed()) {
        MonElement e = ctx.evaluate(Word::parse(mon_word));
        std::printf("orbits=%d identity=%d\n", ctx.k(),
                    ctx.is_identity(e) ? 1 : 0);
        std::printf("%s\n", element_str(ctx, e).c_str());
        return 0;
      }
      if (mon_fixes->parsed()) {
        bool fixes = ctx.fixes_all_flags(Word::parse(mon_word));
        std::printf("%s\n", fixes ? "true" : "false");
        return fixes ? 0 : 1;
      }
      if (mon_tp->parsed()) {
        TranslationPowerResult res = translation_power(
            ctx, ctx.evaluate(Word::parse(mon_word)), mon_max_power);
        if (!res.found) {
          std::printf("found=0\n");
          return 1;
        }
        std::printf("found=1 power=%lld trivial=%d\n",
                    static_cast<long long>(res.power), res.trivial ? 1 : 0);
        for (size_t i = 0; i < res.vectors.size(); ++i) {
          std::printf("orbit %zu translation=%s\n", i,
                      vec2_str(res.vectors[i]).c_str());
        }
        return 0;
      }
      if (mon_witness->parsed()) {
        KernelRankWitness w = kernel_rank_witness(ctx);
        if (!w.found) {
          std::printf("found=0\n");
          return 1;
        }
        bool comm = commutator_is_trivial(ctx, w.w1, w.k1, w.w2, w.k2);
        std::printf("found=1 w1=%s k1=%lld w2=%s k2=%lld\n", w.w1.str().c_str(),
                    static_cast<long long>(w.k1), w.w2.str().c_str(),
                    static_cast<long long>(w.k2));
        for (size_t i = 0; i < w.va.size(); ++i) {
          std::printf("orbit %zu a=%s b=%s\n", i, vec2_str(w.va[i]).c_str(),
                      vec2_str(w.vb[i]).c_str());
        }
        std::printf("commute=%d independent=%d commutator_trivial=%d\n",
                    w.commute ? 1 : 0, w.independent ? 1 : 0, comm ? 1 : 0);
        return (w.commute && w.independent && comm) ? 0 : 1;
      }
    }

    if (cmd_cover->parsed()) {
      if (cover_finite->parsed()) {
        FlagSystem base = finite_map_by_name(cover_map);
        CoverResult res = finite_cover(base, cap);
        int64_t chi = euler_characteristic(res.cover);
        bool orient = is_orientable(res.cover);
        std::printf("flags=%d chi=%lld orientable=%d isomorphic_to_base=%d\n",
                    res.cover.n, static_cast<long long>(chi), orient ? 1 : 0,
                    is_isomorphic(res.cover, base) ? 1 : 0);
        if (!cover_json.empty()) write_output(cover_json, to_json(res.cover));
        return 0;
      }
      MonodromyContext ctx(build_tiling(cover_tiling));
      std::vector<PatchStats> rows;
      for (int r : parse_radii(cover_radii_text)) {
        rows.push_back(patch_stats(cover_patch(ctx, r, true, cap)));
      }
      for (const PatchStats& st : rows) {
        std::printf(
            "r=%d elements=%lld chi=%lld boundary=%lld genus=%lld "
            "orientable=%d\n",
            st.radius, static_cast<long long>(st.elements),
            static_cast<long long>(st.chi),
            static_cast<long long>(st.boundary_cycles),
            static_cast<long long>(st.genus), st.orientable ? 1 : 0);
      }
      if (!cover_csv.empty()) write_output(cover_csv, patch_csv(rows));
      return 0;
    }

    if (cmd_ends->parsed()) {
      if (ends_probe_cmd->parsed()) {
        return with_graph(ends_graph, cap, [&](const auto& g) {
          int64_t c = ends_probe(g, ends_r, ends_R, cap);
          std::printf("components=%lld\n", static_cast<long long>(c));
          if (!ends_dot.empty()) write_output(ends_dot, ball_dot(g, ends_R, cap));
          return 0;
        });
      }
      auto schedule = ends_schedule_text.empty()
                          ? default_probe_schedule()
                          : parse_schedule(ends_schedule_text);
      return with_graph(ends_graph, cap, [&](const auto& g) {
        OneEndReport rep = one_end_certificate(g, schedule, cap);
        for (const EndsProbeRow& row : rep.rows) {
          std::printf("r=%d R=%d components=%lld\n", row.r, row.R,
                      static_cast<long long>(row.components));
        }
        std::printf("one_end=%s\n", rep.pass ? "pass" : "fail");
        return rep.pass ? 0 : 1;
      });
    }

    if (cmd_certify->parsed()) {
      if (cert_words->parsed()) {
        IdentificationReport rep = certify_identifications_363636(cert_radius, cap);
        std::printf("word_a=%s fixes_all=%d\n", rep.word_a.c_str(),
                    rep.a_fixes_all ? 1 : 0);
        std::printf("word_b=%s fixes_all=%d\n", rep.word_b.c_str(),
                    rep.b_fixes_all ? 1 : 0);
        std::printf(
            "prefix_powers_ok=%d closed_walks_a=%d closed_walks_b=%d "
            "walks_checked=%lld patch_radius=%d patch_elements=%lld\n",
            rep.prefix_powers_ok ? 1 : 0, rep.a_closed_walks ? 1 : 0,
            rep.b_closed_walks ? 1 : 0,
            static_cast<long long>(rep.walks_checked), rep.patch_radius,
            static_cast<long long>(rep.patch_elements));
        std::printf("certificate=%s\n", rep.pass ? "pass" : "fail");
        return rep.pass ? 0 : 1;
      }
      if (cert_euler->parsed()) {
        EulerContradictionReport rep = euler_contradiction_check(cert_scan);
        std::printf(
            "double_count_identity=%d chi_form_ok=%d forced_v=%lld "
            "solution_exists=%d scan_bound=%lld\n",
            rep.double_count_identity ? 1 : 0, rep.chi_form_ok ? 1 : 0,
            static_cast<long long>(rep.forced_v), rep.solution_exists ? 1 : 0,
            static_cast<long long>(rep.scan_bound));
        std::printf("certificate=%s\n", rep.pass ? "pass" : "fail");
        return rep.pass ? 0 : 1;
      }
      LochNessOptions opt;
      opt.cap = cap;
      if (!cert_genus_radii_text.empty()) {
        opt.genus_radii = parse_radii(cert_genus_radii_text);
      }
      if (!cert_schedule_text.empty()) {
        opt.dual_schedule = parse_schedule(cert_schedule_text);
      }
      opt.dual_patch_radius = cert_dual_patch_radius;
      LochNessReport rep =
          loch_ness_certify(cert_tiling, cert_dual_hypothesis, opt);
      std::printf("tiling=%s side=%s hypotheses_met=%d\n", rep.tiling.c_str(),
                  rep.dual_side ? "dual" : "primal", rep.hypotheses_met ? 1 : 0);
      if (rep.hypotheses_met) {
        for (const EndsProbeRow& row : rep.one_end.rows) {
          std::printf("dual probe r=%d R=%d components=%lld\n", row.r, row.R,
                      static_cast<long long>(row.components));
        }
        std::printf("dual_patch_radius=%d one_end=%d\n", rep.dual_patch_radius,
                    rep.one_end.pass ? 1 : 0);
        for (const PatchStats& st : rep.genus_rows) {
          std::printf("genus r=%d elements=%lld genus=%lld\n", st.radius,
                      static_cast<long long>(st.elements),
                      static_cast<long long>(st.genus));
        }
      }
      std::printf("verdict: %s\n", rep.verdict.c_str());
      return rep.pass ? 0 : 1;
    }
  } catch (const CapExceeded& e) {
    std::fprintf(stderr, "resource cap: %s\n", e.what());
    return 3;
  } catch (const WordParseError& e) {
    std::fprintf(stderr, "word syntax: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
