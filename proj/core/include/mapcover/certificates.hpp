#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mapcover/ends.hpp"
#include "mapcover/minimal_cover.hpp"
#include "mapcover/monodromy.hpp"
#include "mapcover/word.hpp"

namespace mapcover {

// The two generator words whose monodromy elements are trivial for the
// 3.6.3.6 tiling: a = ((10)^2 12)^4 and b = ((10)^2 2)^6.
Word identification_word_a();
Word identification_word_b();

struct IdentificationReport {
  std::string word_a, word_b;
  bool a_fixes_all = false;
  bool b_fixes_all = false;
  // Proper prefix powers u^j (j < 4) and v^j (j < 6) must not fix all flags.
  std::vector<int64_t> a_fixing_prefix_powers; // expected empty
  std::vector<int64_t> b_fixing_prefix_powers; // expected empty
  bool prefix_powers_ok = false;
  // Both words traced from every deep-enough patch element return to it.
  bool a_closed_walks = false;
  bool b_closed_walks = false;
  int64_t walks_checked = 0;
  int patch_radius = 0;
  int64_t patch_elements = 0;
  bool pass = false;
};

IdentificationReport certify_identifications_363636(const MonodromyContext& ctx,
                                                    int patch_radius,
                                                    size_t cap = kDefaultElementCap);
// The default radius leaves room to trace both words (24 and 30 letters)
// from a thick set of interior elements.
IdentificationReport certify_identifications_363636(int patch_radius = 40,
                                                    size_t cap = kDefaultElementCap);

struct ColorReport {
  bool consistent = false;       // propagation met no conflicting assignment
  bool proper = false;           // the six edges of each complete face have distinct colors
  bool opposite_rule = false;    // opposite edges at 4-valent vertices share color
  bool order_independent = false; // reversed propagation order gives the same colors
  int64_t faces_colored = 0;
  int64_t edges_colored = 0;
  bool pass = false;
};

// Six-colors the edges of the hexagon complex covering 3.6.3.6: within each
// face the colors advance by one per side in rotation order, seeded from the
// entering flag.  The patch must be built with edges.
ColorReport color_dual_edges(const CoverPatch& patch);

struct LocalIsoReport {
  int rho = 0;
  bool found = false;            // some color/generator matching works
  std::array<int, 6> color_to_generator{}; // the successful matching
  int64_t matched_faces = 0;
  bool squares_ok = false;       // odd/even color pairs commute at the root
  bool hex_relation_ok = false;  // both alternating color triples square to closed walks
  bool pass = false;
};

// Matches the colored dual of the cover patch against the labeled Cayley
// graph of H x H (H = <a,b,c | a^2, b^2, c^2, (abc)^2>) on the ball of radius
// rho, trying the 72 parity-respecting color-to-generator bijections.
LocalIsoReport cayley_HxH_local_iso(const CoverPatch& patch, int rho);

struct EulerContradictionReport {
  // 6h + 8 = 4v + 20 once h = (2v + 6)/3, checked as exact polynomials in v.
  bool double_count_identity = false;
  // chi of the filled complex simplifies to 1 - v/3.
  bool chi_form_ok = false;
  // chi = 2 forces v = -3: no nonnegative integer solution.
  int64_t forced_v = 0;
  bool solution_exists = false;
  int64_t scan_bound = 0; // nonnegative v values scanned as a second check
  bool pass = false;
};

// Exact-arithmetic contradiction: no planar filling with v internal 4-valent
// vertices, h hexagons and one octagon can have Euler characteristic 2.
EulerContradictionReport euler_contradiction_check(int64_t scan_bound = 3000);

struct LochNessReport {
  std::string tiling;
  bool dual_side = false; // analyze vertex degrees instead of face sizes
  std::vector<int64_t> sizes; // distinct face sizes (or vertex degrees)
  bool multiple_sizes = false;
  bool branch_index_gt1 = false;
  KernelRankWitness witness;
  bool hypotheses_met = false;
  OneEndReport one_end; // probes on the dual graph of a cover patch
  int dual_patch_radius = 0;
  std::vector<PatchStats> genus_rows;
  bool genus_nondecreasing = false;
  int64_t max_genus = 0;
  std::string verdict;
  bool pass = false;
};

struct LochNessOptions {
  std::vector<int> genus_radii = {4, 6, 8, 10, 12};
  std::vector<std::pair<int32_t, int32_t>> dual_schedule = {{1, 3}, {2, 4}};
  // Annulus probes call on the exact neighbor lists of every face through
  // dual distance R, so the patch must keep faces interior that far.  The
  // radius this takes varies a lot between tilings (roughly half the largest
  // face perimeter per dual step); 0 grows the patch until the schedule is
  // covered, and a positive value is used as given.  Either way the patch
  // stays under `cap` or the run stops with CapExceeded.
  int dual_patch_radius = 0;
  size_t cap = kDefaultElementCap;
};

// Desk-scale certificate that the minimal regular cover of the tiling is a
// one-ended surface of unbounded genus.  Wording stays at "no evidence of a
// second end at the tested scales"; nothing beyond the computed radii is
// claimed.
LochNessReport loch_ness_certify(const std::string& tiling_name,
                                 bool dual_side = false,
                                 const LochNessOptions& opt = {});

} // namespace mapcover
