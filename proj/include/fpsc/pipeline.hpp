#pragma once

#include <string>
#include <vector>

#include "fpsc/necklace.hpp"
#include "fpsc/pieces.hpp"
#include "fpsc/presentation.hpp"
#include "fpsc/wallspace.hpp"

namespace fpsc {

inline constexpr long long kDefaultConeCellCap = 5'000'000;

// Piece data reduced to what the subdivision inequalities consume: one entry
// per (piece, cone) incidence carrying the syllable span ell and the piece
// letter count. When exhaustive enumeration is out of reach, the entries fall
// back to one certified per-relator upper bound each (exact = false, letters
// unknown).
struct ConeEntryProfile {
  int relator = 0;
  long long ell = 0;
  long long letters = -1;
  bool exact = true;
};
struct PieceProfile {
  bool exact = true;
  std::vector<ConeEntryProfile> entries;
};
PieceProfile build_piece_profile(const Presentation& p);

// One cone Y_i: closed-form stats always, the complex itself only when its
// cell count fits the cap.
struct ConeInfo {
  FPWord relator;
  NecklaceStats stats;
  long long sys = 0;    // stats.systole(q) of the owning presentation
  long long cells = 0;  // necklace cell count at that q
  bool materialized = false;
  NecklaceComplex necklace;  // valid only when materialized
};

// X* at a fixed subdivision q: the wedge, the cones, and the piece profile.
struct CubicalPresentation {
  Presentation pres;
  long long q = 1;
  LongWedge wedge;
  std::vector<ConeInfo> cones;
  PieceProfile profile;
};

CubicalPresentation build_cubical_presentation(const Presentation& p, long long q,
                                               long long cone_cell_cap = kDefaultConeCellCap);

// The proof-grade diameter data for every piece incidence at the fixed q:
// bound = ell*M_i + q*ell_prime with ell_prime = 2*(ell - 1), and the exact
// realized diameter letters + 2q(ell - 1) when the letters are known.
struct ConePieceEntry {
  int relator = 0;
  long long ell = 0;
  long long ell_prime = 0;
  long long bound = 0;
  long long exact_diameter = -1;
  bool exact = false;
};
std::vector<ConePieceEntry> cone_piece_diameters(const CubicalPresentation& xs);

// M_i: the certified wall-piece diameter bound of a cone.
inline long long wall_piece_bound(const NecklaceStats& stats) {
  return stats.max_block_diameter;
}

struct ConeCPrimeReport {
  int relator = 0;
  long long sys = 0;
  long long wall_bound = 0;
  long long worst_cone_bound = 0;  // 0 when the cone meets no pieces
  bool cone_ok = true;
  bool wall_ok = true;
};
struct CubicalPresentationReport {
  int alpha_den = 0;
  long long q = 1;
  bool passed = false;
  bool exact = true;
  // Worst diameter/systole ratio over all cone-piece and wall-piece checks.
  long long achieved_num = 0;
  long long achieved_den = 1;
  std::vector<ConeCPrimeReport> cones;
  std::vector<std::string> notes;
};
CubicalPresentationReport check_cubical_cprime(const CubicalPresentation& xs, int alpha_den);

// The inequality battery behind choose_subdivision, evaluated at one q:
// q > n*M_i, n*M_i < sys_i(q), and n*(ell*M_i + 2q(ell-1)) < sys_i(q) for
// every piece incidence.
struct SubdivisionCheck {
  long long q = 1;
  bool ok = false;
  std::vector<std::string> failures;
};
SubdivisionCheck verify_subdivision(const Presentation& p, int n, long long q);

// Smallest q passing the battery. Requires check_cstar(p, n) to pass; the
// returned q is re-verified through check_cubical_cprime.
long long choose_subdivision(const Presentation& p, int n);

// Per-cone hypotheses of the properness theorem, with the carrier-diameter
// comparison fixed at sys/20. Circle cones are decided by the closed form
// (their hyperplanes are single edges with path complements); other cones
// need the materialized complex and get the full per-hyperplane treatment.
struct ConePropernessReport {
  int relator = 0;
  bool structural = false;
  long long hyperplane_count = 0;
  long long worst_carrier_diameter = 0;
  bool carriers_embedded = true;
  bool carrier_diameter_ok = true;
  bool complements_connected = true;
  bool complements_zero_winding = true;
  bool complements_simply_connected = true;
  bool ok = false;
  std::vector<std::string> failures;
};
struct PropernessReport {
  long long q = 1;
  bool ok = false;
  std::vector<ConePropernessReport> cones;
};
PropernessReport check_properness_hypotheses(const CubicalPresentation& xs);

// True iff R is not v^p for any p >= 2, at syllable level with single-syllable
// words checked inside their factor. A necessary condition for <R> to be
// maximal cyclic, reported as such and never as a full certificate.
bool proper_power_check(const FPWord& R);

// Antipodal wall checks per cone: real on materialized complexes, closed-form
// on unmaterialized circle cones. An unmaterialized non-circle cone is a
// resource error.
struct ConeWallReport {
  int relator = 0;
  bool structural = false;
  long long circle_length = 0;
  bool even = false;
  long long wall_count = 0;
  long long letter_wall_count = -1;  // -1 when the letter circle is odd
  bool b8_condition1 = false;
  bool b8_condition3 = false;
  long long symmetry_count = 1;  // label-preserving rotations, identity included
};
std::vector<ConeWallReport> check_cone_walls(const CubicalPresentation& xs);

// Whole pipeline: star condition, proper-power flags, subdivision (chosen or
// overridden), cubical C'(1/n), properness hypotheses, and wall checks.
struct BuildReport {
  int n = 0;
  long long q = 1;
  bool q_overridden = false;
  bool q_chosen = false;  // false when the star condition failed and no override was given
  StarReport star;
  std::vector<bool> relator_not_proper_power;
  bool proper_powers_ok = true;
  CubicalPresentationReport cubical;
  PropernessReport properness;
  std::vector<ConeWallReport> walls;
  bool ok = false;
  std::vector<std::string> notes;
};
BuildReport run_build(const Presentation& p, int n, long long q_override = 0,
                      long long cone_cell_cap = kDefaultConeCellCap);

}  // namespace fpsc
