#pragma once

#include <vector>

#include "fpsc/cube_complex.hpp"
#include "fpsc/word.hpp"

namespace fpsc {

// Wedge of factor complexes hung on a star of arms, each arm subdivided into
// q edges. Free factors become roses; free-abelian factors of rank 1 or 2
// become a circle or a one-square torus. Rank >= 3 free-abelian factors are
// rejected: their blocks would need cubes of dimension >= 3.
struct LongWedge {
  CubeComplex complex;
  int q = 1;
  int basepoint = 0;
  std::vector<FactorDescriptor> factors;
  std::vector<int> factor_base;              // arm tip vertex per factor
  std::vector<std::vector<int>> arm_edges;   // basepoint -> tip, q edges each
  std::vector<std::vector<int>> gen_loops;   // per factor: loop edge per generator
};

LongWedge build_long_wedge(const std::vector<FactorDescriptor>& factors, int q);

// Convex hull of one syllable: a path for free syllables, a box for
// free-abelian ones. Vertices/edges index into the owning necklace complex.
struct HullBlock {
  int syllable = -1;
  int initial = -1, terminal = -1;
  std::vector<int> vertices;
  std::vector<int> edges;
  int diam = 0;  // equals the syllable letter length
  bool is_path = false;
};

// Cyclically alternating hull blocks and arcs of 2q edges, with the induced
// map to the wedge, a winding-degree labeling, and the geodesic circle w.
struct NecklaceComplex {
  CubeComplex complex;
  CombMap to_wedge;
  DegreeLabeling degree;
  std::vector<HullBlock> blocks;
  std::vector<std::vector<int>> arcs;
  std::vector<int> circle_edges;
  std::vector<bool> circle_is_letter;  // true on block edges of w, false on arcs
  FPWord relator;
  std::vector<FactorDescriptor> factors;
  int q = 1;
};

NecklaceComplex build_necklace(const FPWord& R, const LongWedge& X);

// Closed-form data of the necklace for R, available without materializing.
struct NecklaceStats {
  int syllables = 0;
  long long letters = 0;
  long long max_block_diameter = 0;  // M_i
  bool is_circle_cone = false;       // all blocks are paths, so Y is a circle

  long long systole(long long q) const { return letters + 2 * q * syllables; }
};

NecklaceStats necklace_stats(const FPWord& R);

// Cell count of the necklace for R at subdivision q, for capacity decisions.
long long necklace_cell_count(const FPWord& R, long long q);

// Rebuild Y's relator at subdivision q, measure the systole by BFS on the
// cyclic cover, and assert it equals sys(Y) + 2|R|_*(q-1). Y must have been
// built at subdivision 1.
int systole_of_necklace(const NecklaceComplex& Y, int q);

}  // namespace fpsc
