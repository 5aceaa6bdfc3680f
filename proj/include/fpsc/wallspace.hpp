#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fpsc/cube_complex.hpp"
#include "fpsc/necklace.hpp"

namespace fpsc {

// One wall of a necklace: the hyperplanes dual to an antipodal pair of edges
// of the circle w. Usually two hyperplane classes; one when both edges happen
// to lie in the same class.
struct AntipodalWall {
  int position = -1;                // index j of the wall's first edge in the pairing circle
  std::vector<int> circle_edges;    // the two paired edge ids
  std::vector<int> hyperplane_ids;  // deduplicated ids into the structure's hyperplane list
};

struct AntipodalWallStructure {
  std::vector<Hyperplane> hyps;   // hyperplane partition of the whole complex
  std::vector<AntipodalWall> walls;
  std::vector<int> circle;        // edges that were paired, in cyclic order
  bool letter_edges_only = false;
};

// Pair edge j of the circle with edge j + L, L = (circle length)/2. With
// letter_edges_only the pairing runs over the subsequence of block edges of w
// instead of the full circle. Odd circle length is an input error (the caller
// must subdivide further to even it out).
AntipodalWallStructure antipodal_walls(const NecklaceComplex& Y,
                                       bool letter_edges_only = false);

// Wallspace condition (1): each wall's hyperplanes are embedded and pairwise
// neither cross nor osculate.
bool check_b8_condition1(const NecklaceComplex& Y, const AntipodalWallStructure& W);

// Circle-edge shifts r (0 <= r < |w|) that rotate the necklace onto itself
// with matching edge images in the wedge. Always contains 0. A label match
// along w forces matching blocks and arcs, so each shift extends to an
// automorphism of the whole necklace over the wedge.
std::vector<long long> necklace_symmetry_rotations(const NecklaceComplex& Y);

// Wallspace condition (3): every label-preserving rotation maps walls to walls.
bool check_b8_condition3(const NecklaceComplex& Y, const AntipodalWallStructure& W);

// Closed-form wall data for a necklace that is a plain circle, keyed by its
// length alone: every hyperplane is a single edge, a wall's two edges share a
// vertex only when the circle is shorter than 4, and rotations always respect
// the antipodal pairing.
struct CircleWallSummary {
  long long circle_length = 0;
  long long wall_count = 0;
  bool even = false;
  bool condition1 = false;
  bool condition3 = true;
};
CircleWallSummary circle_wall_summary(long long circle_length);

// Abstract finite wallspace: points 0..num_points-1, each wall a bipartition
// into two nonempty halfspaces.
struct FiniteWallspace {
  long long num_points = 0;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> walls;

  void validate() const;  // sides nonempty and disjoint, union the ground set
};

// Ground set = vertices of Y; each wall's sides are the two components of Y
// minus its hyperplanes' dual edges. A wall that does not cut Y into exactly
// two components violates condition (1) and is an input error.
FiniteWallspace restrict_wallspace(const NecklaceComplex& Y,
                                   const AntipodalWallStructure& W);

// m "a-walls" and m "b-walls", all 2m pairwise crossing, realized on the
// 2^(2m) sign vectors. Mirrors the wall pattern of a flat.
FiniteWallspace flat_wallspace(int m);

// Adjacency matrix: walls cross when all four quarter-space intersections are
// nonempty.
std::vector<std::vector<bool>> crossing_graph(const FiniteWallspace& W);

// Finite Sageev dual. 0-cubes are orientations picking one side per wall with
// all chosen sides pairwise intersecting, stored as bitmasks (bit w set =
// wall w oriented to its second side). Edges join orientations differing on
// exactly one wall.
struct DualCubeComplex {
  int num_walls = 0;
  std::vector<unsigned> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<bool>> crossing;
  int dimension = 0;
  bool connected = false;
};

// Full orientation enumeration; at most 20 walls (resource error above).
DualCubeComplex dual_cube_complex(const FiniteWallspace& W);

// Max clique of the crossing graph realized by the flippable walls at some
// 0-cube; equals the dual's cube dimension.
int dual_dimension(const FiniteWallspace& W);

// Every 0-cube triple has its wall-wise majority orientation as a 0-cube.
// Any vertex lying between all three pairs must take the majority side on
// every wall, so that majority vertex is the unique median when it exists.
bool median_check(const DualCubeComplex& D);

// Text format:
//   fpsc-wallspace 1
//   points <N>
//   wall <N signs, '+' for the first side, '-' for the second>
std::string write_wallspace(const FiniteWallspace& W);
FiniteWallspace parse_wallspace(std::istream& in);
FiniteWallspace parse_wallspace_string(const std::string& text);

std::string dot_crossing_graph(const FiniteWallspace& W);

}  // namespace fpsc
