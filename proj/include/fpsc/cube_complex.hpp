#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace fpsc {

// Oriented edge u -> v of a square complex.
struct Edge {
  int u = -1, v = -1;
};

// One side of a square: an edge traversed forward or reversed.
struct SquareSide {
  int edge = -1;
  bool reversed = false;
};

// A square is a closed boundary path of 4 sides.
struct Square {
  std::array<SquareSide, 4> sides{};
};

// Finite combinatorial square complex. Cubes of dimension >= 3 are not
// materialized; the blocks that need them in this toolkit are products whose
// metric data (diameters, hulls) is computed on the 1- and 2-skeleton.
struct CubeComplex {
  int num_vertices = 0;
  std::vector<Edge> edges;
  std::vector<Square> squares;

  void validate() const;  // endpoints in range, boundaries closed 4-cycles
  // Start/end vertex of a traversed side.
  int side_from(const SquareSide& s) const { return s.reversed ? edges[s.edge].v : edges[s.edge].u; }
  int side_to(const SquareSide& s) const { return s.reversed ? edges[s.edge].u : edges[s.edge].v; }
};

// An edge class under the closure of "opposite sides of a square".
struct Hyperplane {
  int id = -1;
  std::vector<int> edges;        // sorted dual edge ids
  bool self_crossing = false;    // some square has both opposite pairs in this class
};

// A face-closed piece of a complex, named by ids into the parent.
struct SubComplex {
  std::vector<int> vertices;
  std::vector<int> edges;
  std::vector<int> squares;
};

std::vector<Hyperplane> hyperplanes(const CubeComplex& X);

// h1 and h2 cross when one square carries dual edges of both; they osculate
// when their carriers share a vertex without any such square (and h1 != h2).
bool crosses(const CubeComplex& X, const Hyperplane& h1, const Hyperplane& h2);
bool osculates(const CubeComplex& X, const Hyperplane& h1, const Hyperplane& h2);

// All closed squares containing a dual edge of h, plus those edges themselves
// and every face of the collected cells.
SubComplex carrier(const CubeComplex& X, const Hyperplane& h);

// Max over vertex pairs of the BFS distance in the 1-skeleton (intrinsic for
// the subcomplex overload). Disconnected input is an error naming two
// components.
int diameter(const CubeComplex& X);
int diameter(const CubeComplex& X, const SubComplex& s);

// Integer label per edge; traversing an edge against its orientation negates
// the label. Valid labelings sum to zero around every square.
struct DegreeLabeling {
  std::vector<long long> label;

  void validate(const CubeComplex& X) const;
};

// Shortest closed edge path with nonzero total degree, for complexes that
// deformation retract to a circle with `d` measuring the winding. The search
// runs on the cyclic cover of order 2*certified_upper_bound (default bound:
// the edge count, which any degree-1 circle realizes). Failure to find an
// essential cycle below the bound means the labeling lied, an internal error.
int systole_circle_retract(const CubeComplex& Y, const DegreeLabeling& d,
                           long long certified_upper_bound = 0);

// Vertex/edge maps of a combinatorial map Y -> X. edge_reversed[e] means the
// Y-edge e runs against the orientation of its image.
struct CombMap {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
  std::vector<bool> edge_reversed;
};

struct LocalIsometryReport {
  bool ok = false;
  std::string violation;  // empty when ok
};

// Local injectivity on edge germs plus the no-missing-corner condition: any
// two concatenatable edges of Y whose images turn a corner of a square of X
// must already turn a corner of a square in Y.
LocalIsometryReport check_local_isometry(const CubeComplex& Y, const CubeComplex& X,
                                         const CombMap& f);

// Structured text round-trip and DOT exports.
std::string write_cube_complex(const CubeComplex& X);
CubeComplex parse_cube_complex(std::istream& in);
CubeComplex parse_cube_complex_string(const std::string& text);
std::string dot_1skeleton(const CubeComplex& X);
std::string dot_hyperplane_graph(const CubeComplex& X, const std::vector<Hyperplane>& hs);

}  // namespace fpsc
