#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "fpsc/cube_complex.hpp"
#include "fpsc/errors.hpp"

using namespace fpsc;

namespace {

// Oracle: all-pairs shortest paths by Floyd-Warshall, independent of the BFS
// in the library.
int oracle_diameter(const CubeComplex& X) {
  const int n = X.num_vertices;
  const int INF = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, INF));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& e : X.edges) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  int best = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      REQUIRE(d[i][j] < INF);
      best = std::max(best, d[i][j]);
    }
  return best;
}

// Oracle: edge classes under "opposite sides of a square", computed by naive
// relabeling sweeps until a fixpoint instead of union-find.
std::set<std::vector<int>> oracle_edge_classes(const CubeComplex& X) {
  std::vector<int> cls(X.edges.size());
  for (size_t e = 0; e < cls.size(); ++e) cls[e] = (int)e;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& sq : X.squares) {
      for (auto [a, b] : {std::pair{sq.sides[0].edge, sq.sides[2].edge},
                          std::pair{sq.sides[1].edge, sq.sides[3].edge}}) {
        int lo = std::min(cls[a], cls[b]);
        if (cls[a] != lo || cls[b] != lo) {
          int hi = std::max(cls[a], cls[b]);
          for (auto& c : cls)
            if (c == hi) c = lo;
          changed = true;
        }
      }
    }
  }
  std::set<std::vector<int>> out;
  for (size_t rep = 0; rep < cls.size(); ++rep) {
    std::vector<int> members;
    for (size_t e = 0; e < cls.size(); ++e)
      if (cls[e] == cls[rep]) members.push_back((int)e);
    out.insert(members);
  }
  return out;
}

std::set<std::vector<int>> classes_of(const std::vector<Hyperplane>& hs) {
  std::set<std::vector<int>> out;
  for (const auto& h : hs) out.insert(h.edges);
  return out;
}

Square sq4(int e0, bool r0, int e1, bool r1, int e2, bool r2, int e3, bool r3) {
  Square s;
  s.sides = {SquareSide{e0, r0}, SquareSide{e1, r1}, SquareSide{e2, r2}, SquareSide{e3, r3}};
  return s;
}

CubeComplex single_square() {
  CubeComplex X;
  X.num_vertices = 4;
  X.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  X.squares = {sq4(0, false, 1, false, 2, false, 3, false)};
  return X;
}

// One vertex, two loops a and b, a single square with boundary a b a^-1 b^-1.
CubeComplex one_square_torus() {
  CubeComplex X;
  X.num_vertices = 1;
  X.edges = {{0, 0}, {0, 0}};
  X.squares = {sq4(0, false, 1, false, 0, true, 1, true)};
  return X;
}

// p-by-q torus grid: both directions wrap around.
CubeComplex grid_torus(int p, int q) {
  CubeComplex X;
  X.num_vertices = p * q;
  auto vid = [&](int r, int c) { return ((r % p) + p) % p * q + ((c % q) + q) % q; };
  auto hid = [&](int r, int c) { return ((r % p) + p) % p * q + ((c % q) + q) % q; };
  auto wid = [&](int r, int c) { return p * q + hid(r, c); };
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < q; ++c) X.edges.push_back({vid(r, c), vid(r, c + 1)});
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < q; ++c) X.edges.push_back({vid(r, c), vid(r + 1, c)});
  for (int r = 0; r < p; ++r)
    for (int c = 0; c < q; ++c)
      X.squares.push_back(
          sq4(hid(r, c), false, wid(r, c + 1), false, hid(r + 1, c), true, wid(r, c), true));
  return X;
}

// Two squares sharing the middle vertical edge.
CubeComplex domino() {
  CubeComplex X;
  X.num_vertices = 6;  // 0,1,2 bottom; 3,4,5 top
  X.edges = {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}};
  X.squares = {sq4(0, false, 5, false, 2, true, 4, true),
               sq4(1, false, 6, false, 3, true, 5, true)};
  return X;
}

// rows-by-cols solid grid of squares (no wrap-around).
CubeComplex solid_grid(int rows, int cols) {
  CubeComplex X;
  const int vr = rows + 1, vc = cols + 1;
  X.num_vertices = vr * vc;
  auto vid = [&](int r, int c) { return r * vc + c; };
  std::vector<std::vector<int>> h(vr, std::vector<int>(cols)), w(rows, std::vector<int>(vc));
  for (int r = 0; r < vr; ++r)
    for (int c = 0; c < cols; ++c) {
      h[r][c] = (int)X.edges.size();
      X.edges.push_back({vid(r, c), vid(r, c + 1)});
    }
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < vc; ++c) {
      w[r][c] = (int)X.edges.size();
      X.edges.push_back({vid(r, c), vid(r + 1, c)});
    }
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      X.squares.push_back(
          sq4(h[r][c], false, w[r][c + 1], false, h[r + 1][c], true, w[r][c], true));
  return X;
}

CubeComplex cycle_complex(int n) {
  CubeComplex X;
  X.num_vertices = n;
  for (int i = 0; i < n; ++i) X.edges.push_back({i, (i + 1) % n});
  return X;
}

const Hyperplane& containing(const std::vector<Hyperplane>& hs, int edge) {
  for (const auto& h : hs)
    if (std::find(h.edges.begin(), h.edges.end(), edge) != h.edges.end()) return h;
  REQUIRE(false);
  return hs.front();
}

}  // namespace

TEST_CASE("validate rejects malformed complexes") {
  CubeComplex X = single_square();
  X.validate();

  CubeComplex bad_edge = X;
  bad_edge.edges[1].v = 9;
  CHECK_THROWS_AS(bad_edge.validate(), input_error);

  CubeComplex bad_ref = X;
  bad_ref.squares[0].sides[2].edge = 12;
  CHECK_THROWS_AS(bad_ref.validate(), input_error);

  CubeComplex open_boundary = X;
  open_boundary.squares[0].sides[3].reversed = true;  // breaks the 4-cycle
  CHECK_THROWS_AS(open_boundary.validate(), input_error);
}

TEST_CASE("single square: two crossing hyperplanes") {
  CubeComplex X = single_square();
  auto hs = hyperplanes(X);
  REQUIRE(hs.size() == 2);
  CHECK(classes_of(hs) == oracle_edge_classes(X));
  CHECK(classes_of(hs) == std::set<std::vector<int>>{{0, 2}, {1, 3}});
  CHECK(!hs[0].self_crossing);
  CHECK(!hs[1].self_crossing);
  CHECK(crosses(X, hs[0], hs[1]));
  CHECK(!osculates(X, hs[0], hs[1]));
  CHECK(!osculates(X, hs[0], hs[0]));
  CHECK(diameter(X) == 2);
  CHECK(oracle_diameter(X) == 2);
  for (const auto& h : hs) {
    SubComplex c = carrier(X, h);
    CHECK(c.squares == std::vector<int>{0});
    CHECK(c.vertices.size() == 4);
    CHECK(c.edges.size() == 4);
    CHECK(diameter(X, c) == 2);
  }
}

TEST_CASE("one-square torus: the two loops cross and neither self-crosses") {
  CubeComplex X = one_square_torus();
  auto hs = hyperplanes(X);
  REQUIRE(hs.size() == 2);
  CHECK(classes_of(hs) == std::set<std::vector<int>>{{0}, {1}});
  CHECK(crosses(X, hs[0], hs[1]));
  CHECK(!hs[0].self_crossing);
  CHECK(!hs[1].self_crossing);
  CHECK(diameter(X) == 0);
}

TEST_CASE("torus grid: row and column hyperplanes with bipartite crossing") {
  CubeComplex X = grid_torus(3, 4);
  X.validate();
  auto hs = hyperplanes(X);
  REQUIRE(hs.size() == 7);
  CHECK(classes_of(hs) == oracle_edge_classes(X));

  std::vector<size_t> sizes;
  for (const auto& h : hs) sizes.push_back(h.edges.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<size_t>{3, 3, 3, 3, 4, 4, 4});

  int crossing_pairs = 0, osculating_pairs = 0;
  for (size_t i = 0; i < hs.size(); ++i)
    for (size_t j = i + 1; j < hs.size(); ++j) {
      if (crosses(X, hs[i], hs[j])) ++crossing_pairs;
      if (osculates(X, hs[i], hs[j])) ++osculating_pairs;
    }
  CHECK(crossing_pairs == 12);   // each of 4 column classes with each of 3 row classes
  // Adjacent column pairs (4) and all row pairs (3, every pair is adjacent
  // mod 3); distance-2 column carriers are disjoint, so they do not osculate.
  CHECK(osculating_pairs == 7);
  CHECK(diameter(X) == 3);
  CHECK(oracle_diameter(X) == 3);
  for (const auto& h : hs) CHECK(!h.self_crossing);
}

TEST_CASE("domino: short hyperplanes osculate, the long one crosses both") {
  CubeComplex X = domino();
  X.validate();
  auto hs = hyperplanes(X);
  REQUIRE(hs.size() == 3);
  CHECK(classes_of(hs) == oracle_edge_classes(X));
  CHECK(classes_of(hs) == std::set<std::vector<int>>{{0, 2}, {1, 3}, {4, 5, 6}});

  const auto& left = containing(hs, 0);
  const auto& right = containing(hs, 1);
  const auto& vertical = containing(hs, 4);
  CHECK(crosses(X, vertical, left));
  CHECK(crosses(X, vertical, right));
  CHECK(!crosses(X, left, right));
  CHECK(osculates(X, left, right));
  CHECK(!osculates(X, vertical, left));

  CHECK(diameter(X) == 3);
  CHECK(oracle_diameter(X) == 3);

  SubComplex cl = carrier(X, left);
  CHECK(cl.vertices == std::vector<int>{0, 1, 3, 4});
  CHECK(cl.edges == std::vector<int>{0, 2, 4, 5});
  CHECK(cl.squares == std::vector<int>{0});
  CHECK(diameter(X, cl) == 2);

  SubComplex cv = carrier(X, vertical);
  CHECK(cv.vertices.size() == 6);
  CHECK(cv.edges.size() == 7);
  CHECK(cv.squares.size() == 2);
  CHECK(diameter(X, cv) == 3);
}

TEST_CASE("square-free 4-cycle: hyperplanes are single edges, no crossing") {
  CubeComplex X = cycle_complex(4);
  auto hs = hyperplanes(X);
  REQUIRE(hs.size() == 4);
  CHECK(diameter(X) == 2);
  CHECK(!crosses(X, hs[0], hs[1]));
  CHECK(osculates(X, hs[0], hs[1]));  // carriers share vertex 1
  CHECK(osculates(X, hs[3], hs[0]));  // share vertex 0
  CHECK(!osculates(X, hs[0], hs[2]));  // disjoint carriers
  CHECK(!crosses(X, hs[0], hs[2]));
}

TEST_CASE("solid grid diameters match the all-pairs oracle") {
  CubeComplex X = solid_grid(2, 3);
  X.validate();
  CHECK(diameter(X) == 5);
  CHECK(oracle_diameter(X) == 5);
  auto hs = hyperplanes(X);
  CHECK(hs.size() == 5);
  CHECK(classes_of(hs) == oracle_edge_classes(X));
  int crossing_pairs = 0;
  for (size_t i = 0; i < hs.size(); ++i)
    for (size_t j = i + 1; j < hs.size(); ++j)
      if (crosses(X, hs[i], hs[j])) ++crossing_pairs;
  CHECK(crossing_pairs == 6);  // 3 column classes times 2 row classes
}

TEST_CASE("diameter errors on disconnected input and bad subcomplexes") {
  CubeComplex X;
  X.num_vertices = 4;
  X.edges = {{0, 1}, {2, 3}};
  CHECK_THROWS_WITH_AS(diameter(X), doctest::Contains("different components"), input_error);

  CubeComplex Y = domino();
  SubComplex s;
  s.vertices = {0, 1};
  s.edges = {4};  // edge 0-3 but vertex 3 missing
  CHECK_THROWS_AS(diameter(Y, s), input_error);
  s.vertices = {0, 99};
  s.edges = {};
  CHECK_THROWS_AS(diameter(Y, s), input_error);
}

TEST_CASE("degree labelings must sum to zero around squares") {
  CubeComplex X = single_square();
  DegreeLabeling d;
  d.label = {1, 1, 1, 1};
  CHECK_THROWS_WITH_AS(d.validate(X), doctest::Contains("nonzero sum"), input_error);
  d.label = {1, 1, 1, -3};  // all sides forward: 1 + 1 + 1 - 3 = 0
  d.validate(X);
  d.label = {1, 1};
  CHECK_THROWS_WITH_AS(d.validate(X), doctest::Contains("one label per edge"), input_error);

  CubeComplex T = one_square_torus();
  DegreeLabeling t;
  t.label = {3, -7};  // boundary a b a^-1 b^-1 cancels any labels
  t.validate(T);
}

TEST_CASE("circle systole search finds the shortest essential cycle") {
  CubeComplex Y = cycle_complex(7);
  DegreeLabeling d;
  d.label.assign(7, 1);
  CHECK(systole_circle_retract(Y, d) == 7);
  CHECK(systole_circle_retract(Y, d, 7) == 7);

  SUBCASE("orientation-reversed edge with negated label is the same circle") {
    std::swap(Y.edges[3].u, Y.edges[3].v);
    d.label[3] = -1;
    CHECK(systole_circle_retract(Y, d) == 7);
  }

  SUBCASE("a hair does not change the essential cycle") {
    CubeComplex H = cycle_complex(3);
    H.num_vertices = 4;
    H.edges.push_back({0, 3});
    DegreeLabeling h;
    h.label = {1, 1, 1, 0};
    CHECK(systole_circle_retract(H, h) == 3);
  }

  SUBCASE("an understated certified bound is detected") {
    CHECK_THROWS_AS(systole_circle_retract(Y, d, 3), internal_error);
  }

  SUBCASE("edgeless input is rejected") {
    CubeComplex E;
    E.num_vertices = 1;
    DegreeLabeling e;
    CHECK_THROWS_AS(systole_circle_retract(E, e), input_error);
  }
}

TEST_CASE("local isometry accepts covers of the one-square torus") {
  CubeComplex X = one_square_torus();

  SUBCASE("subdivided circle onto one loop") {
    CubeComplex Y = cycle_complex(3);
    CombMap f;
    f.vertex_map = {0, 0, 0};
    f.edge_map = {0, 0, 0};
    f.edge_reversed = {false, false, false};
    auto rep = check_local_isometry(Y, X, f);
    CHECK(rep.ok);
    CHECK(rep.violation.empty());
  }

  SUBCASE("identity map") {
    CombMap f;
    f.vertex_map = {0};
    f.edge_map = {0, 1};
    f.edge_reversed = {false, false};
    CHECK(check_local_isometry(X, X, f).ok);
  }

  SUBCASE("square boundary path misses the corner") {
    CubeComplex Y = cycle_complex(4);
    CombMap f;
    f.vertex_map = {0, 0, 0, 0};
    f.edge_map = {0, 1, 0, 1};
    f.edge_reversed = {false, false, true, true};
    auto rep = check_local_isometry(Y, X, f);
    CHECK(!rep.ok);
    CHECK(rep.violation.find("missing corner") != std::string::npos);
  }

  SUBCASE("two loops folding onto one") {
    CubeComplex Y;
    Y.num_vertices = 1;
    Y.edges = {{0, 0}, {0, 0}};
    CombMap f;
    f.vertex_map = {0};
    f.edge_map = {0, 0};
    f.edge_reversed = {false, false};
    auto rep = check_local_isometry(Y, X, f);
    CHECK(!rep.ok);
    CHECK(rep.violation.find("fold together") != std::string::npos);
  }

  SUBCASE("malformed maps are input errors") {
    CombMap f;
    f.vertex_map = {0};
    f.edge_map = {0};
    f.edge_reversed = {false};
    CHECK_THROWS_AS(check_local_isometry(X, X, f), input_error);  // table sizes

    CubeComplex C4 = cycle_complex(4);
    CubeComplex Y;
    Y.num_vertices = 2;
    Y.edges = {{0, 1}};
    CombMap g;
    g.vertex_map = {0, 2};
    g.edge_map = {0};
    g.edge_reversed = {false};
    CHECK_THROWS_WITH_AS(check_local_isometry(Y, C4, g),
                         doctest::Contains("does not map over its endpoints"), input_error);

    CubeComplex S = single_square();
    CombMap h;
    h.vertex_map = {0, 0, 0, 0};
    h.edge_map = {0, 0, 0, 0};
    h.edge_reversed = {false, false, false, false};
    CHECK_THROWS_WITH_AS(check_local_isometry(S, X, h),
                         doctest::Contains("does not map onto a square"), input_error);
  }
}

TEST_CASE("text round trip preserves the complex") {
  CubeComplex X = domino();
  std::string text = write_cube_complex(X);
  CubeComplex Y = parse_cube_complex_string(text);
  CHECK(Y.num_vertices == X.num_vertices);
  REQUIRE(Y.edges.size() == X.edges.size());
  for (size_t e = 0; e < X.edges.size(); ++e) {
    CHECK(Y.edges[e].u == X.edges[e].u);
    CHECK(Y.edges[e].v == X.edges[e].v);
  }
  REQUIRE(Y.squares.size() == X.squares.size());
  for (size_t s = 0; s < X.squares.size(); ++s)
    for (int k = 0; k < 4; ++k) {
      CHECK(Y.squares[s].sides[k].edge == X.squares[s].sides[k].edge);
      CHECK(Y.squares[s].sides[k].reversed == X.squares[s].sides[k].reversed);
    }
}

TEST_CASE("parser reports malformed inputs with line numbers") {
  CHECK_THROWS_WITH_AS(parse_cube_complex_string("vertices 3\n"),
                       doctest::Contains("expected header"), input_error);
  CHECK_THROWS_WITH_AS(parse_cube_complex_string(""), doctest::Contains("missing"), input_error);
  CHECK_THROWS_WITH_AS(parse_cube_complex_string("fpsc-complex 1\nedge 0 1\n"),
                       doctest::Contains("vertices"), input_error);
  CHECK_THROWS_WITH_AS(
      parse_cube_complex_string("fpsc-complex 1\nvertices 2\nedge 0 1\nsquare 0 0 0\n"),
      doctest::Contains("four sides"), input_error);
  CHECK_THROWS_WITH_AS(
      parse_cube_complex_string("fpsc-complex 1\nvertices 2\nedge 0 1\nsquare 0 0 0 0x\n"),
      doctest::Contains("bad edge reference"), input_error);
  CHECK_THROWS_WITH_AS(parse_cube_complex_string("fpsc-complex 1\nvertices 1\nwhat 3\n"),
                       doctest::Contains("unknown directive"), input_error);
  CubeComplex C = parse_cube_complex_string("fpsc-complex 1\nvertices 2\nedge 0 1 # comment\n");
  CHECK(C.edges.size() == 1);
}

TEST_CASE("dot exports name the structures they draw") {
  CubeComplex X = single_square();
  CHECK(dot_1skeleton(X).find("digraph") != std::string::npos);
  auto hs = hyperplanes(X);
  std::string dot = dot_hyperplane_graph(X, hs);
  CHECK(dot.find("graph hyperplanes") != std::string::npos);
  CHECK(dot.find("h0 -- h1") != std::string::npos);
}
