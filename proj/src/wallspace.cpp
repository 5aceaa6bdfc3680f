#include "fpsc/wallspace.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fpsc/errors.hpp"

namespace fpsc {

namespace {

std::vector<int> letter_circle(const NecklaceComplex& Y) {
  std::vector<int> out;
  for (size_t i = 0; i < Y.circle_edges.size(); ++i) {
    if (Y.circle_is_letter[i]) out.push_back(Y.circle_edges[i]);
  }
  return out;
}

}  // namespace

AntipodalWallStructure antipodal_walls(const NecklaceComplex& Y, bool letter_edges_only) {
  AntipodalWallStructure W;
  W.letter_edges_only = letter_edges_only;
  W.circle = letter_edges_only ? letter_circle(Y) : Y.circle_edges;
  const long long n = (long long)W.circle.size();
  check_input(n >= 2, "antipodal walls need a circle of length >= 2");
  check_input(n % 2 == 0,
              "antipodal pairing needs an even circle, got length " + std::to_string(n) +
                  "; subdivide the presentation further to even it out");

  W.hyps = hyperplanes(Y.complex);
  std::vector<int> hyp_of(Y.complex.edges.size(), -1);
  for (const auto& h : W.hyps) {
    for (int e : h.edges) hyp_of[e] = h.id;
  }

  const long long L = n / 2;
  std::vector<int> wall_of_hyp(W.hyps.size(), -1);
  for (long long j = 0; j < L; ++j) {
    AntipodalWall wall;
    wall.position = (int)j;
    wall.circle_edges = {W.circle[j], W.circle[j + L]};
    for (int e : wall.circle_edges) {
      int h = hyp_of[e];
      if (std::find(wall.hyperplane_ids.begin(), wall.hyperplane_ids.end(), h) ==
          wall.hyperplane_ids.end()) {
        wall.hyperplane_ids.push_back(h);
      }
    }
    for (int h : wall.hyperplane_ids) {
      check_input(wall_of_hyp[h] == -1 || wall_of_hyp[h] == (int)j,
                  "circle edges in hyperplane " + std::to_string(h) +
                      " are not antipodal partners; the walls would not partition "
                      "the hyperplanes meeting w");
      wall_of_hyp[h] = (int)j;
    }
    W.walls.push_back(std::move(wall));
  }
  return W;
}

bool check_b8_condition1(const NecklaceComplex& Y, const AntipodalWallStructure& W) {
  const CubeComplex& C = Y.complex;
  for (const auto& wall : W.walls) {
    for (int h : wall.hyperplane_ids) {
      if (W.hyps[h].self_crossing) return false;
    }
    if (wall.hyperplane_ids.size() < 2) continue;
    const Hyperplane& h1 = W.hyps[wall.hyperplane_ids[0]];
    const Hyperplane& h2 = W.hyps[wall.hyperplane_ids[1]];
    if (C.squares.empty()) {
      // Every hyperplane is one edge and its carrier is that closed edge, so
      // the pair osculates exactly when the edges share an endpoint.
      const Edge& a = C.edges[h1.edges[0]];
      const Edge& b = C.edges[h2.edges[0]];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) return false;
      continue;
    }
    if (crosses(C, h1, h2) || osculates(C, h1, h2)) return false;
  }
  return true;
}

std::vector<long long> necklace_symmetry_rotations(const NecklaceComplex& Y) {
  const long long n = (long long)Y.circle_edges.size();
  std::vector<long long> labels(n);
  for (long long i = 0; i < n; ++i) {
    int e = Y.circle_edges[i];
    labels[i] = 2LL * Y.to_wedge.edge_map[e] + (Y.to_wedge.edge_reversed[e] ? 1 : 0);
  }
  // Smallest period p of the label sequence via the KMP failure function;
  // the rotation group is generated by p when p divides n, trivial otherwise.
  std::vector<long long> fail(n + 1, 0);
  long long k = 0;
  for (long long i = 1; i < n; ++i) {
    while (k > 0 && labels[i] != labels[k]) k = fail[k];
    if (labels[i] == labels[k]) ++k;
    fail[i + 1] = k;
  }
  long long p = n - fail[n];
  std::vector<long long> rots;
  if (n % p == 0) {
    for (long long r = 0; r < n; r += p) rots.push_back(r);
  } else {
    rots.push_back(0);
  }
  return rots;
}

bool check_b8_condition3(const NecklaceComplex& Y, const AntipodalWallStructure& W) {
  const long long nfull = (long long)Y.circle_edges.size();
  std::vector<long long> full_pos(Y.complex.edges.size(), -1);
  for (long long i = 0; i < nfull; ++i) full_pos[Y.circle_edges[i]] = i;
  std::unordered_map<int, int> wall_at;  // pairing-circle position -> wall index
  for (size_t j = 0; j < W.walls.size(); ++j) {
    const long long L = (long long)W.circle.size() / 2;
    wall_at[W.walls[j].position] = (int)j;
    wall_at[(int)(W.walls[j].position + L)] = (int)j;
  }
  std::vector<long long> pair_pos_of_full(nfull, -1);
  for (size_t i = 0; i < W.circle.size(); ++i) pair_pos_of_full[full_pos[W.circle[i]]] = (long long)i;

  for (long long r : necklace_symmetry_rotations(Y)) {
    if (r == 0) continue;
    for (const auto& wall : W.walls) {
      int image_wall = -2;
      for (int e : wall.circle_edges) {
        long long p = full_pos[e];
        check_internal(p >= 0, "wall edge not on the circle");
        long long q = (p + r) % nfull;
        long long pp = pair_pos_of_full[q];
        if (pp < 0) return false;  // image left the pairing circle
        auto it = wall_at.find((int)pp);
        check_internal(it != wall_at.end(), "pairing position without a wall");
        if (image_wall == -2) {
          image_wall = it->second;
        } else if (image_wall != it->second) {
          return false;  // the two partners land in different walls
        }
      }
    }
  }
  return true;
}

CircleWallSummary circle_wall_summary(long long circle_length) {
  check_input(circle_length >= 2, "circle wall summary needs length >= 2");
  CircleWallSummary s;
  s.circle_length = circle_length;
  s.even = circle_length % 2 == 0;
  s.wall_count = s.even ? circle_length / 2 : 0;
  s.condition1 = s.even && circle_length >= 4;
  s.condition3 = true;
  return s;
}

void FiniteWallspace::validate() const {
  check_input(num_points >= 1, "wallspace needs a nonempty ground set");
  std::vector<int8_t> mark(num_points);
  for (size_t w = 0; w < walls.size(); ++w) {
    const auto& [left, right] = walls[w];
    check_input(!left.empty() && !right.empty(),
                "wall " + std::to_string(w) + " has an empty side");
    std::fill(mark.begin(), mark.end(), 0);
    for (int p : left) {
      check_input(p >= 0 && p < num_points && mark[p] == 0,
                  "wall " + std::to_string(w) + ": bad or repeated point " + std::to_string(p));
      mark[p] = 1;
    }
    for (int p : right) {
      check_input(p >= 0 && p < num_points && mark[p] == 0,
                  "wall " + std::to_string(w) + ": sides overlap or repeat point " +
                      std::to_string(p));
      mark[p] = 2;
    }
    check_input((long long)left.size() + (long long)right.size() == num_points,
                "wall " + std::to_string(w) + " does not cover the ground set");
  }
}

FiniteWallspace restrict_wallspace(const NecklaceComplex& Y, const AntipodalWallStructure& W) {
  const CubeComplex& C = Y.complex;
  const long long V = C.num_vertices;
  const long long E = (long long)C.edges.size();
  check_resource((long long)W.walls.size() * (V + E) <= 200'000'000,
                 "restrict_wallspace work cap exceeded");

  std::vector<std::vector<std::pair<int, int>>> adj(V);  // vertex -> (edge, other end)
  for (int e = 0; e < (int)E; ++e) {
    adj[C.edges[e].u].push_back({e, C.edges[e].v});
    adj[C.edges[e].v].push_back({e, C.edges[e].u});
  }

  FiniteWallspace out;
  out.num_points = V;
  std::vector<char> removed(E, 0);
  std::vector<int> comp(V);
  std::vector<int> stack;
  for (size_t wi = 0; wi < W.walls.size(); ++wi) {
    std::vector<int> wall_edges;
    for (int h : W.walls[wi].hyperplane_ids) {
      for (int e : W.hyps[h].edges) {
        wall_edges.push_back(e);
        removed[e] = 1;
      }
    }
    std::fill(comp.begin(), comp.end(), -1);
    int ncomp = 0;
    for (int s = 0; s < V; ++s) {
      if (comp[s] != -1) continue;
      check_input(ncomp < 2, "wall " + std::to_string(wi) +
                                 " fails condition (1): removing its hyperplanes leaves more "
                                 "than two components");
      stack.assign(1, s);
      comp[s] = ncomp;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [e, u] : adj[v]) {
          if (!removed[e] && comp[u] == -1) {
            comp[u] = ncomp;
            stack.push_back(u);
          }
        }
      }
      ++ncomp;
    }
    check_input(ncomp == 2, "wall " + std::to_string(wi) +
                                " fails condition (1): removing its hyperplanes leaves a "
                                "connected complex");
    std::pair<std::vector<int>, std::vector<int>> sides;
    for (int v = 0; v < V; ++v) (comp[v] == 0 ? sides.first : sides.second).push_back(v);
    out.walls.push_back(std::move(sides));
    for (int e : wall_edges) removed[e] = 0;
  }
  out.validate();
  return out;
}

FiniteWallspace flat_wallspace(int m) {
  check_input(m >= 1 && m <= 10, "flat wallspace rank must be in [1, 10]");
  FiniteWallspace W;
  W.num_points = 1LL << (2 * m);
  for (int w = 0; w < 2 * m; ++w) {
    std::pair<std::vector<int>, std::vector<int>> sides;
    for (int p = 0; p < (int)W.num_points; ++p) {
      ((p >> w) & 1 ? sides.second : sides.first).push_back(p);
    }
    W.walls.push_back(std::move(sides));
  }
  return W;
}

namespace {

using Bits = std::vector<uint64_t>;

Bits to_bits(const std::vector<int>& pts, long long n) {
  Bits b((n + 63) / 64, 0);
  for (int p : pts) b[p / 64] |= 1ULL << (p % 64);
  return b;
}

bool bits_intersect(const Bits& a, const Bits& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

}  // namespace

std::vector<std::vector<bool>> crossing_graph(const FiniteWallspace& W) {
  W.validate();
  const int k = (int)W.walls.size();
  check_resource((long long)k * k * ((W.num_points + 63) / 64) <= 400'000'000,
                 "crossing graph work cap exceeded");
  std::vector<std::array<Bits, 2>> side(k);
  for (int w = 0; w < k; ++w) {
    side[w][0] = to_bits(W.walls[w].first, W.num_points);
    side[w][1] = to_bits(W.walls[w].second, W.num_points);
  }
  std::vector<std::vector<bool>> g(k, std::vector<bool>(k, false));
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      bool cross = true;
      for (int sa = 0; sa < 2 && cross; ++sa) {
        for (int sb = 0; sb < 2 && cross; ++sb) {
          cross = bits_intersect(side[a][sa], side[b][sb]);
        }
      }
      g[a][b] = g[b][a] = cross;
    }
  }
  return g;
}

namespace {

int max_clique_masked(uint32_t cand, const std::array<uint32_t, 20>& adj) {
  int best = 0;
  std::function<void(uint32_t, int)> go = [&](uint32_t c, int size) {
    if (size > best) best = size;
    if (c == 0) return;
    if (size + __builtin_popcount(c) <= best) return;
    int w = __builtin_ctz(c);
    c &= c - 1;
    go(c & adj[w], size + 1);
    go(c, size);
  };
  go(cand, 0);
  return best;
}

}  // namespace

DualCubeComplex dual_cube_complex(const FiniteWallspace& W) {
  W.validate();
  const int k = (int)W.walls.size();
  check_resource(k <= 20, "dual cube complex caps at 20 walls, got " + std::to_string(k));

  DualCubeComplex D;
  D.num_walls = k;
  D.crossing = crossing_graph(W);
  if (k == 0) {
    D.vertices = {0};
    D.connected = true;
    return D;
  }

  std::vector<std::array<Bits, 2>> side(k);
  for (int w = 0; w < k; ++w) {
    side[w][0] = to_bits(W.walls[w].first, W.num_points);
    side[w][1] = to_bits(W.walls[w].second, W.num_points);
  }
  // compat[a][sa][b][sb]: chosen sides sa of a and sb of b intersect.
  std::vector<char> compat(4 * k * k, 0);
  auto compat_at = [&](int a, int sa, int b, int sb) -> char& {
    return compat[((a * 2 + sa) * k + b) * 2 + sb];
  };
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      for (int sa = 0; sa < 2; ++sa) {
        for (int sb = 0; sb < 2; ++sb) {
          compat_at(a, sa, b, sb) = a == b ? (sa == sb) : bits_intersect(side[a][sa], side[b][sb]);
        }
      }
    }
  }

  std::vector<int> chosen(k, 0);
  std::function<void(int, unsigned)> enumerate = [&](int w, unsigned mask) {
    if (w == k) {
      D.vertices.push_back(mask);
      return;
    }
    for (int s = 0; s < 2; ++s) {
      bool ok = true;
      for (int prev = 0; prev < w && ok; ++prev) ok = compat_at(w, s, prev, chosen[prev]);
      if (ok) {
        chosen[w] = s;
        enumerate(w + 1, mask | (unsigned)(s << w));
      }
    }
  };
  enumerate(0, 0);
  std::sort(D.vertices.begin(), D.vertices.end());

  std::unordered_map<unsigned, int> index;
  index.reserve(D.vertices.size() * 2);
  for (int i = 0; i < (int)D.vertices.size(); ++i) index[D.vertices[i]] = i;
  for (int i = 0; i < (int)D.vertices.size(); ++i) {
    for (int w = 0; w < k; ++w) {
      unsigned other = D.vertices[i] ^ (1u << w);
      auto it = index.find(other);
      if (it != index.end() && D.vertices[i] < other) D.edges.push_back({i, it->second});
    }
  }

  std::vector<std::vector<int>> nbr(D.vertices.size());
  for (auto [a, b] : D.edges) {
    nbr[a].push_back(b);
    nbr[b].push_back(a);
  }
  std::vector<char> seen(D.vertices.size(), 0);
  std::vector<int> stack;
  if (!D.vertices.empty()) {
    stack.push_back(0);
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : nbr[v]) {
        if (!seen[u]) {
          seen[u] = 1;
          ++reached;
          stack.push_back(u);
        }
      }
    }
    D.connected = reached == D.vertices.size();
  }

  std::array<uint32_t, 20> adj{};
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (D.crossing[a][b]) adj[a] |= 1u << b;
    }
  }
  // At a 0-cube, any set of pairwise-crossing flippable walls spans a cube:
  // flipping a subset stays pairwise consistent because crossing makes all
  // four quarter intersections nonempty.
  std::unordered_set<uint32_t> flip_sets;
  for (unsigned mask : D.vertices) {
    uint32_t flippable = 0;
    for (int w = 0; w < k; ++w) {
      if (index.count(mask ^ (1u << w))) flippable |= 1u << w;
    }
    flip_sets.insert(flippable);
  }
  for (uint32_t f : flip_sets) D.dimension = std::max(D.dimension, max_clique_masked(f, adj));
  return D;
}

int dual_dimension(const FiniteWallspace& W) { return dual_cube_complex(W).dimension; }

bool median_check(const DualCubeComplex& D) {
  const size_t V = D.vertices.size();
  check_resource(V <= 600, "median check caps at 600 0-cubes, got " + std::to_string(V));
  std::unordered_set<unsigned> set(D.vertices.begin(), D.vertices.end());
  for (size_t i = 0; i < V; ++i) {
    for (size_t j = i + 1; j < V; ++j) {
      for (size_t l = j + 1; l < V; ++l) {
        unsigned a = D.vertices[i], b = D.vertices[j], c = D.vertices[l];
        unsigned maj = (a & b) | (a & c) | (b & c);
        if (!set.count(maj)) return false;
      }
    }
  }
  return true;
}

std::string write_wallspace(const FiniteWallspace& W) {
  W.validate();
  std::ostringstream os;
  os << "fpsc-wallspace 1\n";
  os << "points " << W.num_points << "\n";
  for (const auto& [left, right] : W.walls) {
    std::string signs(W.num_points, '?');
    for (int p : left) signs[p] = '+';
    for (int p : right) signs[p] = '-';
    os << "wall " << signs << "\n";
  }
  return os.str();
}

FiniteWallspace parse_wallspace(std::istream& in) {
  FiniteWallspace W;
  std::string line;
  int lineno = 0;
  bool header = false, have_points = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (!header) {
      std::string version;
      ls >> version;
      check_input(tok == "fpsc-wallspace" && version == "1",
                  "line " + std::to_string(lineno) + ": expected header 'fpsc-wallspace 1'");
      header = true;
    } else if (tok == "points") {
      check_input(!have_points, "line " + std::to_string(lineno) + ": repeated points line");
      check_input((bool)(ls >> W.num_points) && W.num_points >= 1,
                  "line " + std::to_string(lineno) + ": bad ground-set size");
      have_points = true;
    } else if (tok == "wall") {
      check_input(have_points, "line " + std::to_string(lineno) + ": wall before points");
      std::string signs;
      ls >> signs;
      check_input((long long)signs.size() == W.num_points,
                  "line " + std::to_string(lineno) + ": wall needs exactly " +
                      std::to_string(W.num_points) + " signs");
      std::pair<std::vector<int>, std::vector<int>> sides;
      for (int p = 0; p < (int)signs.size(); ++p) {
        check_input(signs[p] == '+' || signs[p] == '-',
                    "line " + std::to_string(lineno) + ": sign must be '+' or '-'");
        (signs[p] == '+' ? sides.first : sides.second).push_back(p);
      }
      W.walls.push_back(std::move(sides));
    } else {
      throw input_error("line " + std::to_string(lineno) + ": unknown directive '" + tok + "'");
    }
  }
  check_input(header && have_points, "wallspace input ended before points line");
  W.validate();
  return W;
}

FiniteWallspace parse_wallspace_string(const std::string& text) {
  std::istringstream in(text);
  return parse_wallspace(in);
}

std::string dot_crossing_graph(const FiniteWallspace& W) {
  auto g = crossing_graph(W);
  std::ostringstream os;
  os << "graph crossing {\n";
  for (size_t w = 0; w < W.walls.size(); ++w) os << "  w" << w << ";\n";
  for (size_t a = 0; a < W.walls.size(); ++a) {
    for (size_t b = a + 1; b < W.walls.size(); ++b) {
      if (g[a][b]) os << "  w" << a << " -- w" << b << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace fpsc
