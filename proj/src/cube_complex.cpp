#include "fpsc/cube_complex.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fpsc/errors.hpp"

namespace fpsc {

void CubeComplex::validate() const {
  check_input(num_vertices >= 0, "complex: negative vertex count");
  for (size_t e = 0; e < edges.size(); ++e) {
    check_input(edges[e].u >= 0 && edges[e].u < num_vertices && edges[e].v >= 0 &&
                    edges[e].v < num_vertices,
                "complex: edge " + std::to_string(e) + " has endpoints out of range");
  }
  for (size_t s = 0; s < squares.size(); ++s) {
    for (const auto& side : squares[s].sides) {
      check_input(side.edge >= 0 && side.edge < (int)edges.size(),
                  "complex: square " + std::to_string(s) + " references a missing edge");
    }
    for (int k = 0; k < 4; ++k) {
      check_input(side_to(squares[s].sides[k]) == side_from(squares[s].sides[(k + 1) % 4]),
                  "complex: square " + std::to_string(s) + " boundary is not a closed 4-cycle");
    }
  }
}

namespace {

struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

int diameter_impl(int num_vertices, const std::vector<Edge>& edges,
                  const std::vector<int>& vertex_ids, const std::vector<int>& edge_ids) {
  if (vertex_ids.empty()) return 0;
  std::vector<std::vector<int>> adj(num_vertices);
  for (int e : edge_ids) {
    adj[edges[e].u].push_back(edges[e].v);
    adj[edges[e].v].push_back(edges[e].u);
  }
  int best = 0;
  std::vector<int> dist(num_vertices);
  for (int src : vertex_ids) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> q{src};
    dist[src] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w : adj[v])
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push_back(w);
        }
    }
    for (int v : vertex_ids) {
      check_input(dist[v] >= 0, "diameter: disconnected: vertices " + std::to_string(src) +
                                    " and " + std::to_string(v) +
                                    " lie in different components");
      best = std::max(best, dist[v]);
    }
  }
  return best;
}

}  // namespace

std::vector<Hyperplane> hyperplanes(const CubeComplex& X) {
  X.validate();
  DSU dsu((int)X.edges.size());
  for (const auto& sq : X.squares) {
    dsu.unite(sq.sides[0].edge, sq.sides[2].edge);
    dsu.unite(sq.sides[1].edge, sq.sides[3].edge);
  }
  std::unordered_map<int, int> class_id;
  std::vector<Hyperplane> out;
  for (int e = 0; e < (int)X.edges.size(); ++e) {
    int root = dsu.find(e);
    auto it = class_id.find(root);
    if (it == class_id.end()) {
      it = class_id.emplace(root, (int)out.size()).first;
      out.push_back(Hyperplane{(int)out.size(), {}, false});
    }
    out[it->second].edges.push_back(e);
  }
  for (const auto& sq : X.squares) {
    if (dsu.find(sq.sides[0].edge) == dsu.find(sq.sides[1].edge))
      out[class_id.at(dsu.find(sq.sides[0].edge))].self_crossing = true;
  }
  return out;
}

bool crosses(const CubeComplex& X, const Hyperplane& h1, const Hyperplane& h2) {
  std::vector<char> in1(X.edges.size(), 0), in2(X.edges.size(), 0);
  for (int e : h1.edges) in1[e] = 1;
  for (int e : h2.edges) in2[e] = 1;
  for (const auto& sq : X.squares) {
    const int a = sq.sides[0].edge, b = sq.sides[1].edge;
    if ((in1[a] && in2[b]) || (in2[a] && in1[b])) return true;
  }
  return false;
}

SubComplex carrier(const CubeComplex& X, const Hyperplane& h) {
  std::vector<char> dual(X.edges.size(), 0);
  for (int e : h.edges) dual[e] = 1;
  SubComplex c;
  std::unordered_set<int> vs, es;
  auto add_edge = [&](int e) {
    es.insert(e);
    vs.insert(X.edges[e].u);
    vs.insert(X.edges[e].v);
  };
  for (int e : h.edges) add_edge(e);
  for (size_t s = 0; s < X.squares.size(); ++s) {
    bool carries = false;
    for (const auto& side : X.squares[s].sides) carries = carries || dual[side.edge];
    if (!carries) continue;
    c.squares.push_back((int)s);
    for (const auto& side : X.squares[s].sides) add_edge(side.edge);
  }
  c.vertices.assign(vs.begin(), vs.end());
  c.edges.assign(es.begin(), es.end());
  std::sort(c.vertices.begin(), c.vertices.end());
  std::sort(c.edges.begin(), c.edges.end());
  return c;
}

bool osculates(const CubeComplex& X, const Hyperplane& h1, const Hyperplane& h2) {
  if (h1.id == h2.id && h1.edges == h2.edges) return false;
  if (crosses(X, h1, h2)) return false;
  SubComplex c1 = carrier(X, h1), c2 = carrier(X, h2);
  std::vector<char> in1(X.num_vertices, 0);
  for (int v : c1.vertices) in1[v] = 1;
  for (int v : c2.vertices)
    if (in1[v]) return true;
  return false;
}

int diameter(const CubeComplex& X) {
  X.validate();
  std::vector<int> vs(X.num_vertices), es(X.edges.size());
  std::iota(vs.begin(), vs.end(), 0);
  std::iota(es.begin(), es.end(), 0);
  return diameter_impl(X.num_vertices, X.edges, vs, es);
}

int diameter(const CubeComplex& X, const SubComplex& s) {
  std::vector<char> in(X.num_vertices, 0);
  for (int v : s.vertices) {
    check_input(v >= 0 && v < X.num_vertices, "diameter: subcomplex vertex out of range");
    in[v] = 1;
  }
  for (int e : s.edges) {
    check_input(e >= 0 && e < (int)X.edges.size(), "diameter: subcomplex edge out of range");
    check_input(in[X.edges[e].u] && in[X.edges[e].v],
                "diameter: subcomplex edge with endpoint outside the subcomplex");
  }
  return diameter_impl(X.num_vertices, X.edges, s.vertices, s.edges);
}

void DegreeLabeling::validate(const CubeComplex& X) const {
  check_input(label.size() == X.edges.size(), "degree labeling: one label per edge required");
  for (size_t s = 0; s < X.squares.size(); ++s) {
    long long sum = 0;
    for (const auto& side : X.squares[s].sides)
      sum += side.reversed ? -label[side.edge] : label[side.edge];
    check_input(sum == 0,
                "degree labeling: nonzero sum around square " + std::to_string(s));
  }
}

int systole_circle_retract(const CubeComplex& Y, const DegreeLabeling& d,
                           long long certified_upper_bound) {
  Y.validate();
  d.validate(Y);
  check_input(!Y.edges.empty(), "systole: complex has no edges");
  long long ub = certified_upper_bound > 0 ? certified_upper_bound : (long long)Y.edges.size();
  const long long N = 2 * ub;  // cover order: no cycle of length <= ub can wrap
  const long long V = Y.num_vertices;
  check_resource(V * N <= 40000000, "systole: cyclic cover too large for search");

  std::vector<std::vector<std::pair<int, long long>>> adj(V);  // (to, label delta)
  for (const auto& e : Y.edges) {
    long long l = d.label[&e - Y.edges.data()];
    adj[e.u].push_back({e.v, l});
    adj[e.v].push_back({e.u, -l});
  }
  auto idx = [&](long long v, long long j) { return v * N + j; };
  long long best = -1;
  std::vector<int> dist(V * N);
  for (int src = 0; src < (int)V; ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<long long> q{idx(src, 0)};
    dist[idx(src, 0)] = 0;
    while (!q.empty()) {
      long long cur = q.front();
      q.pop_front();
      long long v = cur / N, j = cur % N;
      if (best >= 0 && dist[cur] + 1 >= best) continue;  // cannot improve
      for (auto [w, l] : adj[v]) {
        long long j2 = ((j + l) % N + N) % N;
        long long nxt = idx(w, j2);
        if (dist[nxt] < 0) {
          dist[nxt] = dist[cur] + 1;
          q.push_back(nxt);
        }
      }
    }
    for (long long j = 1; j < N; ++j) {
      long long dd = dist[idx(src, j)];
      if (dd >= 0 && (best < 0 || dd < best)) best = dd;
    }
  }
  check_internal(best >= 1 && best <= ub,
                 "systole: no essential cycle within the certified bound; "
                 "degree labeling inconsistent with the circle retract");
  return (int)best;
}

namespace {

// Away-pointing germ at a vertex: edge id and the direction flag (false =
// leaves along the orientation, true = leaves against it).
long long germ_key(int edge, bool against) { return 2LL * edge + (against ? 1 : 0); }

long long corner_key(int vertex, long long g1, long long g2) {
  if (g1 > g2) std::swap(g1, g2);
  return ((long long)vertex << 42) ^ (g1 << 21) ^ g2;
}

// The two away-germs of a corner between consecutive sides k and k+1.
std::pair<long long, long long> corner_germs(const Square& sq, int k) {
  const auto& a = sq.sides[k];
  const auto& b = sq.sides[(k + 1) % 4];
  return {germ_key(a.edge, !a.reversed), germ_key(b.edge, b.reversed)};
}

std::unordered_set<long long> corner_set(const CubeComplex& C) {
  std::unordered_set<long long> out;
  for (const auto& sq : C.squares) {
    for (int k = 0; k < 4; ++k) {
      auto [g1, g2] = corner_germs(sq, k);
      int w = C.side_to(sq.sides[k]);
      out.insert(corner_key(w, g1, g2));
    }
  }
  return out;
}

// Canonical key of a square boundary under rotation and reflection.
std::string square_canon(const std::array<SquareSide, 4>& sides) {
  std::string best;
  auto encode = [](const std::array<SquareSide, 4>& s) {
    std::string k;
    for (const auto& side : s) {
      k += std::to_string(side.edge);
      k += side.reversed ? 'r' : 'f';
      k += ',';
    }
    return k;
  };
  std::array<SquareSide, 4> cur = sides;
  for (int refl = 0; refl < 2; ++refl) {
    for (int rot = 0; rot < 4; ++rot) {
      std::string k = encode(cur);
      if (best.empty() || k < best) best = k;
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    }
    // reflect: reverse traversal order and flip each side
    std::reverse(cur.begin(), cur.end());
    for (auto& side : cur) side.reversed = !side.reversed;
  }
  return best;
}

}  // namespace

LocalIsometryReport check_local_isometry(const CubeComplex& Y, const CubeComplex& X,
                                         const CombMap& f) {
  Y.validate();
  X.validate();
  check_input((int)f.vertex_map.size() == Y.num_vertices &&
                  f.edge_map.size() == Y.edges.size() &&
                  f.edge_reversed.size() == Y.edges.size(),
              "map tables do not match the domain complex");
  for (int v = 0; v < Y.num_vertices; ++v)
    check_input(f.vertex_map[v] >= 0 && f.vertex_map[v] < X.num_vertices,
                "vertex image out of range");
  for (size_t e = 0; e < Y.edges.size(); ++e) {
    const int ie = f.edge_map[e];
    check_input(ie >= 0 && ie < (int)X.edges.size(), "edge image out of range");
    const int iu = f.vertex_map[Y.edges[e].u];
    const int iv = f.vertex_map[Y.edges[e].v];
    const bool ok = f.edge_reversed[e] ? (X.edges[ie].u == iv && X.edges[ie].v == iu)
                                       : (X.edges[ie].u == iu && X.edges[ie].v == iv);
    check_input(ok, "edge " + std::to_string(e) + " does not map over its endpoints");
  }
  std::unordered_set<std::string> x_squares;
  for (const auto& sq : X.squares) x_squares.insert(square_canon(sq.sides));
  for (size_t s = 0; s < Y.squares.size(); ++s) {
    std::array<SquareSide, 4> img{};
    for (int k = 0; k < 4; ++k) {
      img[k].edge = f.edge_map[Y.squares[s].sides[k].edge];
      img[k].reversed =
          Y.squares[s].sides[k].reversed != f.edge_reversed[Y.squares[s].sides[k].edge];
    }
    check_input(x_squares.count(square_canon(img)) > 0,
                "square " + std::to_string(s) + " does not map onto a square");
  }

  // Germ sets per vertex of Y, and their images.
  std::vector<std::vector<long long>> germs(Y.num_vertices);
  for (int e = 0; e < (int)Y.edges.size(); ++e) {
    germs[Y.edges[e].u].push_back(germ_key(e, false));
    germs[Y.edges[e].v].push_back(germ_key(e, true));
  }
  auto image_germ = [&](long long g) {
    const int e = (int)(g / 2);
    const bool against = g % 2;
    return germ_key(f.edge_map[e], against != f.edge_reversed[e]);
  };

  LocalIsometryReport rep;
  for (int v = 0; v < Y.num_vertices; ++v) {
    std::unordered_map<long long, long long> seen;
    for (long long g : germs[v]) {
      auto [it, fresh] = seen.emplace(image_germ(g), g);
      if (!fresh) {
        rep.ok = false;
        rep.violation = "edges " + std::to_string(it->second / 2) + " and " +
                        std::to_string(g / 2) + " fold together at vertex " +
                        std::to_string(v);
        return rep;
      }
    }
  }

  const auto corners_x = corner_set(X);
  const auto corners_y = corner_set(Y);
  for (int v = 0; v < Y.num_vertices; ++v) {
    for (size_t i = 0; i < germs[v].size(); ++i) {
      for (size_t j = i; j < germs[v].size(); ++j) {
        const long long g1 = germs[v][i], g2 = germs[v][j];
        if (!corners_x.count(corner_key(f.vertex_map[v], image_germ(g1), image_germ(g2))))
          continue;
        if (!corners_y.count(corner_key(v, g1, g2))) {
          rep.ok = false;
          rep.violation = "missing corner at vertex " + std::to_string(v) +
                          " between edges " + std::to_string(g1 / 2) + " and " +
                          std::to_string(g2 / 2);
          return rep;
        }
      }
    }
  }
  rep.ok = true;
  return rep;
}

std::string write_cube_complex(const CubeComplex& X) {
  std::ostringstream os;
  os << "fpsc-complex 1\n";
  os << "vertices " << X.num_vertices << '\n';
  for (const auto& e : X.edges) os << "edge " << e.u << ' ' << e.v << '\n';
  for (const auto& sq : X.squares) {
    os << "square";
    for (const auto& side : sq.sides) {
      os << ' ' << side.edge;
      if (side.reversed) os << 'r';
    }
    os << '\n';
  }
  return os.str();
}

CubeComplex parse_cube_complex(std::istream& in) {
  CubeComplex X;
  std::string line;
  int lineno = 0;
  bool saw_header = false, saw_vertices = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::string tok;
    if (!(is >> tok)) continue;
    auto fail = [&](const std::string& msg) -> void {
      throw input_error("line " + std::to_string(lineno) + ": " + msg);
    };
    if (!saw_header) {
      std::string ver;
      if (tok != "fpsc-complex" || !(is >> ver) || ver != "1")
        fail("expected header 'fpsc-complex 1'");
      saw_header = true;
      continue;
    }
    if (tok == "vertices") {
      if (!(is >> X.num_vertices) || X.num_vertices < 0) fail("bad vertex count");
      saw_vertices = true;
    } else if (tok == "edge") {
      Edge e;
      if (!(is >> e.u >> e.v)) fail("edge needs two endpoints");
      X.edges.push_back(e);
    } else if (tok == "square") {
      Square sq;
      for (int k = 0; k < 4; ++k) {
        std::string t;
        if (!(is >> t)) fail("square needs four sides");
        if (!t.empty() && t.back() == 'r') {
          sq.sides[k].reversed = true;
          t.pop_back();
        }
        try {
          size_t used = 0;
          sq.sides[k].edge = std::stoi(t, &used);
          if (used != t.size() || t.empty()) throw std::invalid_argument("trailing");
        } catch (...) {
          fail("bad edge reference '" + t + "'");
        }
      }
      X.squares.push_back(sq);
    } else {
      fail("unknown directive '" + tok + "'");
    }
  }
  check_input(saw_header, "missing 'fpsc-complex 1' header");
  check_input(saw_vertices, "missing 'vertices' line");
  X.validate();
  return X;
}

CubeComplex parse_cube_complex_string(const std::string& text) {
  std::istringstream is(text);
  return parse_cube_complex(is);
}

std::string dot_1skeleton(const CubeComplex& X) {
  std::ostringstream os;
  os << "digraph skeleton {\n";
  for (int v = 0; v < X.num_vertices; ++v) os << "  v" << v << ";\n";
  for (size_t e = 0; e < X.edges.size(); ++e)
    os << "  v" << X.edges[e].u << " -> v" << X.edges[e].v << " [label=\"e" << e << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string dot_hyperplane_graph(const CubeComplex& X, const std::vector<Hyperplane>& hs) {
  std::ostringstream os;
  os << "graph hyperplanes {\n";
  for (const auto& h : hs)
    os << "  h" << h.id << " [label=\"h" << h.id << " (" << h.edges.size() << " edges)"
       << (h.self_crossing ? " self-crossing" : "") << "\"];\n";
  for (size_t i = 0; i < hs.size(); ++i) {
    for (size_t j = i + 1; j < hs.size(); ++j) {
      if (crosses(X, hs[i], hs[j]))
        os << "  h" << hs[i].id << " -- h" << hs[j].id << ";\n";
      else if (osculates(X, hs[i], hs[j]))
        os << "  h" << hs[i].id << " -- h" << hs[j].id << " [style=dashed];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace fpsc
