#include "fpsc/necklace.hpp"

#include <algorithm>

#include "fpsc/errors.hpp"

namespace fpsc {

LongWedge build_long_wedge(const std::vector<FactorDescriptor>& factors, int q) {
  check_input(q >= 1, "subdivision q must be >= 1");
  check_input(!factors.empty(), "long wedge needs at least one factor");
  for (const auto& f : factors) {
    f.validate();
    check_input(f.kind == FactorKind::Free || f.rank <= 2,
                "factor '" + f.name +
                    "': free-abelian factors of rank >= 3 are not materialized "
                    "(blocks would need cubes of dimension >= 3)");
  }
  LongWedge W;
  W.q = q;
  W.factors = factors;
  CubeComplex& X = W.complex;
  X.num_vertices = 1;  // basepoint
  W.basepoint = 0;
  for (const auto& f : factors) {
    // Arm: q edges from the basepoint out to the factor's base vertex.
    std::vector<int> arm;
    int prev = W.basepoint;
    for (int j = 0; j < q; ++j) {
      const int next = X.num_vertices++;
      arm.push_back((int)X.edges.size());
      X.edges.push_back({prev, next});
      prev = next;
    }
    const int tip = prev;
    W.factor_base.push_back(tip);
    W.arm_edges.push_back(std::move(arm));
    // Factor complex: one vertex (the tip) carrying a loop per generator,
    // plus the commuting square for a rank-2 free-abelian factor.
    std::vector<int> loops;
    for (int g = 0; g < f.rank; ++g) {
      loops.push_back((int)X.edges.size());
      X.edges.push_back({tip, tip});
    }
    if (f.kind == FactorKind::FreeAbelian && f.rank == 2) {
      Square sq;
      sq.sides[0] = {loops[0], false};
      sq.sides[1] = {loops[1], false};
      sq.sides[2] = {loops[0], true};
      sq.sides[3] = {loops[1], true};
      X.squares.push_back(sq);
    }
    W.gen_loops.push_back(std::move(loops));
  }
  X.validate();
  return W;
}

namespace {

void require_necklace_domain(const FPWord& R) {
  check_input(R.syllable_length() >= 2,
              "necklace construction requires a relator with at least 2 syllables");
  check_input(is_cyclically_reduced(R), "relator must be cyclically reduced");
}

// The two box dimensions of a syllable (free syllables use (letters, 0)).
std::pair<long long, long long> block_dims(const Syllable& s) {
  if (s.elem.kind == FactorKind::Free) return {(long long)s.elem.letters.size(), 0};
  long long a = s.elem.exps.empty() ? 0 : s.elem.exps[0];
  long long b = s.elem.exps.size() > 1 ? s.elem.exps[1] : 0;
  return {a < 0 ? -a : a, b < 0 ? -b : b};
}

}  // namespace

NecklaceStats necklace_stats(const FPWord& R) {
  require_necklace_domain(R);
  NecklaceStats st;
  st.syllables = R.syllable_length();
  st.is_circle_cone = true;
  for (const auto& s : R.syllables) {
    const long long len = s.elem.letter_length();
    st.letters += len;
    st.max_block_diameter = std::max(st.max_block_diameter, len);
    if (s.elem.kind == FactorKind::FreeAbelian) {
      int nonzero = 0;
      for (long long e : s.elem.exps)
        if (e != 0) ++nonzero;
      if (nonzero > 1) st.is_circle_cone = false;
    }
  }
  return st;
}

long long necklace_cell_count(const FPWord& R, long long q) {
  require_necklace_domain(R);
  long long cells = 0;
  for (const auto& s : R.syllables) {
    auto [a, b] = block_dims(s);
    cells += (a + 1) * (b + 1);          // vertices
    cells += a * (b + 1) + b * (a + 1);  // edges
    cells += a * b;                      // squares
    cells += 4 * q;                      // arc edges and interior vertices
  }
  return cells;
}

NecklaceComplex build_necklace(const FPWord& R, const LongWedge& X) {
  require_necklace_domain(R);
  const int n = R.syllable_length();
  for (const auto& s : R.syllables) {
    check_input(s.factor >= 0 && s.factor < (int)X.factors.size(),
                "relator uses a factor missing from the wedge");
    const auto& fd = X.factors[s.factor];
    check_input(s.elem.conforms_to(fd.kind, fd.rank),
                "relator syllable does not match wedge factor '" + fd.name + "'");
  }
  check_resource(necklace_cell_count(R, X.q) <= 5000000,
                 "necklace too large to materialize at this subdivision");

  NecklaceComplex Y;
  Y.relator = R;
  Y.factors = X.factors;
  Y.q = X.q;
  CubeComplex& C = Y.complex;
  CombMap& f = Y.to_wedge;

  auto new_vertex = [&](int image) {
    f.vertex_map.push_back(image);
    return C.num_vertices++;
  };
  auto new_edge = [&](int u, int v, int image, bool rev) {
    f.edge_map.push_back(image);
    f.edge_reversed.push_back(rev);
    C.edges.push_back({u, v});
    return (int)C.edges.size() - 1;
  };

  // Blocks first.
  for (int k = 0; k < n; ++k) {
    const Syllable& s = R.syllables[k];
    const auto& fd = X.factors[s.factor];
    const int base = X.factor_base[s.factor];
    HullBlock blk;
    blk.syllable = k;
    blk.diam = s.elem.letter_length();
    if (fd.kind == FactorKind::Free) {
      blk.is_path = true;
      int prev = new_vertex(base);
      blk.initial = prev;
      blk.vertices.push_back(prev);
      for (int l : s.elem.letters) {
        const int next = new_vertex(base);
        const int gen = (l > 0 ? l : -l) - 1;
        blk.edges.push_back(new_edge(prev, next, X.gen_loops[s.factor][gen], l < 0));
        blk.vertices.push_back(next);
        prev = next;
      }
      blk.terminal = prev;
    } else {
      const auto [A, B] = block_dims(s);
      const bool xneg = !s.elem.exps.empty() && s.elem.exps[0] < 0;
      const bool yneg = s.elem.exps.size() > 1 && s.elem.exps[1] < 0;
      blk.is_path = A == 0 || B == 0;
      std::vector<std::vector<int>> grid(A + 1, std::vector<int>(B + 1));
      for (long long i = 0; i <= A; ++i)
        for (long long j = 0; j <= B; ++j) {
          grid[i][j] = new_vertex(base);
          blk.vertices.push_back(grid[i][j]);
        }
      std::vector<std::vector<int>> he(A, std::vector<int>(B + 1));
      std::vector<std::vector<int>> ve(A + 1, std::vector<int>(B));
      for (long long i = 0; i < A; ++i)
        for (long long j = 0; j <= B; ++j) {
          he[i][j] = new_edge(grid[i][j], grid[i + 1][j], X.gen_loops[s.factor][0], xneg);
          blk.edges.push_back(he[i][j]);
        }
      for (long long i = 0; i <= A; ++i)
        for (long long j = 0; j < B; ++j) {
          ve[i][j] = new_edge(grid[i][j], grid[i][j + 1], X.gen_loops[s.factor][1], yneg);
          blk.edges.push_back(ve[i][j]);
        }
      for (long long i = 0; i < A; ++i)
        for (long long j = 0; j < B; ++j) {
          Square sq;
          sq.sides[0] = {he[i][j], false};
          sq.sides[1] = {ve[i + 1][j], false};
          sq.sides[2] = {he[i][j + 1], true};
          sq.sides[3] = {ve[i][j], true};
          C.squares.push_back(sq);
        }
      blk.initial = grid[0][0];
      blk.terminal = grid[A][B];
    }
    Y.blocks.push_back(std::move(blk));
  }

  // Arcs: descend the arm of syllable k, ascend the arm of syllable k+1.
  const int q = X.q;
  for (int k = 0; k < n; ++k) {
    const int fk = R.syllables[k].factor;
    const int fk1 = R.syllables[(k + 1) % n].factor;
    std::vector<int> arc;
    int prev = Y.blocks[k].terminal;
    for (int j = 0; j < 2 * q; ++j) {
      int next;
      if (j == 2 * q - 1) {
        next = Y.blocks[(k + 1) % n].initial;
      } else {
        // images walk down arm fk to the basepoint, then up arm fk1
        const int img =
            j < q ? (j == q - 1 ? X.basepoint
                                : X.complex.edges[X.arm_edges[fk][q - 2 - j]].v)
                  : X.complex.edges[X.arm_edges[fk1][j - q]].v;
        next = new_vertex(img);
      }
      if (j < q) {
        arc.push_back(new_edge(prev, next, X.arm_edges[fk][q - 1 - j], true));
      } else {
        arc.push_back(new_edge(prev, next, X.arm_edges[fk1][j - q], false));
      }
      prev = next;
    }
    Y.arcs.push_back(std::move(arc));
  }

  // Geodesic circle: staircase through each block, then its arc.
  for (int k = 0; k < n; ++k) {
    const HullBlock& blk = Y.blocks[k];
    const auto [A, B] = block_dims(R.syllables[k]);
    if (R.syllables[k].elem.kind == FactorKind::Free) {
      for (int e : blk.edges) {
        Y.circle_edges.push_back(e);
        Y.circle_is_letter.push_back(true);
      }
    } else {
      // blk.edges lists horizontals (i, j) row-major then verticals; the
      // staircase takes horizontals at j=0, then verticals at i=A.
      for (long long i = 0; i < A; ++i) {
        Y.circle_edges.push_back(blk.edges[(size_t)i * (B + 1)]);
        Y.circle_is_letter.push_back(true);
      }
      const size_t voff = (size_t)A * (B + 1);
      for (long long j = 0; j < B; ++j) {
        Y.circle_edges.push_back(blk.edges[voff + (size_t)A * B + j]);
        Y.circle_is_letter.push_back(true);
      }
    }
    for (int e : Y.arcs[k]) {
      Y.circle_edges.push_back(e);
      Y.circle_is_letter.push_back(false);
    }
  }

  Y.degree.label.assign(C.edges.size(), 0);
  Y.degree.label[Y.arcs[0][0]] = 1;

  C.validate();
  Y.degree.validate(C);
  return Y;
}

int systole_of_necklace(const NecklaceComplex& Y, int q) {
  check_input(Y.q == 1, "systole cross-check expects a necklace built at subdivision 1");
  check_input(q >= 1, "subdivision q must be >= 1");
  const NecklaceStats st = necklace_stats(Y.relator);
  const long long expected = st.systole(q);
  const LongWedge W = build_long_wedge(Y.factors, q);
  const NecklaceComplex Yq = build_necklace(Y.relator, W);
  const int measured = systole_circle_retract(Yq.complex, Yq.degree, expected);
  check_internal(measured == expected,
                 "necklace systole mismatch: measured " + std::to_string(measured) +
                     ", formula gives " + std::to_string(expected));
  return measured;
}

}  // namespace fpsc
