#include <doctest.h>

#include <random>
#include <vector>

#include "fpsc/errors.hpp"
#include "fpsc/necklace.hpp"
#include "helpers.hpp"

using namespace fpsc;

namespace {

long long total_cells(const CubeComplex& C) {
  return (long long)C.num_vertices + (long long)C.edges.size() + (long long)C.squares.size();
}

}  // namespace

TEST_CASE("long wedge over two rank-2 free-abelian factors") {
  Presentation p = testutil::ac_factors();
  LongWedge W = build_long_wedge(p.factors, 1);
  CHECK(W.complex.num_vertices == 3);
  CHECK(W.complex.edges.size() == 6);
  CHECK(W.complex.squares.size() == 2);
  CHECK(W.basepoint == 0);
  REQUIRE(W.arm_edges.size() == 2);
  CHECK(W.arm_edges[0].size() == 1);
  CHECK(W.arm_edges[1].size() == 1);
  REQUIRE(W.gen_loops.size() == 2);
  CHECK(W.gen_loops[0].size() == 2);
  CHECK(W.gen_loops[1].size() == 2);
  CHECK(W.factor_base.size() == 2);
  for (int fb : W.factor_base) {
    CHECK(fb > 0);
    CHECK(fb < 3);
  }
}

TEST_CASE("long wedge over one free factor is a rose on a subdivided arm") {
  FactorDescriptor f;
  f.name = "F";
  f.kind = FactorKind::Free;
  f.rank = 2;
  f.generators = {"s", "t"};
  LongWedge W = build_long_wedge({f}, 2);
  CHECK(W.complex.num_vertices == 3);  // basepoint, arm midpoint, tip
  CHECK(W.complex.edges.size() == 4);  // 2 arm edges, 2 loops
  CHECK(W.complex.squares.empty());
  CHECK(W.arm_edges[0].size() == 2);
}

TEST_CASE("long wedge rejects bad inputs") {
  Presentation p = testutil::ac_factors();
  CHECK_THROWS_WITH_AS(build_long_wedge(p.factors, 0), doctest::Contains("q must be >= 1"),
                       input_error);
  CHECK_THROWS_WITH_AS(build_long_wedge({}, 1), doctest::Contains("at least one factor"),
                       input_error);
  FactorDescriptor z3;
  z3.name = "Z3";
  z3.kind = FactorKind::FreeAbelian;
  z3.rank = 3;
  z3.generators = {"u", "v", "w"};
  CHECK_THROWS_WITH_AS(build_long_wedge({z3}, 1), doctest::Contains("not materialized"),
                       input_error);
}

TEST_CASE("necklace of a two-letter relator is a hexagon at q=1") {
  Presentation p = testutil::ac_factors();
  FPWord R = testutil::word_of(p, {"a", "c"});
  LongWedge W = build_long_wedge(p.factors, 1);
  NecklaceComplex Y = build_necklace(R, W);

  CHECK(Y.complex.num_vertices == 6);
  CHECK(Y.complex.edges.size() == 6);
  CHECK(Y.complex.squares.empty());
  REQUIRE(Y.blocks.size() == 2);
  for (const auto& blk : Y.blocks) {
    CHECK(blk.is_path);
    CHECK(blk.diam == 1);
    CHECK(blk.edges.size() == 1);
    CHECK(blk.vertices.size() == 2);
  }
  REQUIRE(Y.arcs.size() == 2);
  CHECK(Y.arcs[0].size() == 2);
  CHECK(Y.arcs[1].size() == 2);
  REQUIRE(Y.circle_edges.size() == 6);
  int letter_edges = 0;
  for (bool b : Y.circle_is_letter) letter_edges += b ? 1 : 0;
  CHECK(letter_edges == 2);

  Y.degree.validate(Y.complex);
  CHECK(Y.degree.label[Y.arcs[0][0]] == 1);
  long long nonzero = 0;
  for (long long l : Y.degree.label) nonzero += l != 0 ? 1 : 0;
  CHECK(nonzero == 1);

  CHECK(systole_circle_retract(Y.complex, Y.degree) == 6);
  CHECK(systole_of_necklace(Y, 1) == 6);
  for (int q = 1; q <= 5; ++q) CHECK(systole_of_necklace(Y, q) == 2 + 4 * q);

  auto iso = check_local_isometry(Y.complex, W.complex, Y.to_wedge);
  CHECK(iso.ok);
}

TEST_CASE("necklace stats give the closed-form systole") {
  Presentation p = testutil::grid_pres(2);
  const FPWord& R = p.relators[0];  // a c a^2 c^2
  NecklaceStats st = necklace_stats(R);
  CHECK(st.syllables == 4);
  CHECK(st.letters == 6);
  CHECK(st.max_block_diameter == 2);
  CHECK(st.is_circle_cone);
  CHECK(st.systole(1) == 14);
  CHECK(st.systole(2) == 22);

  LongWedge W = build_long_wedge(p.factors, 1);
  NecklaceComplex Y = build_necklace(R, W);
  CHECK((int)Y.circle_edges.size() == 14);
  CHECK(systole_of_necklace(Y, 1) == 14);
  CHECK(systole_of_necklace(Y, 2) == 22);
}

TEST_CASE("mixed-exponent syllables build box blocks") {
  Presentation p = testutil::ac_factors();
  FPWord R = testutil::word_of(p, {"a", "b", "c"});  // syllables (1,1) then (1,0)
  NecklaceStats st = necklace_stats(R);
  CHECK(st.syllables == 2);
  CHECK(st.letters == 3);
  CHECK(!st.is_circle_cone);
  CHECK(st.systole(1) == 7);

  LongWedge W = build_long_wedge(p.factors, 1);
  NecklaceComplex Y = build_necklace(R, W);
  REQUIRE(Y.blocks.size() == 2);
  const HullBlock& box = Y.blocks[0];
  CHECK(!box.is_path);
  CHECK(box.diam == 2);
  CHECK(box.vertices.size() == 4);
  CHECK(box.edges.size() == 4);
  CHECK(Y.complex.squares.size() == 1);
  CHECK(Y.blocks[1].is_path);
  CHECK(Y.circle_edges.size() == 7);
  CHECK(systole_circle_retract(Y.complex, Y.degree) == 7);
  CHECK(check_local_isometry(Y.complex, W.complex, Y.to_wedge).ok);
}

TEST_CASE("block diameters equal syllable letter lengths") {
  Presentation p = testutil::ac_factors();
  FPWord R = testutil::word_of(p, {"a^3", "b^-2", "c^2", "d", "a^-1", "c^-4"});
  LongWedge W = build_long_wedge(p.factors, 2);
  NecklaceComplex Y = build_necklace(R, W);
  REQUIRE(Y.blocks.size() == R.syllable_length());
  for (size_t k = 0; k < Y.blocks.size(); ++k)
    CHECK(Y.blocks[k].diam == R.syllables[k].elem.letter_length());
  for (const auto& arc : Y.arcs) CHECK(arc.size() == 4);  // 2q edges
}

TEST_CASE("cell-count formula allots one spare cell per arc") {
  // The closed form charges 4q cells to each arc; a materialized arc reuses
  // the two block endpoints, so it adds 2q edges and 2q-1 vertices.
  Presentation p = testutil::ac_factors();
  for (auto tokens : {std::vector<std::string>{"a", "c"}, std::vector<std::string>{"a", "b", "c"}}) {
    FPWord R = testutil::word_of(p, tokens);
    for (int q : {1, 2, 3}) {
      LongWedge W = build_long_wedge(p.factors, q);
      NecklaceComplex Y = build_necklace(R, W);
      CHECK(necklace_cell_count(R, q) == total_cells(Y.complex) + R.syllable_length());
    }
  }
}

TEST_CASE("necklace construction rejects bad relators") {
  Presentation p = testutil::ac_factors();
  LongWedge W = build_long_wedge(p.factors, 1);

  FPWord single = testutil::word_of(p, {"a^5"});
  CHECK_THROWS_WITH_AS(build_necklace(single, W), doctest::Contains("at least 2 syllables"),
                       input_error);
  CHECK_THROWS_AS(necklace_stats(single), input_error);

  FPWord unreduced = parse_word_tokens({"a", "c", "a^-1"}, p);
  REQUIRE(unreduced.syllable_length() == 3);
  CHECK_THROWS_WITH_AS(build_necklace(unreduced, W), doctest::Contains("cyclically reduced"),
                       input_error);

  LongWedge W1 = build_long_wedge({p.factors[0]}, 1);
  FPWord R = testutil::word_of(p, {"a", "c"});
  CHECK_THROWS_WITH_AS(build_necklace(R, W1), doctest::Contains("missing from the wedge"),
                       input_error);

  FPWord huge = testutil::word_of(p, {"a^3000000", "c"});
  CHECK_THROWS_AS(build_necklace(huge, W), resource_error);
  CHECK(necklace_cell_count(huge, 1) > 5000000);
}

TEST_CASE("systole cross-check validates its arguments") {
  Presentation p = testutil::ac_factors();
  FPWord R = testutil::word_of(p, {"a", "c"});
  LongWedge W2 = build_long_wedge(p.factors, 2);
  NecklaceComplex Y2 = build_necklace(R, W2);
  CHECK_THROWS_WITH_AS(systole_of_necklace(Y2, 1), doctest::Contains("subdivision 1"),
                       input_error);
  LongWedge W = build_long_wedge(p.factors, 1);
  NecklaceComplex Y = build_necklace(R, W);
  CHECK_THROWS_AS(systole_of_necklace(Y, 0), input_error);
}

TEST_CASE("random relators map to the wedge by a local isometry") {
  Presentation p;
  FactorDescriptor A;
  A.name = "A";
  A.kind = FactorKind::FreeAbelian;
  A.rank = 2;
  A.generators = {"a", "b"};
  FactorDescriptor F;
  F.name = "F";
  F.kind = FactorKind::Free;
  F.rank = 2;
  F.generators = {"s", "t"};
  p.factors = {A, F};

  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> exp_dist(-3, 3);
  std::uniform_int_distribution<int> len_dist(1, 3);
  std::uniform_int_distribution<int> letter_dist(0, 3);  // s, s^-1, t, t^-1
  std::uniform_int_distribution<int> syl_dist(2, 6);

  for (int trial = 0; trial < 5; ++trial) {
    const int n = syl_dist(rng) * 2;  // alternate factors, close up cyclically
    std::vector<Syllable> syls;
    for (int k = 0; k < n; ++k) {
      Syllable s;
      s.factor = k % 2;
      if (s.factor == 0) {
        long long e0 = 0, e1 = 0;
        while (e0 == 0 && e1 == 0) {
          e0 = exp_dist(rng);
          e1 = exp_dist(rng);
        }
        s.elem = FactorElement::from_exps({e0, e1});
      } else {
        std::vector<int> letters;
        int prev = -1;
        for (int l = 0, len = len_dist(rng); l < len; ++l) {
          int pick = letter_dist(rng);
          // avoid an inverse pair so the syllable stays reduced at this length
          while (prev >= 0 && (pick ^ 1) == prev) pick = letter_dist(rng);
          letters.push_back((pick & 1) ? -(pick / 2 + 1) : pick / 2 + 1);
          prev = pick;
        }
        s.elem = FactorElement::from_letters(letters);
      }
      syls.push_back(std::move(s));
    }
    FPWord R = cyclic_reduce(normalize(syls, p.factors));
    if (R.syllable_length() < 2) continue;
    for (int q : {1, 2}) {
      LongWedge W = build_long_wedge(p.factors, q);
      NecklaceComplex Y = build_necklace(R, W);
      auto iso = check_local_isometry(Y.complex, W.complex, Y.to_wedge);
      CHECK(iso.ok);
      if (!iso.ok) MESSAGE(iso.violation);
      CHECK(systole_circle_retract(Y.complex, Y.degree) ==
            necklace_stats(R).systole(q));
    }
  }
}
