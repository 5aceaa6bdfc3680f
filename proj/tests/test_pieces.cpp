#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "fpsc/errors.hpp"
#include "fpsc/pieces.hpp"
#include "helpers.hpp"

using namespace fpsc;
using testutil::grid_pres;
using testutil::with_relators;

namespace {

// ---- independent piece oracle ----
//
// Materializes every occurrence (rotations of each relator and of its inverse,
// plus the conjugates that start inside a split syllable) as a plain syllable
// vector and measures all pairwise common prefixes directly.

bool oracle_common_divisor(const FactorElement& a, const FactorElement& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == FactorKind::Free) {
    return !a.letters.empty() && !b.letters.empty() && a.letters[0] == b.letters[0];
  }
  for (size_t i = 0; i < a.exps.size() && i < b.exps.size(); ++i) {
    if ((a.exps[i] > 0 && b.exps[i] > 0) || (a.exps[i] < 0 && b.exps[i] < 0)) return true;
  }
  return false;
}

// (prefix, suffix) pairs with both parts nontrivial.
std::vector<std::pair<FactorElement, FactorElement>> oracle_proper_splits(
    const FactorElement& h) {
  std::vector<std::pair<FactorElement, FactorElement>> out;
  if (h.kind == FactorKind::Free) {
    for (size_t i = 1; i < h.letters.size(); ++i) {
      out.push_back({FactorElement::from_letters({h.letters.begin(), h.letters.begin() + i}),
                     FactorElement::from_letters({h.letters.begin() + i, h.letters.end()})});
    }
    return out;
  }
  std::vector<long long> s(h.exps.size(), 0);
  while (true) {
    size_t j = 0;
    for (; j < s.size(); ++j) {
      if (s[j] != h.exps[j]) {
        s[j] += h.exps[j] > 0 ? 1 : -1;
        for (size_t t = 0; t < j; ++t) s[t] = 0;
        break;
      }
    }
    if (j == s.size()) break;
    bool proper = false;
    for (size_t t = 0; t < s.size(); ++t) proper = proper || s[t] != h.exps[t];
    if (!proper) continue;
    std::vector<long long> pre(h.exps.size());
    for (size_t t = 0; t < s.size(); ++t) pre[t] = h.exps[t] - s[t];
    out.push_back({FactorElement::from_exps(pre), FactorElement::from_exps(s)});
  }
  return out;
}

struct OracleReport {
  long long num = 0, den = 1;
  std::vector<long long> per_relator;
  bool duplicate = false;
};

OracleReport piece_oracle(const Presentation& p) {
  struct O {
    int rel;
    bool inv;
    std::vector<Syllable> w;
  };
  std::vector<O> occs;
  for (int r = 0; r < (int)p.relators.size(); ++r) {
    for (int inv = 0; inv < 2; ++inv) {
      FPWord base = inv ? fp_inverse(p.relators[r]) : p.relators[r];
      const int n = base.syllable_length();
      for (int k = 0; k < n; ++k) {
        std::vector<Syllable> rot;
        for (int t = 0; t < n; ++t) rot.push_back(base.syllables[(k + t) % n]);
        occs.push_back({r, inv == 1, rot});
        for (const auto& [pre, suf] : oracle_proper_splits(rot[0].elem)) {
          std::vector<Syllable> w;
          w.push_back({rot[0].factor, suf});
          w.insert(w.end(), rot.begin() + 1, rot.end());
          w.push_back({rot[0].factor, pre});
          occs.push_back({r, inv == 1, std::move(w)});
        }
      }
    }
  }

  OracleReport out;
  out.per_relator.assign(p.relators.size(), 0);
  auto improve = [&](long long v, long long d) {
    if (v * out.den > out.num * d) {
      out.num = v;
      out.den = d;
    }
  };
  for (size_t a = 0; a < occs.size(); ++a) {
    for (size_t b = a + 1; b < occs.size(); ++b) {
      const auto& A = occs[a];
      const auto& B = occs[b];
      const long long la = (long long)A.w.size(), lb = (long long)B.w.size();
      const long long minlen = std::min(la, lb);
      long long run = 0;
      while (run < minlen && A.w[(size_t)run] == B.w[(size_t)run]) ++run;
      const bool same = A.rel == B.rel;
      const long long cap = same ? minlen - 1 : minlen;
      long long val;
      if (run == minlen) {
        if (same && A.inv != B.inv && la == lb) continue;
        if (!same) out.duplicate = true;
        val = std::min(run, cap);
      } else {
        bool partial = A.w[(size_t)run].factor == B.w[(size_t)run].factor &&
                       oracle_common_divisor(A.w[(size_t)run].elem, B.w[(size_t)run].elem);
        val = std::min(run + (partial ? 1 : 0), cap);
      }
      if (val <= 0) continue;
      out.per_relator[A.rel] = std::max(out.per_relator[A.rel], val);
      out.per_relator[B.rel] = std::max(out.per_relator[B.rel], val);
      improve(val, la);
      improve(val, lb);
    }
  }
  return out;
}

// Letter-level oracle for the classical metric: rotations only, no splits.
OracleReport classical_oracle(const Presentation& p) {
  struct O {
    int rel;
    bool inv;
    std::vector<int> w;
  };
  std::vector<O> occs;
  std::vector<long long> lens;
  for (int r = 0; r < (int)p.relators.size(); ++r) {
    std::vector<int> letters;
    for (const auto& s : p.relators[r].syllables) {
      for (int l : s.elem.letters) letters.push_back(2 * s.factor + (l < 0 ? 1 : 0));
    }
    lens.push_back((long long)letters.size());
    std::vector<int> inv(letters.rbegin(), letters.rend());
    for (int& t : inv) t ^= 1;
    const int n = (int)letters.size();
    for (int variant = 0; variant < 2; ++variant) {
      const auto& base = variant ? inv : letters;
      for (int k = 0; k < n; ++k) {
        std::vector<int> rot;
        for (int t = 0; t < n; ++t) rot.push_back(base[(k + t) % n]);
        occs.push_back({r, variant == 1, std::move(rot)});
      }
    }
  }
  OracleReport out;
  out.per_relator.assign(p.relators.size(), 0);
  for (size_t a = 0; a < occs.size(); ++a) {
    for (size_t b = a + 1; b < occs.size(); ++b) {
      const auto& A = occs[a];
      const auto& B = occs[b];
      const long long minlen = std::min(A.w.size(), B.w.size());
      long long run = 0;
      while (run < minlen && A.w[(size_t)run] == B.w[(size_t)run]) ++run;
      const bool same = A.rel == B.rel;
      if (run == minlen) {
        if (same && A.inv != B.inv && A.w.size() == B.w.size()) continue;
        if (!same) out.duplicate = true;
      }
      long long val = std::min(run, same ? minlen - 1 : minlen);
      if (val <= 0) continue;
      out.per_relator[A.rel] = std::max(out.per_relator[A.rel], val);
      out.per_relator[B.rel] = std::max(out.per_relator[B.rel], val);
    }
  }
  for (size_t r = 0; r < p.relators.size(); ++r) {
    if (out.per_relator[r] * out.den > out.num * lens[r]) {
      out.num = out.per_relator[r];
      out.den = lens[r];
    }
  }
  return out;
}

void compare_star(const Presentation& p, int n) {
  StarReport rep = check_cstar(p, n);
  OracleReport ora = piece_oracle(p);
  REQUIRE(rep.exact);
  CHECK(rep.worst_num * ora.den == rep.worst_den * ora.num);
  REQUIRE(rep.per_relator.size() == ora.per_relator.size());
  for (size_t r = 0; r < ora.per_relator.size(); ++r) {
    CAPTURE(r);
    CHECK(rep.per_relator[r].worst_piece == ora.per_relator[r]);
  }
  CHECK(rep.duplicate_relators == ora.duplicate);
  CHECK(rep.passed == ratio_below(ora.num, ora.den, n));
  // No relator over free or free-abelian factors is conjugate to its inverse.
  CHECK_FALSE(rep.self_inverse_conjugate);
}

}  // namespace

TEST_CASE("staircase relators: frozen worst pieces") {
  SUBCASE("m = 21") {
    Presentation p = grid_pres(21);
    StarReport rep = check_cstar(p, 20);
    CHECK(rep.passed);
    CHECK(rep.exact);
    CHECK(rep.worst_num == 2);
    CHECK(rep.worst_den == 42);
    CHECK(rep.worst_piece.syllable_count == 2);
    REQUIRE(rep.per_relator.size() == 1);
    CHECK(rep.per_relator[0].worst_piece == 2);
    CHECK(rep.per_relator[0].relator_length == 42);
    CHECK_FALSE(check_cstar(p, 21).passed);
    CHECK_FALSE(check_cstar(p, 25).passed);
  }
  SUBCASE("m = 2 fails every n >= 2") {
    Presentation p = grid_pres(2);
    StarReport rep = check_cstar(p, 6);
    CHECK_FALSE(rep.passed);
    CHECK(rep.worst_num * 2 == rep.worst_den);  // ratio 1/2
    CHECK(rep.per_relator[0].worst_piece == 2);
    CHECK(rep.per_relator[0].relator_length == 4);
    compare_star(p, 6);
  }
  SUBCASE("m = 8 passes at n = 6") {
    Presentation p = grid_pres(8);
    StarReport rep = check_cstar(p, 6);
    CHECK(rep.passed);
    CHECK(rep.worst_num == 2);
    CHECK(rep.worst_den == 16);
    CHECK_FALSE(check_cstar(p, 8).passed);
  }
}

TEST_CASE("two-syllable relator with a divisible syllable") {
  Presentation p = with_relators(testutil::ac_factors(), {{"a", "c^2"}});
  StarReport rep = check_cstar(p, 2);
  CHECK_FALSE(rep.passed);  // the c-divisor piece gives ratio 1/2
  CHECK(rep.worst_num == 1);
  CHECK(rep.worst_den == 2);
  compare_star(p, 2);
}

TEST_CASE("relator with no pieces at all") {
  Presentation p = with_relators(testutil::ac_factors(), {{"a", "c"}});
  StarReport rep = check_cstar(p, 100);
  CHECK(rep.passed);
  CHECK(rep.worst_num == 0);
  compare_star(p, 100);
}

TEST_CASE("duplicate relators are flagged and fail") {
  SUBCASE("verbatim rotation") {
    Presentation p = with_relators(testutil::ac_factors(), {{"a", "c"}, {"c", "a"}});
    StarReport rep = check_cstar(p, 2);
    CHECK(rep.duplicate_relators);
    CHECK_FALSE(rep.passed);
    CHECK_FALSE(rep.notes.empty());
    compare_star(p, 2);
  }
  SUBCASE("inverse copy") {
    Presentation p =
        with_relators(testutil::ac_factors(), {{"a", "c"}, {"c^-1", "a^-1"}});
    StarReport rep = check_cstar(p, 2);
    CHECK(rep.duplicate_relators);
    CHECK_FALSE(rep.passed);
  }
}

TEST_CASE("proper-power relator is flagged") {
  Presentation p = with_relators(testutil::ac_factors(), {{"a", "c", "a", "c"}});
  StarReport rep = check_cstar(p, 2);
  CHECK(rep.proper_power_relator);
  CHECK_FALSE(rep.passed);  // rotations coincide, worst piece 3 of 4
  CHECK(rep.per_relator[0].worst_piece == 3);
  compare_star(p, 2);
}

TEST_CASE("single-syllable relators are outside the star domain") {
  Presentation p = with_relators(testutil::ac_factors(), {{"a^5"}});
  CHECK_THROWS_AS(check_cstar(p, 2), input_error);
  CHECK_THROWS_AS(enumerate_pieces(p), input_error);
}

TEST_CASE("random presentations agree with the oracle") {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> nrel(1, 2), nsyl(1, 2), coord(-2, 2), letter(1, 2),
      flen(1, 2), sign(0, 1);
  int tested = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Presentation p;
    p.factors.push_back({"A", FactorKind::FreeAbelian, 2, {"a", "b"}});
    p.factors.push_back({"F", FactorKind::Free, 2, {"x", "y"}});
    int R = nrel(rng);
    bool ok = true;
    for (int r = 0; r < R && ok; ++r) {
      std::vector<Syllable> raw;
      int pairs = nsyl(rng);
      for (int s = 0; s < 2 * pairs; ++s) {
        if (s % 2 == 0) {
          FactorElement e = FactorElement::from_exps({(long long)coord(rng), (long long)coord(rng)});
          if (e.is_identity()) e = FactorElement::from_exps({1, 0});
          raw.push_back({0, e});
        } else {
          std::vector<int> ls;
          int L = flen(rng);
          for (int i = 0; i < L; ++i) ls.push_back(letter(rng) * (sign(rng) ? 1 : -1));
          FactorElement e = FactorElement::from_letters(ls);
          if (e.is_identity()) e = FactorElement::from_letters({1});
          raw.push_back({1, e});
        }
      }
      FPWord w = cyclic_reduce(normalize(raw, p.factors));
      if (w.syllable_length() < 2) ok = false;
      p.relators.push_back(std::move(w));
    }
    if (!ok) continue;
    p.validate();
    CAPTURE(trial);
    compare_star(p, 7);
    ++tested;
  }
  CHECK(tested >= 40);
}

TEST_CASE("enumerate_pieces lists every maximal piece value") {
  Presentation p = grid_pres(2);
  auto pieces = enumerate_pieces(p);
  REQUIRE_FALSE(pieces.empty());
  int maxval = 0;
  for (const auto& pr : pieces) {
    CHECK_FALSE(pr.word.empty());
    CHECK(pr.syllable_count >= 1);
    CHECK(pr.letter_count == pr.word.letter_length());
    maxval = std::max(maxval, pr.syllable_count);
  }
  CHECK(maxval == 2);
  CHECK(pieces.front().syllable_count == 2);  // sorted worst-first
}

TEST_CASE("oversized occurrence sets go to the bound engine") {
  Presentation p = grid_pres(95);
  CHECK_THROWS_AS(enumerate_pieces(p), resource_error);
  StarReport rep = check_cstar(p, 20);
  CHECK_FALSE(rep.exact);
  CHECK(rep.worst_is_bound);
  CHECK(rep.passed);  // bound 2 of 190
  CHECK(rep.per_relator[0].worst_piece == 2);
  CHECK(rep.per_relator[0].relator_length == 190);
  bool noted = false;
  for (const auto& n : rep.notes) noted = noted || n.find("upper bound") != std::string::npos;
  CHECK(noted);
  // The true worst piece is 2 syllables (same staircase alignment as m = 21),
  // so the certified bound of 2 is an upper bound that happens to be tight.
  CHECK(rep.worst_num >= 2);
}

TEST_CASE("classical checker matches the letter oracle") {
  SUBCASE("power of a single letter") {
    Presentation p = with_relators(testutil::xy_factors(), {{"x^10"}});
    StarReport rep = check_classical_cprime(p, 2);
    CHECK_FALSE(rep.passed);
    CHECK(rep.worst_num == 9);
    CHECK(rep.worst_den == 10);
    CHECK(rep.proper_power_relator);
    CHECK(rep.metric == "letters");
  }
  SUBCASE("commutator-like relator") {
    Presentation p = with_relators(testutil::xy_factors(), {{"x", "y", "x^-1", "y^-2"}});
    StarReport rep = check_classical_cprime(p, 3);
    OracleReport ora = classical_oracle(p);
    CHECK(rep.worst_num * ora.den == rep.worst_den * ora.num);
    CHECK(rep.per_relator[0].worst_piece == ora.per_relator[0]);
  }
  SUBCASE("random free-product words") {
    std::mt19937 rng(211);
    std::uniform_int_distribution<int> pairs(1, 3), e(1, 3), sign(0, 1), nrel(1, 2);
    int tested = 0;
    for (int trial = 0; trial < 40; ++trial) {
      Presentation p = testutil::xy_factors();
      int R = nrel(rng);
      for (int r = 0; r < R; ++r) {
        std::vector<std::string> toks;
        int m = pairs(rng);
        for (int i = 0; i < m; ++i) {
          toks.push_back("x^" + std::to_string(e(rng) * (sign(rng) ? 1 : -1)));
          toks.push_back("y^" + std::to_string(e(rng) * (sign(rng) ? 1 : -1)));
        }
        p.relators.push_back(testutil::word_of(p, toks));
      }
      p.validate();
      CAPTURE(trial);
      StarReport rep = check_classical_cprime(p, 4);
      OracleReport ora = classical_oracle(p);
      CHECK(rep.worst_num * ora.den == rep.worst_den * ora.num);
      REQUIRE(rep.per_relator.size() == ora.per_relator.size());
      for (size_t r = 0; r < ora.per_relator.size(); ++r) {
        CHECK(rep.per_relator[r].worst_piece == ora.per_relator[r]);
      }
      CHECK(rep.duplicate_relators == ora.duplicate);
      CHECK(rep.passed == ratio_below(ora.num, ora.den, 4));
      ++tested;
    }
    CHECK(tested == 40);
  }
  SUBCASE("non-free factors are rejected") {
    Presentation p = grid_pres(2);
    CHECK_THROWS_AS(check_classical_cprime(p, 2), input_error);
  }
}

TEST_CASE("ratio_below uses cross multiplication") {
  CHECK(ratio_below(2, 42, 20));
  CHECK_FALSE(ratio_below(2, 42, 21));
  CHECK(ratio_below(0, 1, 1000));
  CHECK_FALSE(ratio_below(1, 2, 2));
}
