#include "fpsc/pieces.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <numeric>

#include "fpsc/errors.hpp"
#include "fpsc/seqalg.hpp"

namespace fpsc {

namespace {

constexpr long long kMaxExactOccurrences = 15000;
constexpr long long kMaxExactTotalTokens = 2000000;
// Degenerate inputs (duplicate or periodic relators) make the quadratic walk
// slow; above these sizes they are routed to the bound engine, which still
// reports the failure.
constexpr long long kFlaggedExactOccurrences = 1000;
constexpr long long kFlaggedExactMaxLen = 200;

struct Interner {
  std::map<std::string, int> ids;
  std::vector<std::pair<int, FactorElement>> toks;  // (factor index, element)

  int intern(int factor, const FactorElement& e) {
    std::string key = std::to_string(factor);
    key += '|';
    key += e.key();
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = (int)toks.size();
    ids.emplace(std::move(key), id);
    toks.emplace_back(factor, e);
    return id;
  }
};

std::vector<int> tokens_of(const FPWord& w, Interner& in) {
  std::vector<int> out;
  out.reserve(w.syllables.size());
  for (const auto& s : w.syllables) out.push_back(in.intern(s.factor, s.elem));
  return out;
}

// Nontrivial common left divisor test (elements of the same factor).
bool shares_left_divisor(const FactorElement& a, const FactorElement& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == FactorKind::Free) {
    return !a.letters.empty() && !b.letters.empty() && a.letters[0] == b.letters[0];
  }
  if (a.exps.size() != b.exps.size()) return false;
  for (size_t i = 0; i < a.exps.size(); ++i) {
    if ((a.exps[i] > 0 && b.exps[i] > 0) || (a.exps[i] < 0 && b.exps[i] < 0)) return true;
  }
  return false;
}

struct Occ {
  OccurrenceDescriptor d;
  std::vector<int> toks;
};

struct WordDir {
  int relator = 0;
  bool inverted = false;
  std::vector<int> toks;
};

// Forward and inverse token arrays for every relator.
std::vector<WordDir> word_dirs(const Presentation& p, Interner& in) {
  std::vector<WordDir> out;
  for (int i = 0; i < (int)p.relators.size(); ++i) {
    out.push_back({i, false, tokens_of(p.relators[i], in)});
    out.push_back({i, true, tokens_of(fp_inverse(p.relators[i]), in)});
  }
  return out;
}

long long occurrence_estimate(const Presentation& p) {
  long long total = 0;
  for (const auto& r : p.relators) {
    long long per = (long long)r.syllables.size();
    for (const auto& s : r.syllables) {
      long long c = proper_right_divisor_count(s.elem);
      per += std::min(c, (long long)1 << 40);
      if (per > (long long)1 << 40) return per * 2;
    }
    total += 2 * per;  // both inversions
  }
  return total;
}

std::vector<Occ> build_occurrences(const std::vector<WordDir>& dirs, Interner& in) {
  std::vector<Occ> occs;
  for (const auto& wd : dirs) {
    const int n = (int)wd.toks.size();
    for (int k = 0; k < n; ++k) {
      Occ plain;
      plain.d = {wd.relator, wd.inverted, k, -1};
      plain.toks.reserve(n);
      for (int t = 0; t < n; ++t) plain.toks.push_back(wd.toks[(k + t) % n]);
      occs.push_back(std::move(plain));

      // Copy: intern() below may grow in.toks and invalidate references.
      const int factor = in.toks[wd.toks[k]].first;
      const FactorElement elem = in.toks[wd.toks[k]].second;
      auto splits = right_divisor_splits(elem);
      int idx = 0;
      for (const auto& sp : splits) {
        if (sp.prefix.is_identity()) continue;  // the plain rotation above
        Occ o;
        o.d = {wd.relator, wd.inverted, k, idx++};
        o.toks.reserve(n + 1);
        o.toks.push_back(in.intern(factor, sp.suffix));
        for (int t = 1; t < n; ++t) o.toks.push_back(wd.toks[(k + t) % n]);
        o.toks.push_back(in.intern(factor, sp.prefix));
        occs.push_back(std::move(o));
      }
    }
  }
  return occs;
}

FPWord piece_word(const Interner& in, const std::vector<int>& toks, long long count,
                  const FactorElement* tail, int tail_factor) {
  FPWord w;
  for (long long t = 0; t < count; ++t) {
    const auto& [f, e] = in.toks[toks[(size_t)t]];
    w.syllables.push_back({f, e});
  }
  if (tail != nullptr) w.syllables.push_back({tail_factor, *tail});
  return w;
}

struct PrecheckFlags {
  bool duplicate = false;
  bool self_inverse = false;
  bool proper_power = false;
  long long max_len = 0;
};

PrecheckFlags prechecks(const std::vector<WordDir>& dirs, StarReport& rep) {
  PrecheckFlags f;
  const int m = (int)dirs.size();
  for (int a = 0; a < m; ++a) {
    f.max_len = std::max<long long>(f.max_len, (long long)dirs[a].toks.size());
    if (!dirs[a].inverted && cyclic_period(dirs[a].toks) < (int)dirs[a].toks.size()) {
      f.proper_power = true;
      rep.notes.push_back("relator " + std::to_string(dirs[a].relator + 1) +
                          " is periodic as a cyclic word");
    }
  }
  for (int a = 0; a < m; ++a) {
    if (dirs[a].inverted) continue;  // mirrored comparisons add nothing
    for (int b = a + 1; b < m; ++b) {
      if (!cyclically_equal(dirs[a].toks, dirs[b].toks)) continue;
      if (dirs[a].relator == dirs[b].relator) {
        f.self_inverse = true;
        rep.notes.push_back("relator " + std::to_string(dirs[a].relator + 1) +
                            " is conjugate to its own inverse; identical-content "
                            "comparisons against the inverse are excluded");
      } else {
        f.duplicate = true;
        rep.notes.push_back("relators " + std::to_string(dirs[a].relator + 1) + " and " +
                            std::to_string(dirs[b].relator + 1) +
                            " coincide as cyclic words (up to inversion)");
      }
    }
  }
  rep.duplicate_relators = f.duplicate;
  rep.self_inverse_conjugate = f.self_inverse;
  rep.proper_power_relator = f.proper_power;
  return f;
}

struct RatioTracker {
  long long num = 0, den = 1;
  bool improve(long long n2, long long d2) {
    if (n2 * den > num * d2) {
      num = n2;
      den = d2;
      return true;
    }
    return false;
  }
};

// Exhaustive pairwise engine. `collect` gathers deduplicated piece records.
void exact_engine(const Presentation& p, const std::vector<Occ>& occs, const Interner& in,
                  StarReport& rep, std::map<std::string, PieceRecord>* collect) {
  const int N = (int)occs.size();
  const int R = (int)p.relators.size();
  rep.per_relator.assign(R, {});
  for (int i = 0; i < R; ++i) {
    rep.per_relator[i].relator = i;
    rep.per_relator[i].relator_length = (long long)p.relators[i].syllables.size();
    rep.per_relator[i].exact = true;
  }
  RatioTracker worst;
  int wa = -1, wb = -1;
  long long wval = 0;
  bool wpartial = false;

  for (int a = 0; a < N; ++a) {
    const Occ& A = occs[a];
    const long long la = (long long)A.toks.size();
    for (int b = a + 1; b < N; ++b) {
      const Occ& B = occs[b];
      const long long lb = (long long)B.toks.size();
      const long long minlen = std::min(la, lb);
      long long run = 0;
      while (run < minlen && A.toks[(size_t)run] == B.toks[(size_t)run]) ++run;
      const bool same_rel = A.d.relator == B.d.relator;
      const long long cap = same_rel ? minlen - 1 : minlen;
      long long val;
      bool partial = false;
      if (run == minlen) {
        if (same_rel && A.d.inverted != B.d.inverted && la == lb) {
          rep.self_inverse_conjugate = true;
          continue;  // identical content against the own inverse: excluded
        }
        if (!same_rel) rep.duplicate_relators = true;
        val = std::min(run, cap);
      } else {
        const auto& [fa, ea] = in.toks[A.toks[(size_t)run]];
        const auto& [fb, eb] = in.toks[B.toks[(size_t)run]];
        partial = (fa == fb) && shares_left_divisor(ea, eb);
        val = run + (partial ? 1 : 0);
        if (val > cap) {
          val = cap;
          partial = false;  // the capped content is an exact token prefix
        }
      }
      if (val <= 0) continue;

      auto& ra = rep.per_relator[A.d.relator];
      auto& rb = rep.per_relator[B.d.relator];
      ra.worst_piece = std::max(ra.worst_piece, val);
      rb.worst_piece = std::max(rb.worst_piece, val);
      bool better = worst.improve(val, la);
      if (worst.improve(val, lb)) better = true;
      if (better) {
        wa = a;
        wb = b;
        wval = val;
        wpartial = partial;
      }

      if (collect != nullptr) {
        long long exact_part = partial ? val - 1 : val;
        FactorElement div;
        int divf = -1;
        if (partial) {
          const auto& [fa2, ea2] = in.toks[A.toks[(size_t)exact_part]];
          const auto& [fb2, eb2] = in.toks[B.toks[(size_t)exact_part]];
          (void)fb2;
          auto d = common_left_divisor(ea2, eb2);
          check_internal(d.has_value(), "partial tail without a common divisor");
          div = *d;
          divf = fa2;
        }
        FPWord pw = piece_word(in, A.toks, exact_part, partial ? &div : nullptr, divf);
        std::string key;
        for (const auto& s : pw.syllables) {
          key += std::to_string(s.factor);
          key += '|';
          key += s.elem.key();
          key += ';';
        }
        if (collect->find(key) == collect->end()) {
          PieceRecord pr;
          pr.word = pw;
          pr.syllable_count = (int)val;
          pr.letter_count = pw.letter_length();
          pr.source_a = A.d;
          pr.source_b = B.d;
          pr.partial_tail = partial;
          collect->emplace(std::move(key), std::move(pr));
        }
      }
    }
  }

  rep.worst_num = worst.num;
  rep.worst_den = worst.den;
  if (wa >= 0) {
    const Occ& A = occs[wa];
    const Occ& B = occs[wb];
    long long exact_part = wpartial ? wval - 1 : wval;
    FactorElement div;
    int divf = -1;
    if (wpartial) {
      const auto& [fa, ea] = in.toks[A.toks[(size_t)exact_part]];
      const auto& [fb, eb] = in.toks[B.toks[(size_t)exact_part]];
      (void)fb;
      auto d = common_left_divisor(ea, eb);
      check_internal(d.has_value(), "partial tail without a common divisor");
      div = *d;
      divf = fa;
    }
    rep.worst_piece.word = piece_word(in, A.toks, exact_part, wpartial ? &div : nullptr, divf);
    rep.worst_piece.syllable_count = (int)wval;
    rep.worst_piece.letter_count = rep.worst_piece.word.letter_length();
    rep.worst_piece.source_a = A.d;
    rep.worst_piece.source_b = B.d;
    rep.worst_piece.partial_tail = wpartial;
  }
  rep.exact = true;
}

// ---- bound engine (suffix array over doubled plain rotations) ----

struct BigMeta {
  std::vector<int> seq;
  std::vector<int> wd_of;   // word-dir index per position, -1 for separators
  std::vector<int> off_of;  // in-word offset per position
  std::vector<int> wd_len;  // tokens per word-dir
  std::vector<int> wd_rel;
  std::vector<bool> wd_inv;
};

BigMeta build_doubled(const std::vector<WordDir>& dirs, int next_free_id) {
  BigMeta m;
  int sep = next_free_id;
  for (int w = 0; w < (int)dirs.size(); ++w) {
    const auto& t = dirs[w].toks;
    const int n = (int)t.size();
    m.wd_len.push_back(n);
    m.wd_rel.push_back(dirs[w].relator);
    m.wd_inv.push_back(dirs[w].inverted);
    for (int i = 0; i < 2 * n - 1; ++i) {
      m.seq.push_back(t[i % n]);
      m.wd_of.push_back(w);
      m.off_of.push_back(i);
    }
    m.seq.push_back(sep++);
    m.wd_of.push_back(-1);
    m.off_of.push_back(-1);
  }
  return m;
}

struct ScanOut {
  std::vector<long long> best;                  // per word-dir: max pair value
  std::vector<std::array<long long, 3>> wit;    // per word-dir: (src pos, partner pos, value)
  bool duplicate = false;
  bool self_inverse = false;
};

// For every suffix that starts a rotation, find the best valid partner value.
// Pair value: exact common run, capped at min(len)-1 within one relator and at
// min(len) across relators (a bite of the cross cap means one relator's full
// cyclic word occurs inside another).
ScanOut big_scan(const BigMeta& m) {
  const auto sa = suffix_array(m.seq);
  const auto lcp = lcp_array(m.seq, sa);
  const int N = (int)sa.size();
  ScanOut out;
  out.best.assign(m.wd_len.size(), 0);
  out.wit.assign(m.wd_len.size(), {-1, -1, 0});

  auto valid = [&](int pos) {
    int w = m.wd_of[pos];
    return w >= 0 && m.off_of[pos] < m.wd_len[w];
  };
  auto pair_value = [&](int ps, int pt, long long g) -> long long {
    const int ws = m.wd_of[ps], wt = m.wd_of[pt];
    const long long ns = m.wd_len[ws], nt = m.wd_len[wt];
    const long long minlen = std::min(ns, nt);
    if (m.wd_rel[ws] == m.wd_rel[wt]) {
      if (m.wd_inv[ws] != m.wd_inv[wt] && g >= minlen) {
        out.self_inverse = true;
        return 0;
      }
      return std::min(g, minlen - 1);
    }
    if (g >= minlen) out.duplicate = true;
    return std::min(g, minlen);
  };

  for (int r = 0; r < N; ++r) {
    const int ps = sa[r];
    if (!valid(ps)) continue;
    const int w = m.wd_of[ps];
    long long best = 0;
    std::array<long long, 3> wit = {-1, -1, 0};
    long long g = std::numeric_limits<long long>::max();
    for (int r2 = r - 1; r2 >= 0; --r2) {
      g = std::min(g, (long long)lcp[r2]);
      if (g == 0 || g <= best) break;
      const int pt = sa[r2];
      if (!valid(pt)) continue;
      long long v = pair_value(ps, pt, g);
      if (v > best) {
        best = v;
        wit = {ps, pt, v};
      }
      if (g <= best) break;
    }
    g = std::numeric_limits<long long>::max();
    for (int r2 = r + 1; r2 < N; ++r2) {
      g = std::min(g, (long long)lcp[r2 - 1]);
      if (g == 0 || g <= best) break;
      const int pt = sa[r2];
      if (!valid(pt)) continue;
      long long v = pair_value(ps, pt, g);
      if (v > best) {
        best = v;
        wit = {ps, pt, v};
      }
      if (g <= best) break;
    }
    if (best > out.best[w]) {
      out.best[w] = best;
      out.wit[w] = wit;
    }
  }
  return out;
}

void bound_engine(const Presentation& p, const std::vector<WordDir>& dirs, Interner& in,
                  StarReport& rep) {
  BigMeta m = build_doubled(dirs, (int)in.toks.size());
  ScanOut sc = big_scan(m);
  rep.duplicate_relators = rep.duplicate_relators || sc.duplicate;
  rep.self_inverse_conjugate = rep.self_inverse_conjugate || sc.self_inverse;

  const int R = (int)p.relators.size();
  rep.per_relator.assign(R, {});
  RatioTracker worst;
  for (int i = 0; i < R; ++i) {
    const long long n_i = (long long)p.relators[i].syllables.size();
    long long run = std::max(sc.best[2 * i], sc.best[2 * i + 1]);
    long long ub = std::min(run + 2, n_i);
    if (sc.duplicate) ub = n_i;  // a full cyclic overlap is a full-relator piece
    rep.per_relator[i] = {i, ub, n_i, false};
    worst.improve(ub, n_i);
  }
  rep.worst_num = worst.num;
  rep.worst_den = worst.den;
  rep.exact = false;
  rep.worst_is_bound = true;
  rep.notes.push_back(
      "piece values are certified upper bounds: longest exact syllable run + 2 "
      "(one split head, one partial tail)");
}

void classical_engine(const Presentation& p, int n, StarReport& rep) {
  // Letters as tokens: 2*factor + (1 if inverse letter).
  Interner dummy;
  std::vector<WordDir> dirs;
  for (int i = 0; i < (int)p.relators.size(); ++i) {
    std::vector<int> letters;
    for (const auto& s : p.relators[i].syllables) {
      for (int l : s.elem.letters) {
        letters.push_back(2 * s.factor + (l < 0 ? 1 : 0));
      }
    }
    std::vector<int> inv(letters.rbegin(), letters.rend());
    for (int& t : inv) t ^= 1;
    dirs.push_back({i, false, std::move(letters)});
    dirs.push_back({i, true, std::move(inv)});
  }

  PrecheckFlags fl = prechecks(dirs, rep);
  (void)fl;
  int maxtok = 0;
  for (const auto& d : dirs)
    for (int t : d.toks) maxtok = std::max(maxtok, t);
  BigMeta m = build_doubled(dirs, maxtok + 1);
  ScanOut sc = big_scan(m);
  rep.duplicate_relators = rep.duplicate_relators || sc.duplicate;
  rep.self_inverse_conjugate = rep.self_inverse_conjugate || sc.self_inverse;

  const int R = (int)p.relators.size();
  rep.per_relator.assign(R, {});
  RatioTracker worst;
  int wit_wd = -1;
  for (int i = 0; i < R; ++i) {
    const long long len_i = (long long)p.relators[i].letter_length();
    long long v = std::max(sc.best[2 * i], sc.best[2 * i + 1]);
    rep.per_relator[i] = {i, v, len_i, true};
    if (worst.improve(v, len_i)) {
      wit_wd = sc.best[2 * i] >= sc.best[2 * i + 1] ? 2 * i : 2 * i + 1;
    }
  }
  rep.worst_num = worst.num;
  rep.worst_den = worst.den;
  rep.exact = true;

  if (wit_wd >= 0 && sc.wit[wit_wd][0] >= 0) {
    const auto& wit = sc.wit[wit_wd];
    std::vector<Syllable> raw;
    for (long long t = 0; t < wit[2]; ++t) {
      int tok = m.seq[(size_t)(wit[0] + t)];
      int factor = tok / 2;
      FactorElement e = FactorElement::from_letters({tok % 2 == 0 ? 1 : -1});
      raw.push_back({factor, e});
    }
    rep.worst_piece.word = normalize(raw, p.factors);
    rep.worst_piece.syllable_count = rep.worst_piece.word.syllable_length();
    rep.worst_piece.letter_count = (int)wit[2];
    int wd_a = m.wd_of[(size_t)wit[0]];
    int wd_b = m.wd_of[(size_t)wit[1]];
    rep.worst_piece.source_a = {m.wd_rel[wd_a], m.wd_inv[wd_a] ? true : false,
                               m.off_of[(size_t)wit[0]], -1};
    rep.worst_piece.source_b = {m.wd_rel[wd_b], m.wd_inv[wd_b] ? true : false,
                               m.off_of[(size_t)wit[1]], -1};
  }
  rep.passed = ratio_below(rep.worst_num, rep.worst_den, n);
}

void require_star_domain(const Presentation& p) {
  p.validate();
  for (size_t i = 0; i < p.relators.size(); ++i) {
    check_input(p.relators[i].syllable_length() >= 2,
                "relator " + std::to_string(i + 1) +
                    " has syllable length < 2; the syllable-metric checker needs "
                    "at least two syllables per relator");
  }
}

}  // namespace

std::vector<PieceRecord> enumerate_pieces(const Presentation& p) {
  require_star_domain(p);
  long long est = occurrence_estimate(p);
  check_resource(est <= kMaxExactOccurrences,
                 "occurrence set too large to enumerate exhaustively (" + std::to_string(est) +
                     " conjugates)");
  Interner in;
  auto dirs = word_dirs(p, in);
  StarReport rep;
  prechecks(dirs, rep);
  auto occs = build_occurrences(dirs, in);
  long long tokens = 0;
  for (const auto& o : occs) tokens += (long long)o.toks.size();
  check_resource(tokens <= kMaxExactTotalTokens, "occurrence token volume too large");
  std::map<std::string, PieceRecord> pieces;
  exact_engine(p, occs, in, rep, &pieces);
  std::vector<PieceRecord> out;
  out.reserve(pieces.size());
  for (auto& [k, v] : pieces) out.push_back(std::move(v));
  std::stable_sort(out.begin(), out.end(), [](const PieceRecord& x, const PieceRecord& y) {
    if (x.syllable_count != y.syllable_count) return x.syllable_count > y.syllable_count;
    if (x.source_a.relator != y.source_a.relator) return x.source_a.relator < y.source_a.relator;
    return x.source_a.rotation < y.source_a.rotation;
  });
  return out;
}

StarReport check_cstar(const Presentation& p, int n) {
  check_input(n >= 2, "denominator n must be >= 2");
  require_star_domain(p);
  StarReport rep;
  rep.n = n;
  rep.metric = "syllables";

  Interner in;
  auto dirs = word_dirs(p, in);
  PrecheckFlags fl = prechecks(dirs, rep);

  long long est = occurrence_estimate(p);
  bool flagged = fl.duplicate || fl.proper_power;
  bool exact_ok = est <= kMaxExactOccurrences &&
                  !(flagged && (est > kFlaggedExactOccurrences || fl.max_len > kFlaggedExactMaxLen));
  if (exact_ok) {
    auto occs = build_occurrences(dirs, in);
    long long tokens = 0;
    for (const auto& o : occs) tokens += (long long)o.toks.size();
    if (tokens <= kMaxExactTotalTokens) {
      exact_engine(p, occs, in, rep, nullptr);
      rep.passed = ratio_below(rep.worst_num, rep.worst_den, n);
      return rep;
    }
  }
  bound_engine(p, dirs, in, rep);
  rep.passed = ratio_below(rep.worst_num, rep.worst_den, n);
  return rep;
}

StarReport check_classical_cprime(const Presentation& p, int n) {
  check_input(n >= 2, "denominator n must be >= 2");
  p.validate();
  for (const auto& f : p.factors) {
    check_input(f.kind == FactorKind::Free && f.rank == 1,
                "letter-metric checker requires every factor to be free of rank 1; factor '" +
                    f.name + "' is not");
  }
  StarReport rep;
  rep.n = n;
  rep.metric = "letters";
  classical_engine(p, n, rep);
  return rep;
}

}  // namespace fpsc
