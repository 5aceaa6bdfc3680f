#pragma once

#include <string>
#include <vector>

#include "fpsc/presentation.hpp"

namespace fpsc {

// Where an occurrence (a weakly cyclically reduced conjugate of a relator or
// its inverse) starts. split == -1 means the conjugate starts at a syllable
// boundary; otherwise it starts inside syllable `rotation`, at the split with
// this index in the deterministic divisor-split enumeration of that syllable.
struct OccurrenceDescriptor {
  int relator = -1;
  bool inverted = false;
  int rotation = 0;
  int split = -1;
};

struct PieceRecord {
  FPWord word;
  int syllable_count = 0;  // a partial tail syllable counts as one whole syllable
  int letter_count = 0;
  OccurrenceDescriptor source_a;
  OccurrenceDescriptor source_b;
  bool partial_tail = false;
};

struct RelatorPieceStats {
  int relator = 0;
  long long worst_piece = 0;     // in the report's metric
  long long relator_length = 0;  // same metric, unsplit conjugate
  bool exact = true;             // false when worst_piece is a certified upper bound
};

struct StarReport {
  int n = 0;
  std::string metric;  // "syllables" or "letters"
  bool passed = false;
  bool exact = true;  // true when piece values are measured, false when bounded
  // Worst piece over all pairs, as a ratio against the conjugate containing it.
  long long worst_num = 0;
  long long worst_den = 1;
  PieceRecord worst_piece;     // populated when exact
  bool worst_is_bound = false;
  std::vector<RelatorPieceStats> per_relator;
  bool duplicate_relators = false;
  bool self_inverse_conjugate = false;
  bool proper_power_relator = false;
  std::vector<std::string> notes;
};

// All maximal common-prefix pieces over the symmetrized occurrence set,
// deduplicated by content. Desk-scale only (occurrence cap), else resource_error.
std::vector<PieceRecord> enumerate_pieces(const Presentation& p);

// Syllable-metric checker. Relators must have syllable length >= 2.
// Exhaustive below an internal occurrence threshold; above it the per-relator
// piece values are certified upper bounds (exact = false).
StarReport check_cstar(const Presentation& p, int n);

// Letter-metric checker for presentations whose factors are all free of rank 1.
// Always exact (letters admit no partial matches).
StarReport check_classical_cprime(const Presentation& p, int n);

// True when the strict inequality worst < 1/n holds, by cross-multiplication.
inline bool ratio_below(long long num, long long den, int n) {
  return num * (long long)n < den;
}

}  // namespace fpsc
