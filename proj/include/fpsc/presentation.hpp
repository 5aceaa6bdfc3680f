#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fpsc/word.hpp"

namespace fpsc {

// A free product of free and free-abelian factors together with a finite list
// of relators, each stored as a cyclically reduced word in normal form.
struct Presentation {
  std::vector<FactorDescriptor> factors;
  std::vector<FPWord> relators;

  // Throws input_error on malformed factors, clashing generator names, or a
  // relator that is empty or not cyclically reduced.
  void validate() const;

  // (factor index, generator index) for a generator name, or (-1,-1).
  std::pair<int, int> find_generator(const std::string& name) const;
};

// Build a word from "name^exp" tokens (exp omitted means 1) and normalize it.
FPWord parse_word_tokens(const std::vector<std::string>& tokens, const Presentation& pres);

// Text format:
//   fpsc-presentation 1
//   factor <name> free|abelian <rank> <gen>...
//   rel <gen[^exp]>...
// Blank lines and '#' comments are ignored.
Presentation parse_presentation(std::istream& in);
Presentation parse_presentation_string(const std::string& text);
Presentation load_presentation_file(const std::string& path);

std::string write_presentation(const Presentation& pres);

}  // namespace fpsc
