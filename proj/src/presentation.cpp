#include "fpsc/presentation.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fpsc/errors.hpp"

namespace fpsc {

void Presentation::validate() const {
  check_input(!factors.empty(), "presentation has no factors");
  std::unordered_set<std::string> seen;
  for (const auto& f : factors) {
    f.validate();
    check_input(seen.insert(f.name).second, "duplicate factor name '" + f.name + "'");
    for (const auto& g : f.generators) {
      check_input(seen.insert(g).second, "generator name '" + g + "' used twice");
    }
  }
  for (size_t r = 0; r < relators.size(); ++r) {
    const FPWord& w = relators[r];
    check_input(!w.empty(), "relator " + std::to_string(r + 1) + " is trivial");
    for (size_t i = 0; i < w.syllables.size(); ++i) {
      const auto& s = w.syllables[i];
      check_input(s.factor >= 0 && s.factor < (int)factors.size(),
                  "relator " + std::to_string(r + 1) + " uses unknown factor");
      check_input(!s.elem.is_identity(),
                  "relator " + std::to_string(r + 1) + " has an identity syllable");
      check_input(s.elem.conforms_to(factors[s.factor].kind, factors[s.factor].rank),
                  "relator " + std::to_string(r + 1) + " has a syllable of wrong shape");
      check_input(i == 0 || w.syllables[i - 1].factor != s.factor,
                  "relator " + std::to_string(r + 1) + " is not in normal form");
    }
    check_input(is_cyclically_reduced(w),
                "relator " + std::to_string(r + 1) + " is not cyclically reduced");
  }
}

std::pair<int, int> Presentation::find_generator(const std::string& name) const {
  for (int f = 0; f < (int)factors.size(); ++f) {
    for (int g = 0; g < (int)factors[f].generators.size(); ++g) {
      if (factors[f].generators[g] == name) return {f, g};
    }
  }
  return {-1, -1};
}

FPWord parse_word_tokens(const std::vector<std::string>& tokens, const Presentation& pres) {
  std::vector<Syllable> raw;
  for (const auto& tok : tokens) {
    std::string name = tok;
    long long exp = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string etxt = tok.substr(caret + 1);
      try {
        size_t used = 0;
        exp = std::stoll(etxt, &used);
        check_input(used == etxt.size() && !etxt.empty(), "bad exponent");
      } catch (const input_error&) {
        throw;
      } catch (...) {
        throw input_error("bad exponent '" + etxt + "' in token '" + tok + "'");
      }
    }
    check_input(exp != 0, "zero exponent in token '" + tok + "'");
    auto [f, g] = pres.find_generator(name);
    check_input(f >= 0, "unknown generator '" + name + "'");
    const auto& fd = pres.factors[f];
    FactorElement e;
    if (fd.kind == FactorKind::FreeAbelian) {
      std::vector<long long> v(fd.rank, 0);
      v[g] = exp;
      e = FactorElement::from_exps(v);
    } else {
      long long count = exp < 0 ? -exp : exp;
      check_input(count <= 1000000, "exponent too large in token '" + tok + "'");
      std::vector<int> letters((size_t)count, exp > 0 ? g + 1 : -(g + 1));
      e = FactorElement::from_letters(letters);
    }
    raw.push_back({f, std::move(e)});
  }
  return normalize(raw, pres.factors);
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail_at(int lineno, const std::string& msg) {
  throw input_error("line " + std::to_string(lineno) + ": " + msg);
}

}  // namespace

Presentation parse_presentation(std::istream& in) {
  Presentation pres;
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  std::vector<std::pair<int, std::vector<std::string>>> rel_lines;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (!saw_header) {
      if (toks.size() != 2 || toks[0] != "fpsc-presentation" || toks[1] != "1") {
        fail_at(lineno, "expected header 'fpsc-presentation 1'");
      }
      saw_header = true;
      continue;
    }
    if (toks[0] == "factor") {
      if (toks.size() < 4) fail_at(lineno, "factor needs: name kind rank gens...");
      FactorDescriptor fd;
      fd.name = toks[1];
      if (toks[2] == "free") {
        fd.kind = FactorKind::Free;
      } else if (toks[2] == "abelian") {
        fd.kind = FactorKind::FreeAbelian;
      } else {
        fail_at(lineno, "factor kind must be 'free' or 'abelian', got '" + toks[2] + "'");
      }
      try {
        size_t used = 0;
        fd.rank = std::stoi(toks[3], &used);
        if (used != toks[3].size()) throw std::invalid_argument("trailing");
      } catch (...) {
        fail_at(lineno, "bad factor rank '" + toks[3] + "'");
      }
      if (fd.rank < 1 || fd.rank > 100000) fail_at(lineno, "factor rank out of range");
      if (toks.size() == 4) {
        // No generator names given: synthesize name1, name2, ...
        for (int i = 1; i <= fd.rank; ++i) fd.generators.push_back(fd.name + std::to_string(i));
      } else if ((int)toks.size() == 4 + fd.rank) {
        fd.generators.assign(toks.begin() + 4, toks.end());
      } else {
        fail_at(lineno, "factor '" + fd.name + "' declares rank " + std::to_string(fd.rank) +
                            " but lists " + std::to_string((int)toks.size() - 4) + " generators");
      }
      pres.factors.push_back(std::move(fd));
    } else if (toks[0] == "rel") {
      if (toks.size() < 2) fail_at(lineno, "empty rel line");
      rel_lines.emplace_back(lineno, std::vector<std::string>(toks.begin() + 1, toks.end()));
    } else {
      fail_at(lineno, "unknown directive '" + toks[0] + "'");
    }
  }
  check_input(saw_header, "missing 'fpsc-presentation 1' header");
  check_input(!pres.factors.empty(), "presentation declares no factors");
  for (auto& [rl, toks] : rel_lines) {
    FPWord w;
    try {
      w = parse_word_tokens(toks, pres);
    } catch (const input_error& e) {
      fail_at(rl, e.what());
    }
    if (w.empty()) fail_at(rl, "relator reduces to the identity");
    if (!is_cyclically_reduced(w)) fail_at(rl, "relator is not cyclically reduced");
    pres.relators.push_back(std::move(w));
  }
  pres.validate();
  return pres;
}

Presentation parse_presentation_string(const std::string& text) {
  std::istringstream is(text);
  return parse_presentation(is);
}

Presentation load_presentation_file(const std::string& path) {
  std::ifstream in(path);
  check_input(in.good(), "cannot open presentation file '" + path + "'");
  return parse_presentation(in);
}

std::string write_presentation(const Presentation& pres) {
  std::ostringstream os;
  os << "fpsc-presentation 1\n";
  for (const auto& f : pres.factors) {
    os << "factor " << f.name << ' '
       << (f.kind == FactorKind::FreeAbelian ? "abelian" : "free") << ' ' << f.rank;
    for (const auto& g : f.generators) os << ' ' << g;
    os << '\n';
  }
  for (const auto& r : pres.relators) {
    os << "rel " << to_string(r, pres.factors) << '\n';
  }
  return os.str();
}

}  // namespace fpsc
