#include "fpsc/word.hpp"

#include <numeric>
#include <sstream>

#include "fpsc/errors.hpp"

namespace fpsc {

int FPWord::letter_length() const {
  int total = 0;
  for (const auto& s : syllables) total += (int)s.elem.letter_length();
  return total;
}

FPWord normalize(const std::vector<Syllable>& raw,
                 const std::vector<FactorDescriptor>& factors) {
  FPWord out;
  for (const auto& s : raw) {
    check_input(s.factor >= 0 && s.factor < (int)factors.size(),
                "syllable refers to unknown factor index " + std::to_string(s.factor));
    const auto& fd = factors[s.factor];
    check_input(s.elem.conforms_to(fd.kind, fd.rank),
                "syllable element does not match factor '" + fd.name + "'");
    if (s.elem.is_identity()) continue;
    if (!out.syllables.empty() && out.syllables.back().factor == s.factor) {
      FactorElement merged = factor_mul(out.syllables.back().elem, s.elem);
      if (merged.is_identity()) {
        out.syllables.pop_back();
      } else {
        out.syllables.back().elem = std::move(merged);
      }
    } else {
      out.syllables.push_back(s);
    }
  }
  // A pop can expose two same-factor neighbours, so sweep until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Syllable> next;
    next.reserve(out.syllables.size());
    for (auto& s : out.syllables) {
      if (!next.empty() && next.back().factor == s.factor) {
        FactorElement merged = factor_mul(next.back().elem, s.elem);
        changed = true;
        if (merged.is_identity()) {
          next.pop_back();
        } else {
          next.back().elem = std::move(merged);
        }
      } else {
        next.push_back(std::move(s));
      }
    }
    out.syllables = std::move(next);
  }
  return out;
}

FPWord fp_inverse(const FPWord& w) {
  FPWord out;
  out.syllables.reserve(w.syllables.size());
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it) {
    out.syllables.push_back({it->factor, it->elem.inverse()});
  }
  return out;
}

FPWord fp_mul(const FPWord& a, const FPWord& b) {
  FPWord out = a;
  for (const auto& s : b.syllables) {
    if (!out.syllables.empty() && out.syllables.back().factor == s.factor) {
      FactorElement merged = factor_mul(out.syllables.back().elem, s.elem);
      if (merged.is_identity()) {
        out.syllables.pop_back();
      } else {
        out.syllables.back().elem = std::move(merged);
      }
    } else {
      out.syllables.push_back(s);
    }
  }
  return out;
}

bool is_cyclically_reduced(const FPWord& w) {
  if (w.syllable_length() <= 1) return true;
  return w.syllables.front().factor != w.syllables.back().factor;
}

bool is_weakly_cyclically_reduced(const FPWord& w) {
  if (w.syllable_length() <= 1) return true;
  const auto& first = w.syllables.front();
  const auto& last = w.syllables.back();
  if (first.factor != last.factor) return true;
  return !(last.elem.inverse() == first.elem);
}

FPWord cyclic_reduce(const FPWord& w) {
  FPWord out = w;
  while (out.syllable_length() >= 2 &&
         out.syllables.front().factor == out.syllables.back().factor) {
    FactorElement merged = factor_mul(out.syllables.back().elem, out.syllables.front().elem);
    out.syllables.pop_back();
    if (merged.is_identity()) {
      out.syllables.erase(out.syllables.begin());
    } else {
      out.syllables.front().elem = std::move(merged);
    }
  }
  return out;
}

namespace {

// Proper-power test inside a single factor.
bool factor_proper_power(const FactorElement& g) {
  if (g.kind == FactorKind::FreeAbelian) {
    long long d = 0;
    for (long long e : g.exps) d = std::gcd(d, e < 0 ? -e : e);
    return d >= 2;
  }
  // Strip the conjugating prefix: g = u c u^{-1} with c cyclically reduced.
  std::vector<int> v = g.letters;
  size_t lo = 0, hi = v.size();
  while (hi - lo >= 2 && v[lo] == -v[hi - 1]) {
    ++lo;
    --hi;
  }
  size_t n = hi - lo;
  if (n < 2) return false;
  for (size_t d = 1; d <= n / 2; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (size_t i = d; i < n && ok; ++i) ok = (v[lo + i] == v[lo + i - d]);
    if (ok) return true;
  }
  return false;
}

}  // namespace

bool is_proper_power(const FPWord& w) {
  FPWord core = cyclic_reduce(w);
  size_t n = core.syllables.size();
  if (n == 0) return false;
  if (n == 1) return factor_proper_power(core.syllables[0].elem);
  for (size_t d = 1; d <= n / 2; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (size_t i = d; i < n && ok; ++i) ok = (core.syllables[i] == core.syllables[i - d]);
    if (ok) return true;
  }
  return false;
}

std::string to_string(const FPWord& w, const std::vector<FactorDescriptor>& factors) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first_tok = true;
  auto emit = [&](const std::string& name, long long e) {
    if (!first_tok) os << ' ';
    first_tok = false;
    os << name;
    if (e != 1) os << '^' << e;
  };
  for (const auto& s : w.syllables) {
    check_internal(s.factor >= 0 && s.factor < (int)factors.size(), "syllable factor out of range");
    const auto& fd = factors[s.factor];
    if (s.elem.kind == FactorKind::FreeAbelian) {
      for (int i = 0; i < (int)s.elem.exps.size(); ++i) {
        if (s.elem.exps[i] != 0) emit(fd.generators[i], s.elem.exps[i]);
      }
    } else {
      size_t i = 0;
      const auto& ls = s.elem.letters;
      while (i < ls.size()) {
        size_t j = i;
        while (j < ls.size() && ls[j] == ls[i]) ++j;
        int gen = (ls[i] > 0 ? ls[i] : -ls[i]) - 1;
        long long e = (long long)(j - i) * (ls[i] > 0 ? 1 : -1);
        emit(fd.generators[gen], e);
        i = j;
      }
    }
  }
  return os.str();
}

}  // namespace fpsc
