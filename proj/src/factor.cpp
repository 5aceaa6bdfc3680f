#include "fpsc/factor.hpp"

#include <algorithm>
#include <cstring>
#include <set>

namespace fpsc {

void FactorDescriptor::validate() const {
  check_input(rank >= 1, "factor '" + name + "': rank must be >= 1");
  check_input((int)generators.size() == rank,
              "factor '" + name + "': expected " + std::to_string(rank) +
                  " generator names, got " + std::to_string(generators.size()));
  std::set<std::string> seen;
  for (const auto& g : generators) {
    check_input(!g.empty(), "factor '" + name + "': empty generator name");
    check_input(seen.insert(g).second,
                "factor '" + name + "': duplicate generator name '" + g + "'");
  }
}

FactorElement FactorElement::identity(FactorKind k, int rank) {
  FactorElement e;
  e.kind = k;
  if (k == FactorKind::FreeAbelian) e.exps.assign(rank, 0);
  return e;
}

FactorElement FactorElement::from_letters(std::vector<int> ls) {
  FactorElement e;
  e.kind = FactorKind::Free;
  e.letters.reserve(ls.size());
  for (int l : ls) {
    check_input(l != 0, "letter value 0 is not a generator");
    if (!e.letters.empty() && e.letters.back() == -l)
      e.letters.pop_back();
    else
      e.letters.push_back(l);
  }
  return e;
}

FactorElement FactorElement::from_exps(std::vector<long long> es) {
  FactorElement e;
  e.kind = FactorKind::FreeAbelian;
  e.exps = std::move(es);
  return e;
}

bool FactorElement::is_identity() const {
  if (kind == FactorKind::Free) return letters.empty();
  return std::all_of(exps.begin(), exps.end(), [](long long v) { return v == 0; });
}

int FactorElement::letter_length() const {
  if (kind == FactorKind::Free) return (int)letters.size();
  long long n = 0;
  for (long long v : exps) n += v < 0 ? -v : v;
  return (int)n;
}

FactorElement FactorElement::inverse() const {
  FactorElement r;
  r.kind = kind;
  if (kind == FactorKind::Free) {
    r.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back(-*it);
  } else {
    r.exps.reserve(exps.size());
    for (long long v : exps) r.exps.push_back(-v);
  }
  return r;
}

bool FactorElement::operator==(const FactorElement& o) const {
  return kind == o.kind && letters == o.letters && exps == o.exps;
}

bool FactorElement::conforms_to(FactorKind k, int rank) const {
  if (kind != k) return false;
  if (kind == FactorKind::FreeAbelian) return (int)exps.size() == rank;
  for (int l : letters) {
    int a = l < 0 ? -l : l;
    if (a < 1 || a > rank) return false;
  }
  return true;
}

std::string FactorElement::key() const {
  std::string k;
  k.push_back(kind == FactorKind::Free ? 'F' : 'A');
  if (kind == FactorKind::Free) {
    k.resize(1 + letters.size() * sizeof(int));
    if (!letters.empty()) std::memcpy(k.data() + 1, letters.data(), letters.size() * sizeof(int));
  } else {
    k.resize(1 + exps.size() * sizeof(long long));
    if (!exps.empty()) std::memcpy(k.data() + 1, exps.data(), exps.size() * sizeof(long long));
  }
  return k;
}

FactorElement factor_mul(const FactorElement& a, const FactorElement& b) {
  check_internal(a.kind == b.kind, "factor_mul: mixed factor kinds");
  if (a.kind == FactorKind::Free) {
    FactorElement r;
    r.kind = FactorKind::Free;
    r.letters = a.letters;
    for (int l : b.letters) {
      if (!r.letters.empty() && r.letters.back() == -l)
        r.letters.pop_back();
      else
        r.letters.push_back(l);
    }
    return r;
  }
  check_internal(a.exps.size() == b.exps.size(), "factor_mul: rank mismatch");
  FactorElement r;
  r.kind = FactorKind::FreeAbelian;
  r.exps.resize(a.exps.size());
  for (size_t i = 0; i < a.exps.size(); ++i) r.exps[i] = a.exps[i] + b.exps[i];
  return r;
}

std::optional<FactorElement> common_left_divisor(const FactorElement& a,
                                                 const FactorElement& b) {
  if (a.kind != b.kind) return std::nullopt;
  if (a.kind == FactorKind::Free) {
    size_t n = 0;
    while (n < a.letters.size() && n < b.letters.size() && a.letters[n] == b.letters[n]) ++n;
    if (n == 0) return std::nullopt;
    FactorElement d;
    d.kind = FactorKind::Free;
    d.letters.assign(a.letters.begin(), a.letters.begin() + n);
    return d;
  }
  if (a.exps.size() != b.exps.size()) return std::nullopt;
  FactorElement d;
  d.kind = FactorKind::FreeAbelian;
  d.exps.resize(a.exps.size());
  bool nontrivial = false;
  for (size_t i = 0; i < a.exps.size(); ++i) {
    long long x = a.exps[i], y = b.exps[i];
    long long m = 0;
    if (x > 0 && y > 0) m = std::min(x, y);
    if (x < 0 && y < 0) m = std::max(x, y);
    d.exps[i] = m;
    nontrivial |= m != 0;
  }
  if (!nontrivial) return std::nullopt;
  return d;
}

long long proper_right_divisor_count(const FactorElement& h) {
  if (h.kind == FactorKind::Free)
    return h.letters.empty() ? 0 : (long long)h.letters.size() - 1;
  long long total = 1;
  for (long long v : h.exps) {
    long long span = (v < 0 ? -v : v) + 1;
    if (total > (1LL << 40) / span) return 1LL << 40;  // saturate, caller only thresholds
    total *= span;
  }
  return total - 2 >= 0 ? total - 2 : 0;  // minus identity and h itself
}

std::vector<RightDivisorSplit> right_divisor_splits(const FactorElement& h) {
  std::vector<RightDivisorSplit> out;
  if (h.kind == FactorKind::Free) {
    const size_t L = h.letters.size();
    for (size_t j = 0; j < L; ++j) {
      // suffix starting at letter j; j == 0 is the full element
      RightDivisorSplit s;
      s.suffix.kind = FactorKind::Free;
      s.suffix.letters.assign(h.letters.begin() + j, h.letters.end());
      s.prefix.kind = FactorKind::Free;
      s.prefix.letters.assign(h.letters.begin(), h.letters.begin() + j);
      out.push_back(std::move(s));
    }
    return out;
  }
  // Free-abelian: every lattice point componentwise between 0 and h, except 0.
  const size_t rank = h.exps.size();
  std::vector<long long> cur(rank, 0);
  // iterative odometer over the box
  while (true) {
    bool is_zero = std::all_of(cur.begin(), cur.end(), [](long long v) { return v == 0; });
    if (!is_zero) {
      RightDivisorSplit s;
      s.suffix.kind = FactorKind::FreeAbelian;
      s.suffix.exps = cur;
      s.prefix.kind = FactorKind::FreeAbelian;
      s.prefix.exps.resize(rank);
      for (size_t i = 0; i < rank; ++i) s.prefix.exps[i] = h.exps[i] - cur[i];
      out.push_back(std::move(s));
    }
    size_t i = 0;
    for (; i < rank; ++i) {
      long long hi = h.exps[i];
      long long step = hi >= 0 ? 1 : -1;
      if (cur[i] != hi) {
        cur[i] += step;
        break;
      }
      cur[i] = 0;
    }
    if (i == rank) break;
  }
  return out;
}

std::optional<long long> factor_cyclic_membership(const FactorElement& g,
                                                  const FactorElement& z) {
  check_input(g.kind == z.kind, "factor_cyclic_membership: elements from different factor kinds");
  if (z.is_identity()) {
    if (g.is_identity()) return 0;
    return std::nullopt;
  }
  if (g.is_identity()) return 0;
  if (g.kind == FactorKind::FreeAbelian) {
    check_input(g.exps.size() == z.exps.size(), "factor_cyclic_membership: rank mismatch");
    // g == t*z for a single integer t: fixed by the first nonzero coordinate of z.
    size_t i0 = 0;
    while (z.exps[i0] == 0) ++i0;
    if (g.exps[i0] % z.exps[i0] != 0) return std::nullopt;
    long long t = g.exps[i0] / z.exps[i0];
    for (size_t i = 0; i < z.exps.size(); ++i)
      if (g.exps[i] != t * z.exps[i]) return std::nullopt;
    return t;
  }
  // Free factor: powers of z grow in length; stop once they pass |g|.
  for (int sign = 1; sign >= -1; sign -= 2) {
    FactorElement base = sign == 1 ? z : z.inverse();
    FactorElement p = FactorElement::identity(FactorKind::Free, 0);
    for (long long t = 1; t <= g.letter_length() + 1; ++t) {
      p = factor_mul(p, base);
      if (p == g) return sign * t;
      if (p.letter_length() > g.letter_length()) break;
      check_input(t < 1000000, "factor_cyclic_membership: search cap exceeded");
    }
  }
  return std::nullopt;
}

namespace {

// Reduced free element as u * v^k * u^{-1} with v primitive cyclically reduced.
struct PrimitiveRoot {
  FactorElement root;   // u v u^{-1}
  long long power = 0;  // k >= 1 for nontrivial input
};

PrimitiveRoot free_primitive_root(const FactorElement& z) {
  const auto& L = z.letters;
  size_t lo = 0, hi = L.size();
  while (hi - lo >= 2 && L[lo] == -L[hi - 1]) {
    ++lo;
    --hi;
  }
  const size_t n = hi - lo;
  size_t per = n;
  for (size_t d = 1; d <= n / 2; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (size_t i = d; i < n && ok; ++i) ok = L[lo + i] == L[lo + (i - d)];
    if (ok) {
      per = d;
      break;
    }
  }
  std::vector<int> rl;
  rl.reserve(2 * lo + per);
  for (size_t i = 0; i < lo; ++i) rl.push_back(L[i]);
  for (size_t i = 0; i < per; ++i) rl.push_back(L[lo + i]);
  for (size_t i = lo; i-- > 0;) rl.push_back(-L[i]);
  PrimitiveRoot pr;
  pr.root = FactorElement::from_letters(std::move(rl));
  pr.power = (long long)(n / per);
  return pr;
}

}  // namespace

bool factor_cyclic_membership(const FactorElement& y, long long m,
                              const FactorElement& z) {
  check_input(y.kind == z.kind,
              "factor_cyclic_membership: elements from different factor kinds");
  if (y.kind == FactorKind::FreeAbelian)
    check_input(y.exps.size() == z.exps.size(), "factor_cyclic_membership: rank mismatch");
  if (m == 0 || y.is_identity()) return true;
  if (z.is_identity()) return false;  // factors are torsion-free, so y^m != 1
  if (y.kind == FactorKind::FreeAbelian) {
    // m*y == t*z for a single integer t, pinned by the first nonzero z coordinate.
    size_t i0 = 0;
    while (z.exps[i0] == 0) ++i0;
    const long long num = m * y.exps[i0];
    if (num % z.exps[i0] != 0) return false;
    const long long t = num / z.exps[i0];
    for (size_t i = 0; i < z.exps.size(); ++i)
      if (m * y.exps[i] != t * z.exps[i]) return false;
    return true;
  }
  // Free factor: y^m a power of z forces y and z to be powers of one primitive
  // root c. Writing y = c^p, z = c^q, membership is exactly q | m*p.
  const PrimitiveRoot ry = free_primitive_root(y);
  const PrimitiveRoot rz = free_primitive_root(z);
  long long p;
  if (ry.root == rz.root)
    p = ry.power;
  else if (ry.root == rz.root.inverse())
    p = -ry.power;
  else
    return false;
  return (m * p) % rz.power == 0;
}

}  // namespace fpsc
