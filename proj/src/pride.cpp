#include "fpsc/pride.hpp"

#include <algorithm>
#include <numeric>

#include "fpsc/errors.hpp"
#include "fpsc/word.hpp"

namespace fpsc {

void PrideParams::validate() const {
  check_input(k >= 1, "pride params: k must be >= 1");
  auto chk = [&](const std::vector<long long>& v, const char* nm) {
    check_input((int)v.size() == k,
                std::string("pride params: ") + nm + " must have exactly k entries");
    for (long long e : v)
      check_input(e >= 1, std::string("pride params: ") + nm + " entries must be positive");
  };
  chk(alpha, "alpha");
  chk(beta, "beta");
  chk(gamma, "gamma");
  chk(delta, "delta");
  chk(rho, "rho");
  chk(sigma, "sigma");
  chk(tau, "tau");
  chk(theta, "theta");
}

namespace {

struct GenRef {
  int factor = -1;
  int index = -1;
};

GenRef resolve(const std::vector<FactorDescriptor>& factors, const std::string& name) {
  for (int f = 0; f < (int)factors.size(); ++f)
    for (int g = 0; g < (int)factors[f].generators.size(); ++g)
      if (factors[f].generators[g] == name) return {f, g};
  throw input_error("unknown generator '" + name + "'");
}

Syllable gen_power(const std::vector<FactorDescriptor>& factors, GenRef r, long long e) {
  const auto& fd = factors[r.factor];
  FactorElement el;
  if (fd.kind == FactorKind::FreeAbelian) {
    std::vector<long long> v(fd.rank, 0);
    v[r.index] = e;
    el = FactorElement::from_exps(std::move(v));
  } else {
    const long long a = e < 0 ? -e : e;
    check_input(a <= 5000000, "generator exponent too large to materialize");
    std::vector<int> ls((size_t)a, e > 0 ? r.index + 1 : -(r.index + 1));
    el = FactorElement::from_letters(std::move(ls));
  }
  return {r.factor, std::move(el)};
}

}  // namespace

std::vector<FPWord> gen_pride_relators(const std::vector<FactorDescriptor>& factors,
                                       const std::string& x, const std::string& y,
                                       const PrideParams& params) {
  check_input(params.k >= 1, "pride relators need k >= 1");
  params.validate();
  for (const auto& f : factors) f.validate();
  const GenRef rx = resolve(factors, x);
  const GenRef ry = resolve(factors, y);
  const int k = params.k;

  std::vector<std::vector<Syllable>> raw(6);
  for (int i = 0; i < k; ++i) {
    raw[0].push_back(gen_power(factors, rx, 1));
    raw[0].push_back(gen_power(factors, ry, params.alpha[i]));

    raw[1].push_back(gen_power(factors, ry, 1));
    raw[1].push_back(gen_power(factors, rx, params.beta[i]));

    raw[2].push_back(gen_power(factors, rx, params.gamma[i]));
    raw[2].push_back(gen_power(factors, ry, -params.delta[i]));

    raw[3].push_back(gen_power(factors, rx, 1));
    raw[3].push_back(gen_power(factors, ry, params.rho[i]));
    raw[3].push_back(gen_power(factors, rx, 1));
    raw[3].push_back(gen_power(factors, ry, -params.rho[i]));

    raw[4].push_back(gen_power(factors, ry, 1));
    raw[4].push_back(gen_power(factors, rx, params.sigma[i]));
    raw[4].push_back(gen_power(factors, ry, 1));
    raw[4].push_back(gen_power(factors, rx, -params.sigma[i]));

    for (long long t = 0; t < params.tau[i]; ++t) {
      raw[5].push_back(gen_power(factors, rx, 1));
      raw[5].push_back(gen_power(factors, ry, 1));
    }
    for (long long t = 0; t < params.theta[i]; ++t) {
      raw[5].push_back(gen_power(factors, rx, -1));
      raw[5].push_back(gen_power(factors, ry, -1));
    }
  }

  std::vector<FPWord> out;
  out.reserve(6);
  for (int r = 0; r < 6; ++r) {
    FPWord w = cyclic_reduce(normalize(raw[r], factors));
    check_input(!w.empty(), "relator R_" + std::to_string(r + 1) +
                                " collapses to the identity for this generator choice");
    out.push_back(std::move(w));
  }
  return out;
}

PrideParams gen_remark_params(int n) {
  check_input(n >= 2, "n must be >= 2");
  PrideParams p;
  p.k = 3 * n;
  long long v = 50LL * n;
  auto fill = [&](std::vector<long long>& dst) {
    dst.reserve(p.k);
    for (int i = 0; i < p.k; ++i) dst.push_back(v++);
  };
  fill(p.alpha);
  fill(p.beta);
  fill(p.gamma);
  fill(p.delta);
  fill(p.rho);
  fill(p.sigma);
  fill(p.tau);
  fill(p.theta);
  return p;
}

namespace {

// First `count` integers m >= 2 with gen^m outside the cyclic subgroup of
// every other generator of the same factor.
std::vector<long long> escape_exponents(const FactorDescriptor& fd, int gen, int count) {
  FactorElement y;
  if (fd.kind == FactorKind::FreeAbelian) {
    std::vector<long long> v(fd.rank, 0);
    v[gen] = 1;
    y = FactorElement::from_exps(std::move(v));
  } else {
    y = FactorElement::from_letters({gen + 1});
  }
  std::vector<long long> vals;
  vals.reserve(count);
  for (long long m = 2; (int)vals.size() < count; ++m) {
    check_input(m <= 1000000,
                "no valid exponent below 10^6: " + fd.generators[gen] +
                    "^m stays inside a sibling generator's cyclic subgroup");
    bool ok = true;
    for (int z = 0; z < fd.rank && ok; ++z) {
      if (z == gen) continue;
      FactorElement ze;
      if (fd.kind == FactorKind::FreeAbelian) {
        std::vector<long long> v(fd.rank, 0);
        v[z] = 1;
        ze = FactorElement::from_exps(std::move(v));
      } else {
        ze = FactorElement::from_letters({z + 1});
      }
      if (factor_cyclic_membership(y, m, ze)) ok = false;
    }
    if (ok) vals.push_back(m);
  }
  return vals;
}

}  // namespace

Presentation gen_corollary_presentation(std::vector<FactorDescriptor> factors, int n) {
  check_input(n >= 2, "n must be >= 2");
  check_input(factors.size() >= 2, "need at least two factors");
  for (const auto& f : factors) f.validate();

  Presentation pres;
  pres.factors = std::move(factors);
  const int k = 3 * n;
  const int nf = (int)pres.factors.size();

  // Cache the 3k escape exponents per generator; split as first k, next k,
  // last k when used on the y side (alpha, delta, rho) or x side (beta,
  // gamma, sigma).
  std::vector<std::vector<std::vector<long long>>> esc(nf);
  for (int f = 0; f < nf; ++f) {
    esc[f].resize(pres.factors[f].rank);
    for (int g = 0; g < pres.factors[f].rank; ++g)
      esc[f][g] = escape_exponents(pres.factors[f], g, 3 * k);
  }

  auto slice = [&](const std::vector<long long>& v, int part) {
    return std::vector<long long>(v.begin() + (size_t)part * k,
                                  v.begin() + (size_t)(part + 1) * k);
  };

  for (int p = 0; p < nf; ++p) {
    for (int q = p + 1; q < nf; ++q) {
      for (int gx = 0; gx < pres.factors[p].rank; ++gx) {
        for (int gy = 0; gy < pres.factors[q].rank; ++gy) {
          PrideParams prm;
          prm.k = k;
          prm.alpha = slice(esc[q][gy], 0);
          prm.delta = slice(esc[q][gy], 1);
          prm.rho = slice(esc[q][gy], 2);
          prm.beta = slice(esc[p][gx], 0);
          prm.gamma = slice(esc[p][gx], 1);
          prm.sigma = slice(esc[p][gx], 2);
          for (int i = 1; i <= k; ++i) {
            prm.tau.push_back(10LL * n + i);
            prm.theta.push_back(10LL * n + k + i);
          }
          auto rs = gen_pride_relators(pres.factors, pres.factors[p].generators[gx],
                                       pres.factors[q].generators[gy], prm);
          for (auto& r : rs) pres.relators.push_back(std::move(r));
        }
      }
    }
  }
  pres.validate();
  return pres;
}

ExponentMatrix exponent_matrix(const Presentation& pres) {
  ExponentMatrix M;
  std::vector<int> base(pres.factors.size() + 1, 0);
  for (size_t f = 0; f < pres.factors.size(); ++f) {
    base[f + 1] = base[f] + pres.factors[f].rank;
    for (const auto& g : pres.factors[f].generators) M.cols.push_back(g);
  }
  for (const auto& r : pres.relators) {
    std::vector<long long> row(M.cols.size(), 0);
    for (const auto& s : r.syllables) {
      if (s.elem.kind == FactorKind::FreeAbelian) {
        for (size_t i = 0; i < s.elem.exps.size(); ++i)
          row[base[s.factor] + i] += s.elem.exps[i];
      } else {
        for (int l : s.elem.letters) {
          const int g = (l > 0 ? l : -l) - 1;
          row[base[s.factor] + g] += l > 0 ? 1 : -1;
        }
      }
    }
    M.rows.push_back(std::move(row));
  }
  return M;
}

namespace {

long long abs64(long long v) { return v < 0 ? -v : v; }

long long checked_mul(long long a, long long b) {
  long long r;
  check_resource(!__builtin_mul_overflow(a, b, &r), "smith_normal_form: entry overflow");
  return r;
}

long long checked_sub(long long a, long long b) {
  long long r;
  check_resource(!__builtin_sub_overflow(a, b, &r), "smith_normal_form: entry overflow");
  return r;
}

}  // namespace

std::vector<long long> smith_normal_form(std::vector<std::vector<long long>> m) {
  const int R = (int)m.size();
  const int C = R ? (int)m[0].size() : 0;
  for (const auto& row : m)
    check_input((int)row.size() == C, "smith_normal_form: ragged matrix");

  int t = 0;
  while (t < R && t < C) {
    int pr = -1, pc = -1;
    for (int i = t; i < R; ++i)
      for (int j = t; j < C; ++j)
        if (m[i][j] != 0 && (pr < 0 || abs64(m[i][j]) < abs64(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    std::swap(m[t], m[pr]);
    for (int i = 0; i < R; ++i) std::swap(m[i][t], m[i][pc]);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = t + 1; i < R; ++i) {
        if (m[i][t] == 0) continue;
        const long long qv = m[i][t] / m[t][t];
        for (int j = t; j < C; ++j)
          m[i][j] = checked_sub(m[i][j], checked_mul(qv, m[t][j]));
        if (m[i][t] != 0) {
          // remainder is smaller than the pivot, promote it
          std::swap(m[t], m[i]);
          dirty = true;
        }
      }
      for (int j = t + 1; j < C; ++j) {
        if (m[t][j] == 0) continue;
        const long long qv = m[t][j] / m[t][t];
        for (int i = t; i < R; ++i)
          m[i][j] = checked_sub(m[i][j], checked_mul(qv, m[i][t]));
        if (m[t][j] != 0) {
          for (int i = 0; i < R; ++i) std::swap(m[i][t], m[i][j]);
          dirty = true;
        }
      }
    }
    ++t;
  }

  std::vector<long long> d;
  const int len = std::min(R, C);
  d.reserve(len);
  for (int i = 0; i < len; ++i) d.push_back(i < t ? abs64(m[i][i]) : 0);
  // 2x2 gcd/lcm exchanges keep the normal form while installing the
  // divisibility chain; one forward sweep suffices since entries only shrink.
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j)
      if (d[j] % d[i] != 0) {
        const long long g = std::gcd(d[i], d[j]);
        const long long l = checked_mul(d[i] / g, d[j]);
        d[i] = g;
        d[j] = l;
      }
  return d;
}

bool abelianization_torsion_check(const Presentation& pres) {
  pres.validate();
  ExponentMatrix M = exponent_matrix(pres);
  if (M.rows.empty()) return M.cols.empty();
  const auto d = smith_normal_form(M.rows);
  int rank = 0;
  for (long long v : d)
    if (v != 0) ++rank;
  return rank == (int)M.cols.size();
}

}  // namespace fpsc
