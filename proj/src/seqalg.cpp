#include "fpsc/seqalg.hpp"

#include <algorithm>
#include <numeric>

namespace fpsc {

namespace {

// Sort the cyclic shifts of s (values must already be compacted to 0..K-1).
std::vector<int> sort_cyclic_shifts(const std::vector<int>& s, int alphabet) {
  const int n = (int)s.size();
  std::vector<int> p(n), c(n), pn(n), cn(n), cnt(std::max(alphabet, n), 0);
  for (int i = 0; i < n; ++i) cnt[s[i]]++;
  for (int i = 1; i < alphabet; ++i) cnt[i] += cnt[i - 1];
  for (int i = 0; i < n; ++i) p[--cnt[s[i]]] = i;
  c[p[0]] = 0;
  int classes = 1;
  for (int i = 1; i < n; ++i) {
    if (s[p[i]] != s[p[i - 1]]) ++classes;
    c[p[i]] = classes - 1;
  }
  for (int h = 0; (1 << h) < n; ++h) {
    for (int i = 0; i < n; ++i) {
      pn[i] = p[i] - (1 << h);
      if (pn[i] < 0) pn[i] += n;
    }
    std::fill(cnt.begin(), cnt.begin() + classes, 0);
    for (int i = 0; i < n; ++i) cnt[c[pn[i]]]++;
    for (int i = 1; i < classes; ++i) cnt[i] += cnt[i - 1];
    for (int i = n - 1; i >= 0; --i) p[--cnt[c[pn[i]]]] = pn[i];
    cn[p[0]] = 0;
    classes = 1;
    for (int i = 1; i < n; ++i) {
      std::pair<int, int> cur = {c[p[i]], c[(p[i] + (1 << h)) % n]};
      std::pair<int, int> prev = {c[p[i - 1]], c[(p[i - 1] + (1 << h)) % n]};
      if (cur != prev) ++classes;
      cn[p[i]] = classes - 1;
    }
    c.swap(cn);
    if (classes == n) break;
  }
  return p;
}

}  // namespace

std::vector<int> suffix_array(const std::vector<int>& s) {
  if (s.empty()) return {};
  // Compact values to 1..K and append a strictly smaller terminator 0.
  std::vector<int> sorted(s);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> t(s.size() + 1);
  for (size_t i = 0; i < s.size(); ++i) {
    t[i] = 1 + (int)(std::lower_bound(sorted.begin(), sorted.end(), s[i]) - sorted.begin());
  }
  t.back() = 0;
  std::vector<int> p = sort_cyclic_shifts(t, (int)sorted.size() + 2);
  // Drop the terminator's shift (always first).
  return std::vector<int>(p.begin() + 1, p.end());
}

std::vector<int> lcp_array(const std::vector<int>& s, const std::vector<int>& sa) {
  const int n = (int)sa.size();
  std::vector<int> rnk(n), lcp(n > 0 ? n - 1 : 0, 0);
  for (int i = 0; i < n; ++i) rnk[sa[i]] = i;
  int h = 0;
  for (int i = 0; i < n; ++i) {
    if (rnk[i] + 1 < n) {
      int j = sa[rnk[i] + 1];
      while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
      lcp[rnk[i]] = h;
      if (h > 0) --h;
    } else {
      h = 0;
    }
  }
  return lcp;
}

int least_rotation_index(const std::vector<int>& s) {
  const int n = (int)s.size();
  if (n == 0) return 0;
  std::vector<int> d(s);
  d.insert(d.end(), s.begin(), s.end());
  std::vector<int> f(d.size(), -1);
  int k = 0;
  for (int j = 1; j < (int)d.size(); ++j) {
    int i = f[j - k - 1];
    while (i != -1 && d[j] != d[k + i + 1]) {
      if (d[j] < d[k + i + 1]) k = j - i - 1;
      i = f[i];
    }
    if (d[j] != d[k + i + 1]) {
      if (d[j] < d[k + i + 1]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k;
}

int cyclic_period(const std::vector<int>& s) {
  const int n = (int)s.size();
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = (s[i] == s[(i + d) % n]);
    if (ok) return d;
  }
  return n;
}

bool cyclically_equal(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  int ia = least_rotation_index(a);
  int ib = least_rotation_index(b);
  const int n = (int)a.size();
  for (int t = 0; t < n; ++t) {
    if (a[(ia + t) % n] != b[(ib + t) % n]) return false;
  }
  return true;
}

}  // namespace fpsc
