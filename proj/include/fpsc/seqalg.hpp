#pragma once

#include <vector>

namespace fpsc {

// Suffix array over an integer sequence (arbitrary values), O(n log n).
std::vector<int> suffix_array(const std::vector<int>& s);

// Kasai LCP: lcp[i] = longest common prefix of suffixes sa[i], sa[i+1].
std::vector<int> lcp_array(const std::vector<int>& s, const std::vector<int>& sa);

// Booth: start index of the lexicographically least rotation.
int least_rotation_index(const std::vector<int>& s);

// Smallest d dividing s.size() with s equal to its rotation by d.
int cyclic_period(const std::vector<int>& s);

// Equality of cyclic sequences (some rotation of a equals b).
bool cyclically_equal(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace fpsc
