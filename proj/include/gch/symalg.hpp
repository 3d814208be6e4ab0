#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "gch/graded.hpp"

namespace gch {

// Sorts graded factors into ascending key order, returning the Koszul sign
// of the sorting permutation, or 0 when two equal odd factors meet (a
// repeated odd factor annihilates a graded-commutative monomial).
template <class K, class DegFn>
int sym_canonicalize(std::vector<K>& keys, DegFn deg) {
  const std::size_t n = keys.size();
  int s = 1;
  // insertion sort keeps the sign bookkeeping local
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = i;
    const bool oi = odd(deg(keys[i]));
    while (j > 0 && keys[i] < keys[j - 1]) --j;
    if (j == i) continue;
    if (oi) {
      int odd_passed = 0;
      for (std::size_t k = j; k < i; ++k)
        if (odd(deg(keys[k]))) ++odd_passed;
      if (odd_passed & 1) s = -s;
    }
    std::rotate(keys.begin() + j, keys.begin() + i, keys.begin() + i + 1);
  }
  for (std::size_t i = 1; i < n; ++i)
    if (!(keys[i - 1] < keys[i]) && !(keys[i] < keys[i - 1]) && odd(deg(keys[i]))) return 0;
  return s;
}

// Koszul sign of taking the items in `order` (indices into the original
// list with degrees degs) as the new sequence.
inline int subset_sign(const std::vector<int>& degs, const std::vector<int>& order) {
  return koszul_sign(degs, order);
}

// Enumerates ordered bipartitions I u J = {0..n-1} with both parts nonempty,
// calling f(I, J, sign) with sign = eps(x / x_I x_J).
template <class F>
void for_each_bipartition(const std::vector<int>& degs, F&& f) {
  const int n = static_cast<int>(degs.size());
  if (n < 2) return;
  std::vector<int> I, J, perm;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    I.clear();
    J.clear();
    for (int i = 0; i < n; ++i) ((mask >> i) & 1 ? I : J).push_back(i);
    perm = I;
    perm.insert(perm.end(), J.begin(), J.end());
    f(I, J, koszul_sign(degs, perm));
  }
}

}  // namespace gch
