#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gch {

// (-1)^e for any integer e, using parity only.
inline int sign_pow(long e) { return (e & 1) ? -1 : 1; }
inline bool odd(long e) { return (e & 1) != 0; }

struct Letter {
  int id = 0;
  int degree = 0;  // degree after the owning space's shift
};

struct GradedList {
  std::vector<Letter> letters;
  long total_degree() const;
};

// Sign of moving the items listed in `degrees` into the order given by perm:
// position i of the result holds item perm[i]. Each adjacent transposition of
// items of degrees (u,v) contributes (-1)^{uv}.
int koszul_sign(const std::vector<int>& degrees, const std::vector<int>& perm);

// Sign of the isomorphism wedge^n g -> S^n(g[1]): (-1)^{sum_j (n-j) x_{i_j}}
// for the listed shifted degrees (j counted from 1).
int decalage_sign(const std::vector<int>& degrees);

inline int shift_degree(int space_shift, int unshifted) { return unshifted - space_shift; }

// Sign of sorting `degrees` stably into the order of `keys` (ascending).
// Used to canonicalize graded-commutative products.
template <class Key>
int koszul_sort_sign(const std::vector<Key>& keys, const std::vector<int>& degrees);

bool is_permutation(const std::vector<int>& perm);

}  // namespace gch

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gch {

template <class Key>
int koszul_sort_sign(const std::vector<Key>& keys, const std::vector<int>& degrees) {
  // insertion-sort count of odd-odd inversions
  int s = 1;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i + 1; j < keys.size(); ++j)
      if (keys[j] < keys[i] && odd(degrees[i]) && odd(degrees[j])) s = -s;
  return s;
}

}  // namespace gch
