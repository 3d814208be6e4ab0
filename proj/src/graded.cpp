#include "gch/graded.hpp"

namespace gch {

long GradedList::total_degree() const {
  long s = 0;
  for (const auto& l : letters) s += l.degree;
  return s;
}

bool is_permutation(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  for (int p : perm) {
    if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p]) return false;
    seen[p] = 1;
  }
  return true;
}

int koszul_sign(const std::vector<int>& degrees, const std::vector<int>& perm) {
  if (perm.size() != degrees.size() || !is_permutation(perm))
    throw std::invalid_argument("koszul_sign: perm is not a bijection");
  // Each pair of items whose relative order is reversed is transposed exactly
  // once in any reduced decomposition.
  int s = 1;
  const std::size_t n = perm.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (perm[i] > perm[j] && odd(degrees[perm[i]]) && odd(degrees[perm[j]])) s = -s;
  return s;
}

int decalage_sign(const std::vector<int>& degrees) {
  const long n = static_cast<long>(degrees.size());
  long e = 0;
  for (long j = 1; j <= n; ++j) e += (n - j) * degrees[j - 1];
  return sign_pow(e);
}

}  // namespace gch
