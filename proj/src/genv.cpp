#include "gch/genv.hpp"

#include <algorithm>

#include "gch/graded.hpp"

namespace gch::genv {

HSpace::HSpace(polyvec::GerstAlgebra G)
    : G_(std::move(G)), Q_(std::make_unique<shuffleco::ShuffleQuotient>(G_.shifted_degrees())) {
  mu_ = std::make_unique<shuffleco::LiftedCoderivation>(shuffleco::mu(G_.commutative_part(), *Q_));
}

TensorElem HSpace::bracket_words(const Word& a, const Word& b) const {
  const int p = static_cast<int>(a.size()), q = static_cast<int>(b.size()), n = p + q;
  const Word ab = concat(a, b);
  std::vector<int> degs(n);
  for (int i = 0; i < n; ++i) degs[i] = letter_degrees()[ab[i]];
  TensorElem out;
  // from_a[i]: position i of the shuffled word holds a letter of a
  std::vector<char> from_a(n, 0);
  std::fill(from_a.begin(), from_a.begin() + p, 1);
  std::vector<int> perm(n);
  Word w(n), u;
  do {
    int ia = 0, ib = p;
    for (int i = 0; i < n; ++i) {
      perm[i] = from_a[i] ? ia++ : ib++;
      w[i] = ab[perm[i]];
    }
    const Rational eps(koszul_sign(degs, perm));
    for (int k = 0; k + 1 < n; ++k) {
      if (!from_a[k] || from_a[k + 1]) continue;
      for (const auto& [l, c] : G_.bracket(w[k], w[k + 1])) {
        u.assign(w.begin(), w.begin() + k);
        u.push_back(l);
        u.insert(u.end(), w.begin() + k + 2, w.end());
        out.add(u, eps * c);
      }
    }
  } while (std::prev_permutation(from_a.begin(), from_a.end()));
  return out;
}

TensorElem HSpace::bracket_raw(const TensorElem& a, const TensorElem& b) const {
  TensorElem out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) out.add(bracket_words(u, v), cu * cv);
  return out;
}

TensorElem HSpace::bracket(const TensorElem& a, const TensorElem& b) const { return Q_->reduce(bracket_raw(a, b)); }

TensorElem HSpace::mu(const TensorElem& a) const { return (*mu_)(a); }

}  // namespace gch::genv
