#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "gch/genv.hpp"
#include "gch/graded.hpp"

using namespace gch;
using gch::genv::HSpace;
using gch::polyvec::GerstAlgebra;

namespace {

// Independent oracle: all permutations, keeping those that preserve the
// order inside each block, with the sign counted pair by pair.
TensorElem bracket_oracle(const HSpace& H, const Word& a, const Word& b) {
  const int p = static_cast<int>(a.size()), n = p + static_cast<int>(b.size());
  const Word ab = concat(a, b);
  std::vector<int> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  TensorElem out;
  do {
    bool shuffle = true;
    for (int i = 0; i < n && shuffle; ++i)
      for (int j = i + 1; j < n && shuffle; ++j)
        if ((pi[i] < p) == (pi[j] < p) && pi[i] > pi[j]) shuffle = false;
    if (!shuffle) continue;
    int sign = 1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (pi[i] > pi[j] && odd(H.letter_degrees()[ab[pi[i]]]) && odd(H.letter_degrees()[ab[pi[j]]])) sign = -sign;
    for (int k = 0; k + 1 < n; ++k) {
      if (!(pi[k] < p && pi[k + 1] >= p)) continue;
      for (const auto& [l, c] : H.algebra().bracket(ab[pi[k]], ab[pi[k + 1]])) {
        Word u;
        for (int i = 0; i < k; ++i) u.push_back(ab[pi[i]]);
        u.push_back(l);
        for (int i = k + 2; i < n; ++i) u.push_back(ab[pi[i]]);
        out.add(u, c * Rational(sign));
      }
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

Word random_word(Rng& rng, int nletters, int len) {
  Word w(len);
  for (int& x : w) x = static_cast<int>(rng.below(nletters));
  return w;
}

// Homogeneous element: up to three words of the same length and degree.
TensorElem random_elem(Rng& rng, const HSpace& H, int len) {
  const Word w = random_word(rng, H.algebra().dim(), len);
  TensorElem x(w, rng.nonzero_rational());
  for (int t = 0; t < 10 && x.size() < 3; ++t) {
    const Word v = random_word(rng, H.algebra().dim(), len);
    if (H.degree(v) == H.degree(w) && x.coeff(v).is_zero()) x.add(v, rng.nonzero_rational());
  }
  return x;
}

long elem_degree(const HSpace& H, const TensorElem& x) { return H.degree(x.begin()->first); }

struct Instance {
  std::string label;
  std::unique_ptr<HSpace> H;
};

std::vector<Instance> instances(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Instance> out;
  out.push_back({"polyvec d=2 k<=2", std::make_unique<HSpace>(GerstAlgebra::from_polyvec(2, 2))});
  out.push_back({"polyvec d=3 k<=2", std::make_unique<HSpace>(GerstAlgebra::from_polyvec(3, 2))});
  out.push_back({"sandbox 3 letters", std::make_unique<HSpace>(GerstAlgebra::sandbox(rng))});
  out.push_back({"sandbox 7 letters", std::make_unique<HSpace>(GerstAlgebra::sandbox(rng, 2, 3))});
  return out;
}

}  // namespace

TEST(HBracket, SingleLetters) {
  HSpace H(GerstAlgebra::from_polyvec(3, 2));
  const auto& G = H.algebra();
  for (int i = 0; i < G.dim(); ++i)
    for (int j = 0; j < G.dim(); ++j) {
      TensorElem want;
      for (const auto& [l, c] : G.bracket(i, j)) want.add(Word{l}, c);
      EXPECT_EQ(H.bracket_words({i}, {j}), want);
    }
}

TEST(HBracket, MatchesBruteForce) {
  Rng rng(101);
  for (const auto& inst : instances(7)) {
    for (int t = 0; t < 40; ++t) {
      const int p = rng.range(1, 3), q = rng.range(1, 3);
      const Word a = random_word(rng, inst.H->algebra().dim(), p), b = random_word(rng, inst.H->algebra().dim(), q);
      EXPECT_EQ(inst.H->bracket_words(a, b), bracket_oracle(*inst.H, a, b)) << inst.label;
    }
  }
}

TEST(HBracket, TwoOneExample) {
  // x1 d1, x1 d2, x2 d1 in the d = 2 truncation; [x1d2, x2d1] = x1d1 - x2d2
  HSpace H(GerstAlgebra::from_polyvec(2, 1));
  const auto& G = H.algebra();
  auto idx = [&](const std::string& s) {
    for (int i = 0; i < G.dim(); ++i)
      if (G.name(i) == s) return i;
    throw std::runtime_error(s);
  };
  const int a = idx("x1 d1"), b = idx("x1 d2"), c = idx("x2 d1"), e = idx("x2 d2");
  // shuffles of (a b) with (c): a b c, a c b, c a b; admissible k picks
  // (b,c) in the first and (a,c) in the second, with [a,c] = -c; all
  // shifted degrees are 0
  TensorElem want;
  want.add(Word{a, a}, 1);
  want.add(Word{a, e}, -1);
  want.add(Word{c, b}, -1);
  EXPECT_EQ(H.bracket_words({a, b}, {c}), want);
  EXPECT_EQ(H.bracket_words({a, b}, {c}), bracket_oracle(H, {a, b}, {c}));
}

TEST(HBracket, LemmaOnShuffleImages) {
  Rng rng(55);
  for (const auto& inst : instances(9)) {
    const HSpace& H = *inst.H;
    const auto& deg = H.letter_degrees();
    for (int t = 0; t < 25; ++t) {
      const int p = rng.range(1, 2), q = rng.range(1, 2), r = rng.range(1, 2);
      const int n = H.algebra().dim();
      const Word a = random_word(rng, n, p), b = random_word(rng, n, q), c = random_word(rng, n, r);
      const TensorElem lhs = H.bracket_raw(shuffleco::bat(a, b, deg), TensorElem(c));
      TensorElem rhs = shuffleco::bat(TensorElem(a), H.bracket_words(b, c), deg);
      rhs += shuffleco::bat(TensorElem(b), H.bracket_words(a, c), deg) *
             Rational(sign_pow(H.degree(a) * H.degree(b)));
      EXPECT_EQ(lhs, rhs) << inst.label;
      // hence the bracket of a shuffle image vanishes in the quotient
      EXPECT_TRUE(H.reduce(lhs).is_zero()) << inst.label;
    }
  }
}

TEST(HBracket, WellDefinedOnClasses) {
  Rng rng(12);
  for (const auto& inst : instances(13)) {
    const HSpace& H = *inst.H;
    for (int t = 0; t < 20; ++t) {
      const auto a = random_elem(rng, H, rng.range(1, 3)), b = random_elem(rng, H, rng.range(1, 3));
      EXPECT_EQ(H.bracket(a, b), H.bracket(H.reduce(a), H.reduce(b))) << inst.label;
    }
  }
}

TEST(HMu, Examples) {
  HSpace H(GerstAlgebra::from_polyvec(2, 2));
  const auto& G = H.algebra();
  for (int i = 0; i < G.dim(); ++i) EXPECT_TRUE(H.mu(TensorElem(Word{i})).is_zero());
  for (int i = 0; i < G.dim(); ++i)
    for (int j = 0; j < G.dim(); ++j) {
      TensorElem want;
      for (const auto& [l, c] : G.mu2(i, j)) want.add(Word{l}, c);
      EXPECT_EQ(H.mu(TensorElem(Word{i, j})), want);
    }
}

TEST(HMu, SquaresToZero) {
  Rng rng(31);
  for (const auto& inst : instances(4)) {
    for (int t = 0; t < 20; ++t) {
      const auto a = random_elem(rng, *inst.H, rng.range(1, 4));
      EXPECT_TRUE(inst.H->mu(inst.H->mu(a)).is_zero()) << inst.label;
    }
  }
}

TEST(HLie, Antisymmetry) {
  Rng rng(41);
  for (const auto& inst : instances(5)) {
    const HSpace& H = *inst.H;
    for (int t = 0; t < 50; ++t) {
      const auto a = random_elem(rng, H, rng.range(1, 3)), b = random_elem(rng, H, rng.range(1, 3));
      const long x = elem_degree(H, a), y = elem_degree(H, b);
      EXPECT_EQ(H.bracket(a, b), H.bracket(b, a) * Rational(-sign_pow(x * y))) << inst.label;
    }
  }
}

TEST(HLie, Jacobi) {
  Rng rng(43);
  for (const auto& inst : instances(6)) {
    const HSpace& H = *inst.H;
    for (int t = 0; t < 50; ++t) {
      const auto a = random_elem(rng, H, rng.range(1, 2)), b = random_elem(rng, H, rng.range(1, 2)),
                 c = random_elem(rng, H, rng.range(1, 2));
      const long x = elem_degree(H, a), y = elem_degree(H, b), z = elem_degree(H, c);
      TensorElem jac = H.bracket(H.bracket(a, b), c) * Rational(sign_pow(x * z));
      jac += H.bracket(H.bracket(b, c), a) * Rational(sign_pow(y * x));
      jac += H.bracket(H.bracket(c, a), b) * Rational(sign_pow(z * y));
      EXPECT_TRUE(jac.is_zero()) << inst.label;
    }
  }
}

TEST(HLie, MuIsDerivation) {
  Rng rng(47);
  for (const auto& inst : instances(8)) {
    const HSpace& H = *inst.H;
    for (int t = 0; t < 50; ++t) {
      const auto a = random_elem(rng, H, rng.range(1, 3)), b = random_elem(rng, H, rng.range(1, 3));
      const long x = elem_degree(H, a);
      const TensorElem lhs = H.mu(H.bracket(a, b));
      const TensorElem rhs = H.bracket(H.mu(a), b) + H.bracket(a, H.mu(b)) * Rational(sign_pow(x));
      EXPECT_EQ(lhs, rhs) << inst.label;
    }
  }
}

TEST(HLie, CorruptedSandboxBreaksJacobi) {
  Rng rng(2);
  HSpace H(GerstAlgebra::corrupted(rng));
  bool broken = false;
  const int n = H.algebra().dim();
  for (int i = 0; i < n && !broken; ++i)
    for (int j = 0; j < n && !broken; ++j)
      for (int k = 0; k < n && !broken; ++k) {
        const TensorElem a(Word{i}), b(Word{j}), c(Word{k});
        const long x = H.degree({i}), y = H.degree({j}), z = H.degree({k});
        TensorElem jac = H.bracket(H.bracket(a, b), c) * Rational(sign_pow(x * z));
        jac += H.bracket(H.bracket(b, c), a) * Rational(sign_pow(y * x));
        jac += H.bracket(H.bracket(c, a), b) * Rational(sign_pow(z * y));
        broken = !jac.is_zero();
      }
  EXPECT_TRUE(broken);
}
