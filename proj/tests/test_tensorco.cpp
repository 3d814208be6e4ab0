#include <gtest/gtest.h>

#include "gch/graded.hpp"
#include "gch/tensorco.hpp"

using namespace gch;
using namespace gch::tensorco;

namespace {

FiniteAlgebra dual_numbers() {
  // basis 0 = 1, 1 = x, x.x = 0
  BilinearTable t(2, std::vector<Vec>(2));
  t[0][0] = Vec(0);
  t[0][1] = t[1][0] = Vec(1);
  return FiniteAlgebra({0, 0}, t, true);
}

Word random_word(Rng& rng, int nletters, int len) {
  Word w(len);
  for (int& l : w) l = static_cast<int>(rng.below(nletters));
  return w;
}

using Triple = std::tuple<Word, Word, Word>;

// (f (x) g)(u (x) v) = (-1)^{|g||u|} f(u) (x) g(v)
template <class F, class G>
TensorPair tensor_maps(const TensorPair& x, F f, int gdeg, G g, const std::vector<int>& deg) {
  TensorPair out;
  for (const auto& [uv, c] : x) {
    TensorElem fu = f(uv.first), gv = g(uv.second);
    Rational s = c * Rational(sign_pow(long(gdeg) * word_degree(uv.first, deg)));
    for (const auto& [a, ca] : fu)
      for (const auto& [b, cb] : gv) out.add({a, b}, s * ca * cb);
  }
  return out;
}

}  // namespace

TEST(Deconcat, Examples) {
  EXPECT_TRUE(deconcat(Word{0}).is_zero());
  TensorPair two = deconcat(Word{0, 1});
  EXPECT_EQ(two, TensorPair({Word{0}, Word{1}}));
  TensorPair three = deconcat(Word{0, 1, 2});
  TensorPair expect;
  expect.add({Word{0}, Word{1, 2}}, 1);
  expect.add({Word{0, 1}, Word{2}}, 1);
  EXPECT_EQ(three, expect);
}

TEST(Deconcat, Coassociative) {
  Rng rng(1);
  for (int t = 0; t < 60; ++t) {
    Word w = random_word(rng, 3, rng.range(1, 5));
    LinComb<Triple> l, r;
    for (const auto& [uv, c] : deconcat(w)) {
      for (const auto& [ab, c2] : deconcat(uv.first)) l.add({ab.first, ab.second, uv.second}, c * c2);
      for (const auto& [ab, c2] : deconcat(uv.second)) r.add({uv.first, ab.first, ab.second}, c * c2);
    }
    EXPECT_EQ(l, r);
  }
}

TEST(M2, SignsAndUnit) {
  FiniteAlgebra a = dual_numbers();
  // 1 and x have unshifted degree 0, so shifted degree -1 and m2 = -a.b
  EXPECT_EQ(m2(0, 1, a), Vec(1, -1));
  FiniteAlgebra odd({1, 2}, [] {
    BilinearTable t(2, std::vector<Vec>(2));
    t[0][0] = Vec(1);
    return t;
  }());
  EXPECT_EQ(m2(0, 0, odd), Vec(1));  // shifted degree 0: sign +1
}

TEST(Coderivation, Examples) {
  FiniteAlgebra a = dual_numbers();
  Coderivation m = m_lift(a);
  EXPECT_EQ(m(Word{0, 1}), TensorElem(Word{1}, -1));
  // m(a1 a2 a3) = m2(a1,a2) a3 + (-1)^{a1} a1 m2(a2,a3)
  TensorElem expect;
  expect.add(Word{1, 0}, -1);  // m2(1,x) = -x
  expect.add(Word{0, 1}, 1);   // -(m2(x,1)) = -(-x)
  EXPECT_EQ(m(Word{0, 1, 0}), expect);

  TaylorFamily id;
  id.degree = 0;
  id.letter_degrees = {-1, -1};
  id.maps[1] = [](const Word& w) { return Vec(w[0]); };
  Coderivation q = coderivation_lift_tensor(id);
  EXPECT_EQ(q(Word{0, 1, 1, 0}), TensorElem(Word{0, 1, 1, 0}, 4));
}

TEST(Coderivation, LawAndSquareZero) {
  Rng rng(2);
  for (int t = 0; t < 60; ++t) {
    FiniteAlgebra a = random_algebra(rng, false);
    auto deg = a.shifted_degrees();
    Coderivation m = m_lift(a);
    Word w = random_word(rng, a.dim(), rng.range(1, 5));
    auto id = [](const Word& u) { return TensorElem(u); };
    auto mm = [&](const Word& u) { return m(u); };
    TensorPair lhs = tensor_maps(deconcat(w), mm, 0, id, deg) + tensor_maps(deconcat(w), id, 1, mm, deg);
    EXPECT_EQ(lhs, deconcat(m(w)));
    EXPECT_TRUE(m(m(w)).is_zero());
  }
}

TEST(Bimodule, SquareZeroExtensionIsAssociative) {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    FiniteAlgebra a = random_algebra(rng, false);
    Bimodule v = Bimodule::regular(a);
    FiniteAlgebra b = square_zero_extension(a, v, 2);
    EXPECT_EQ(b.dim(), 3 * a.dim());
    EXPECT_EQ(b.check(), "");
  }
}

TEST(Hochschild, ExampleDualNumbers) {
  FiniteAlgebra a = dual_numbers();
  Bimodule v = Bimodule::regular(a);
  HochschildCochain c;
  c.arity = 1;
  c.degree = 0;
  c.values[Word{1}] = Vec(0);  // C(x) = 1, C(1) = 0
  HochschildCochain dc = d_hochschild(c, a, v);
  EXPECT_EQ(dc(Word{1, 1}), Vec(1, 2));  // 2x

  HochschildCochain zero;
  zero.arity = 2;
  EXPECT_TRUE(d_hochschild(zero, a, v).values.empty());
}

TEST(Hochschild, RejectsDegreeMismatch) {
  FiniteAlgebra a = dual_numbers();
  Bimodule v = Bimodule::regular(a);
  HochschildCochain c;
  c.arity = 1;
  c.degree = 1;
  c.values[Word{1}] = Vec(0);
  EXPECT_THROW(d_hochschild(c, a, v), std::invalid_argument);
}

TEST(Hochschild, SquareZero) {
  Rng rng(6);
  for (int t = 0; t < 60; ++t) {
    FiniteAlgebra a = random_algebra(rng, false);
    Bimodule v = Bimodule::regular(a);
    int arity = rng.range(1, 3);
    HochschildCochain c = random_hochschild_cochain(rng, a, v, arity);
    HochschildCochain dd = d_hochschild(d_hochschild(c, a, v), a, v);
    EXPECT_TRUE(dd.values.empty()) << "trial " << t;
  }
}

TEST(Hochschild, SquareZeroOnLengthFourWords) {
  Rng rng(16);
  FiniteAlgebra a = random_algebra(rng, false);
  Bimodule v = Bimodule::regular(a);
  for (int arity = 1; arity <= 2; ++arity) {
    HochschildCochain c = random_hochschild_cochain(rng, a, v, arity);
    EXPECT_TRUE(d_hochschild(d_hochschild(c, a, v), a, v).values.empty());
  }
}
