#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "gch/ginfty.hpp"
#include "gch/graded.hpp"
#include "gch/symalg.hpp"

using namespace gch;
using gch::genv::HSpace;
using gch::ginfty::GInfty;
using gch::ginfty::PackMono;
using gch::ginfty::STensor;
using gch::polyvec::GerstAlgebra;

namespace {

struct Instance {
  std::string label;
  std::unique_ptr<HSpace> H;
  std::unique_ptr<GInfty> S;
};

Instance make(std::string label, GerstAlgebra G) {
  Instance i{std::move(label), std::make_unique<HSpace>(std::move(G)), nullptr};
  i.S = std::make_unique<GInfty>(*i.H);
  return i;
}

std::vector<Instance> instances(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Instance> out;
  out.push_back(make("polyvec d=2 k<=2", GerstAlgebra::from_polyvec(2, 2)));
  out.push_back(make("polyvec d=3 k<=2", GerstAlgebra::from_polyvec(3, 2)));
  out.push_back(make("sandbox 3 letters", GerstAlgebra::sandbox(rng)));
  out.push_back(make("sandbox 7 letters", GerstAlgebra::sandbox(rng, 2, 3)));
  return out;
}

Word random_word(Rng& rng, int nletters, int len) {
  Word w(len);
  for (int& x : w) x = static_cast<int>(rng.below(nletters));
  return w;
}

// Product of `n` random reduced packets of length <= maxlen.
STensor random_element(Rng& rng, const GInfty& S, int n, int maxlen = 2) {
  for (int tries = 0; tries < 50; ++tries) {
    std::vector<TensorElem> packets;
    for (int i = 0; i < n; ++i) {
      const Word w = random_word(rng, S.space().algebra().dim(), rng.range(1, maxlen));
      packets.push_back(S.space().reduce(TensorElem(w)));
    }
    STensor x = S.element(packets);
    if (!x.is_zero()) return x;
  }
  return {};
}

STensor lift(const STensor& x, const ginfty::MonoMap& f) {
  STensor out;
  for (const auto& [t, c] : x) out.add(f(t.at(0)), c);
  return out;
}

// Independent form of the cobracket extension: sum over orderings of the
// packets, cut the packet in position s, send the ones in front to the
// left factor and the ones after to the right, and weight each ordering by
// 1 / ((s)! (n-1-s)!).
STensor kappa_oracle(const GInfty& S, const PackMono& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> degs(n);
  for (int i = 0; i < n; ++i) degs[i] = static_cast<int>(S.packet_degree(m[i]));
  std::vector<int> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  auto fact = [](int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  STensor out;
  do {
    const int sign = koszul_sign(degs, pi);
    long front = 0;
    for (int s = 0; s < n; ++s) {
      const Rational w = Rational(sign * sign_pow(front)) / Rational(fact(s) * fact(n - 1 - s));
      for (const auto& [t, c] : S.kappa_packet(m[pi[s]])) {
        std::vector<TensorElem> left, right;
        for (int i = 0; i < s; ++i) left.emplace_back(m[pi[i]]);
        left.emplace_back(t[0][0]);
        right.emplace_back(t[1][0]);
        for (int i = s + 1; i < n; ++i) right.emplace_back(m[pi[i]]);
        for (const auto& [a, ca] : S.product(left))
          for (const auto& [b, cb] : S.product(right)) out.add(std::vector<PackMono>{a, b}, w * c * ca * cb);
      }
      front += degs[pi[s]];
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

}  // namespace

TEST(BigDelta, Examples) {
  auto inst = make("p", GerstAlgebra::from_polyvec(2, 1));
  const GInfty& S = *inst.S;
  EXPECT_TRUE(S.big_delta({{1}}).is_zero());
  // two vector-field packets, each of degree -1
  const PackMono m{{1}, {2}};
  const STensor d = S.big_delta(m);
  EXPECT_EQ(d.size(), 2u);
  const int s = sign_pow(S.packet_degree({1}) * S.packet_degree({2}));
  EXPECT_EQ(d.coeff({{{1}}, {{2}}}), Rational(1));
  EXPECT_EQ(d.coeff({{{2}}, {{1}}}), Rational(s));
}

TEST(BigDelta, CoassociativeCocommutative) {
  Rng rng(3);
  for (const auto& inst : instances(1)) {
    const GInfty& S = *inst.S;
    for (int t = 0; t < 20; ++t) {
      const STensor x = random_element(rng, S, rng.range(1, 3));
      const STensor d = lift(x, S.delta_map());
      EXPECT_EQ(S.apply_at(d, 0, S.delta_map(), 0), S.apply_at(d, 1, S.delta_map(), 0)) << inst.label;
      EXPECT_EQ(S.swap(d, 0), d) << inst.label;
    }
  }
}

TEST(Kappa, SinglePacket) {
  auto inst = make("p", GerstAlgebra::from_polyvec(2, 2));
  const GInfty& S = *inst.S;
  const auto& Q = inst.H->quotient();
  for (int i = 0; i < inst.H->algebra().dim(); ++i) EXPECT_TRUE(S.kappa({{i}}).is_zero());
  // the class of a vector field followed by a bivector
  const TensorElem coef = Q.reduce(TensorElem(Word{1, 6}));
  STensor want;
  for (const auto& [w, c] : coef) {
    const Rational s = c * Rational(sign_pow(S.packet_degree({w[0]}) + 1));
    want.add(std::vector<PackMono>{{{w[0]}}, {{w[1]}}}, s);
    want.add(std::vector<PackMono>{{{w[1]}}, {{w[0]}}},
             s * Rational(sign_pow(S.packet_degree({w[0]}) * S.packet_degree({w[1]}))));
  }
  STensor got;
  for (const auto& [w, c] : coef) got.add(S.kappa({w}), c);
  EXPECT_EQ(got, want);
}

TEST(Kappa, MatchesOracle) {
  Rng rng(5);
  for (const auto& inst : instances(2)) {
    const GInfty& S = *inst.S;
    for (int t = 0; t < 20; ++t) {
      const STensor x = random_element(rng, S, rng.range(1, 3));
      for (const auto& [f, c] : x) EXPECT_EQ(S.kappa(f[0]), kappa_oracle(S, f[0])) << inst.label;
    }
  }
}

TEST(Kappa, Cosymmetric) {
  Rng rng(6);
  for (const auto& inst : instances(3)) {
    const GInfty& S = *inst.S;
    for (int t = 0; t < 20; ++t) {
      const STensor k = lift(random_element(rng, S, rng.range(1, 3), 3), S.kappa_map());
      EXPECT_EQ(S.swap(k, 0), k) << inst.label;
    }
  }
}

TEST(Kappa, VanishesOnShuffleImages) {
  Rng rng(7);
  for (const auto& inst : instances(4)) {
    const GInfty& S = *inst.S;
    const auto& deg = inst.H->letter_degrees();
    for (int t = 0; t < 20; ++t) {
      const int n = inst.H->algebra().dim();
      const Word u = random_word(rng, n, rng.range(1, 2)), v = random_word(rng, n, rng.range(1, 2));
      STensor k;
      for (const auto& [w, c] : shuffleco::bat(u, v, deg)) k.add(S.kappa_packet(w), c);
      EXPECT_TRUE(k.is_zero()) << inst.label;
    }
  }
}

TEST(Ell, Examples) {
  auto inst = make("p", GerstAlgebra::from_polyvec(2, 2));
  const GInfty& S = *inst.S;
  for (int i = 0; i < inst.H->algebra().dim(); ++i) EXPECT_TRUE(S.ell({{i}}).is_zero());
  // two vector fields: l(X Y) = [X, Y] as one packet
  const Word X{1}, Y{3};
  PackMono m{X, Y};
  ASSERT_NE(sym_canonicalize(m, [&](const Word& w) { return S.packet_degree(w); }), 0);
  EXPECT_EQ(S.ell(m), S.element({S.ell2(m[0], m[1])}));
  EXPECT_EQ(S.ell2(X, Y), inst.H->bracket(TensorElem(X), TensorElem(Y)) * Rational(sign_pow(S.packet_degree(X))));
  Rng rng(1);
  auto ab = make("abelian", GerstAlgebra::abelian_sandbox(rng));
  for (int t = 0; t < 10; ++t) {
    const STensor x = random_element(rng, *ab.S, 3);
    EXPECT_TRUE(lift(x, ab.S->ell_map()).is_zero());
  }
}

TEST(M, Examples) {
  auto inst = make("p", GerstAlgebra::from_polyvec(2, 2));
  const GInfty& S = *inst.S;
  const int n = inst.H->algebra().dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      PackMono m{{i}, {j}};
      if (sym_canonicalize(m, [&](const Word& w) { return S.packet_degree(w); }) == 0) continue;
      EXPECT_TRUE(S.m(m).is_zero());
    }
  // one packet of length 2: its mu value
  const TensorElem X = inst.H->reduce(TensorElem(Word{1, 4}));
  const STensor got = lift(S.element({X}), S.m_map());
  EXPECT_EQ(got, S.element({inst.H->mu(X)}));
  // an odd vector-field packet in front of a length-2 packet: the surviving
  // term carries -1
  const Word v{1};
  ASSERT_TRUE(odd(S.packet_degree(v)));
  const TensorElem Y = inst.H->reduce(TensorElem(Word{2, 5}));
  const STensor lhs = lift(S.element({TensorElem(v), Y}), S.m_map());
  const STensor rhs = S.element({TensorElem(v), inst.H->mu(Y)}) * Rational(-1);
  EXPECT_EQ(lhs, rhs);
}

TEST(GInftyIdentities, SquareZero) {
  Rng rng(8);
  for (const auto& inst : instances(5)) {
    const GInfty& S = *inst.S;
    int nonzero = 0;
    for (int t = 0; t < 40; ++t) {
      const STensor x = random_element(rng, S, rng.range(1, 3));
      const STensor l = S.apply_at(x, 0, S.ell_map(), 1), m = S.apply_at(x, 0, S.m_map(), 1);
      nonzero += !l.is_zero() || !m.is_zero();
      EXPECT_TRUE(S.apply_at(l, 0, S.ell_map(), 1).is_zero()) << inst.label;
      EXPECT_TRUE(S.apply_at(m, 0, S.m_map(), 1).is_zero()) << inst.label;
      STensor lm = S.apply_at(l, 0, S.m_map(), 1);
      lm += S.apply_at(m, 0, S.ell_map(), 1);
      EXPECT_TRUE(lm.is_zero()) << inst.label;
    }
    EXPECT_GE(nonzero, 5) << inst.label;
  }
}

TEST(GInftyIdentities, EllAndMAreCoderivationsOfDelta) {
  Rng rng(9);
  for (const auto& inst : instances(6)) {
    const GInfty& S = *inst.S;
    for (int t = 0; t < 40; ++t) {
      const STensor x = random_element(rng, S, rng.range(1, 3));
      for (const auto& f : {S.ell_map(), S.m_map()}) {
        const STensor lhs = S.apply_at(S.apply_at(x, 0, f, 1), 0, S.delta_map(), 0);
        const STensor d = S.apply_at(x, 0, S.delta_map(), 0);
        const STensor rhs = S.apply_at(d, 0, f, 1) + S.apply_at(d, 1, f, 1);
        EXPECT_EQ(lhs, rhs) << inst.label;
      }
    }
  }
}

TEST(GInftyIdentities, CoJacobi) {
  Rng rng(10);
  for (const auto& inst : instances(7)) {
    const GInfty& S = *inst.S;
    int nonzero = 0;
    for (int t = 0; t < 40; ++t) {
      const STensor x = random_element(rng, S, rng.range(1, 3));
      const STensor kk = S.apply_at(S.apply_at(x, 0, S.kappa_map(), 1), 0, S.kappa_map(), 1);
      nonzero += !kk.is_zero();
      STensor sum = kk;
      sum += S.swap(S.swap(kk, 1), 0);
      sum += S.swap(S.swap(kk, 0), 1);
      EXPECT_TRUE(sum.is_zero()) << inst.label;
    }
    EXPECT_GE(nonzero, 5) << inst.label;
  }
}

TEST(GInftyIdentities, CoLeibniz) {
  Rng rng(11);
  for (const auto& inst : instances(8)) {
    const GInfty& S = *inst.S;
    int nonzero = 0;
    for (int t = 0; t < 40; ++t) {
      const STensor x = random_element(rng, S, rng.range(1, 3));
      const STensor k = S.apply_at(x, 0, S.kappa_map(), 1);
      const STensor d = S.apply_at(x, 0, S.delta_map(), 0);
      const STensor lhs = S.apply_at(k, 1, S.delta_map(), 0);
      nonzero += !lhs.is_zero();
      const STensor rhs = S.apply_at(d, 0, S.kappa_map(), 1) + S.swap(S.apply_at(d, 1, S.kappa_map(), 1), 0);
      EXPECT_EQ(lhs, rhs) << inst.label;
    }
    EXPECT_GE(nonzero, 5) << inst.label;
  }
}

TEST(GInftyIdentities, MAndEllAreCoderivationsOfKappa) {
  Rng rng(12);
  for (const auto& inst : instances(9)) {
    const GInfty& S = *inst.S;
    int nonzero = 0;
    for (int t = 0; t < 40; ++t) {
      const STensor x = random_element(rng, S, rng.range(1, 3));
      for (const auto& f : {S.m_map(), S.ell_map()}) {
        const STensor k = S.apply_at(x, 0, S.kappa_map(), 1);
        const STensor lhs = S.apply_at(k, 1, f, 1) + S.apply_at(k, 0, f, 1);
        const STensor rhs = S.apply_at(S.apply_at(x, 0, f, 1), 0, S.kappa_map(), 1) * Rational(-1);
        EXPECT_EQ(lhs, rhs) << inst.label;
        nonzero += !rhs.is_zero();
      }
    }
    EXPECT_GE(nonzero, 5) << inst.label;
  }
}
