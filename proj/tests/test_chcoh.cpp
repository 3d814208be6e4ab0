#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "gch/chcoh.hpp"
#include "gch/graded.hpp"

using namespace gch;
using namespace gch::chcoh;
using gch::genv::HSpace;
using gch::ginfty::GInfty;
using gch::ginfty::STensor;
using gch::polyvec::GerstAlgebra;

namespace {

struct Setup {
  std::string label;
  std::unique_ptr<HSpace> H;
  std::unique_ptr<GInfty> S;
  std::unique_ptr<Complex> C;
};

Setup make(std::string label, GerstAlgebra src, GerstAlgebra tgt, LetterMap f1, int Nmax, int nmax) {
  Setup s{std::move(label), std::make_unique<HSpace>(std::move(src)), nullptr, nullptr};
  s.S = std::make_unique<GInfty>(*s.H);
  s.C = std::make_unique<Complex>(*s.S, std::move(tgt), std::move(f1), Nmax, nmax);
  return s;
}

std::vector<Setup> setups() {
  Rng rng(3);
  std::vector<Setup> out;
  const auto sb = GerstAlgebra::sandbox(rng);
  out.push_back(make("sandbox identity", sb, sb, identity_map(sb), 4, 4));
  const auto P = GerstAlgebra::from_polyvec(2, 2);
  out.push_back(make("polyvec d=2 into R", P, GerstAlgebra::reals(), constant_term(P), 4, 3));
  out.push_back(make("polyvec d=2 into sandbox", P, sb, unit_projection(P, sb), 4, 3));
  return out;
}

Cochain random_cochain(Rng& rng, const Complex& C, int N, int terms) {
  const auto basis = C.basis(N);
  Cochain g;
  for (int i = 0; i < terms; ++i)
    g.add({basis[rng.below(basis.size())], static_cast<int>(rng.below(C.target().dim()))}, rng.nonzero_rational());
  return g;
}

// Number of monomials of level N from the representatives of each length:
// for a length used m times, multisets of size m with no odd packet
// repeated.
std::size_t count_monomials(const HSpace& H, int N, int nmax) {
  std::size_t total = 0;
  const auto& Q = H.quotient();
  std::function<void(int, int, int, std::size_t)> rec = [&](int left, int maxlen, int packets, std::size_t acc) {
    if (left == 0) {
      total += acc;
      return;
    }
    for (int p = std::min(left, maxlen); p >= 1; --p)
      for (int m = 1; m * p <= left && packets + m <= nmax; ++m) {
        // coefficient of t^m in prod over reps of (1 - t)^{-1} or (1 + t)
        std::vector<std::size_t> poly(m + 1, 0);
        poly[0] = 1;
        for (const Word& w : Q.representatives(p)) {
          if (odd(H.degree(w) - 1)) {
            for (int i = m; i >= 1; --i) poly[i] += poly[i - 1];
          } else {
            for (int i = 1; i <= m; ++i) poly[i] += poly[i - 1];
          }
        }
        if (poly[m] == 0) continue;
        rec(left - m * p, p - 1, packets + m, acc * poly[m]);
      }
  };
  rec(N, N, 0, 1);
  return total;
}

SparseMat sum(const SparseMat& a, const SparseMat& b) {
  auto t = a.entries();
  for (const auto& e : b.entries()) t.push_back(e);
  return SparseMat::from_triplets(a.nrows(), a.ncols(), t);
}

}  // namespace

TEST(ChComplex, SquaresToZero) {
  for (const auto& s : setups()) {
    for (int N = 1; N + 2 <= s.C->Nmax(); ++N) {
      const auto A = s.C->assemble(N), B = s.C->assemble(N + 1);
      EXPECT_TRUE((B * A).is_zero()) << s.label << " N=" << N;
      const auto Am = s.C->assemble(N, Part::M), Bm = s.C->assemble(N + 1, Part::M);
      const auto Al = s.C->assemble(N, Part::Ell), Bl = s.C->assemble(N + 1, Part::Ell);
      EXPECT_TRUE((Bm * Am).is_zero()) << s.label;
      EXPECT_TRUE((Bl * Al).is_zero()) << s.label;
      EXPECT_TRUE(sum(Bm * Al, Bl * Am).is_zero()) << s.label;
      EXPECT_FALSE(A.is_zero()) << s.label;
    }
  }
}

TEST(ChComplex, SplitsIntoTwoParts) {
  for (const auto& s : setups())
    for (int N = 1; N < s.C->Nmax(); ++N)
      EXPECT_EQ(s.C->assemble(N), sum(s.C->assemble(N, Part::M), s.C->assemble(N, Part::Ell))) << s.label;
}

TEST(ChComplex, ColumnCount) {
  for (const auto& s : setups())
    for (int N = 1; N <= s.C->Nmax(); ++N) {
      const std::size_t want = count_monomials(*s.H, N, s.C->nmax());
      EXPECT_EQ(s.C->basis(N).size(), want) << s.label << " N=" << N;
      if (N < s.C->Nmax()) {
        const auto A = s.C->assemble(N);
        EXPECT_EQ(static_cast<std::size_t>(A.ncols()), want * s.C->target().dim());
      }
    }
}

TEST(ChComplex, BasisOnLettersPartitionsTheLevel) {
  const auto s = std::move(setups()[0]);
  for (int N = 1; N <= 3; ++N) {
    std::set<PackMono> seen;
    for (const auto& X : s.C->basis(N)) {
      Word ms;
      for (const auto& p : X) ms.insert(ms.end(), p.begin(), p.end());
      std::sort(ms.begin(), ms.end());
      const auto block = s.C->basis_on_letters(ms);
      EXPECT_NE(std::find(block.begin(), block.end(), X), block.end());
      seen.insert(block.begin(), block.end());
    }
    EXPECT_EQ(seen.size(), s.C->basis(N).size());
  }
}

TEST(ChComplex, ZeroSandboxGivesZeroDifferential) {
  const auto z = GerstAlgebra::zero_sandbox();
  auto s = make("zero", z, z, identity_map(z), 3, 3);
  for (int N = 1; N < 3; ++N) EXPECT_TRUE(s.C->assemble(N).is_zero());
}

TEST(ChComplex, ApplyMatchesMatrix) {
  Rng rng(17);
  for (const auto& s : setups()) {
    for (int N = 1; N < s.C->Nmax(); ++N) {
      EXPECT_TRUE(s.C->d_ch(Cochain{}).is_zero());
      const Cochain g = random_cochain(rng, *s.C, N, 3);
      const auto A = s.C->assemble(N);
      const auto cols = s.C->basis(N);
      const int T = s.C->target().dim();
      Column x(A.ncols());
      for (const auto& [e, c] : g) {
        const auto it = std::find(cols.begin(), cols.end(), e.first);
        x[(it - cols.begin()) * T + e.second] += c;
      }
      EXPECT_EQ(s.C->d_ch(g), s.C->from_column(N + 1, A.apply(x))) << s.label;
    }
  }
}

TEST(ChComplex, DifferentialRaisesCochainDegree) {
  Rng rng(23);
  for (const auto& s : setups()) {
    const Cochain g = random_cochain(rng, *s.C, 2, 1);
    const auto& [Y, b] = g.begin()->first;
    const long deg = s.C->cochain_degree(Y, b);
    for (const auto& [e, c] : s.C->d_ch(g)) EXPECT_EQ(s.C->cochain_degree(e.first, e.second), deg + 1) << s.label;
  }
}

TEST(ChComplex, EllPartOnRealsIsChevalleyEilenberg) {
  // Letters are vector fields, so each packet is odd and a single letter;
  // the bracket of R vanishes and only f(l X) remains.
  auto s = make("polyvec d=2 into R", GerstAlgebra::from_polyvec(2, 1), GerstAlgebra::reals(),
                constant_term(GerstAlgebra::from_polyvec(2, 1)), 4, 4);
  const auto& G = s.H->algebra();
  std::vector<int> fields;
  for (int i = 0; i < G.dim(); ++i)
    if (G.degree(i) == 1) fields.push_back(i);
  Rng rng(5);
  Cochain f;
  for (const auto& Y : s.C->basis(Shape{1, 1})) {
    bool all_fields = true;
    for (const auto& p : Y) all_fields = all_fields && G.degree(p[0]) == 1;
    if (all_fields) f.add({Y, 0}, rng.nonzero_rational());
  }
  const Cochain df = s.C->d_ell(f);
  auto value = [&](const std::vector<int>& letters) {
    std::vector<TensorElem> ps;
    for (int l : letters) ps.emplace_back(Word{l});
    Rational v;
    for (const auto& [Y, c] : s.S->product(ps)) v += c * f.coeff({Y, 0});
    return v;
  };
  auto dvalue = [&](const std::vector<int>& letters) {
    std::vector<TensorElem> ps;
    for (int l : letters) ps.emplace_back(Word{l});
    Rational v;
    for (const auto& [Y, c] : s.S->product(ps)) v += c * df.coeff({Y, 0});
    return v;
  };
  int checked = 0;
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = i + 1; j < fields.size(); ++j)
      for (std::size_t k = j + 1; k < fields.size(); ++k) {
        const std::vector<int> a = {fields[i], fields[j], fields[k]};
        Rational want;
        for (int p = 0; p < 3; ++p)
          for (int q = p + 1; q < 3; ++q) {
            const int r = 3 - p - q;
            for (const auto& [l, c] : G.bracket(a[p], a[q])) want += c * Rational(sign_pow(p + q + 1)) * value({l, a[r]});
          }
        EXPECT_EQ(dvalue(a), want);
        ++checked;
      }
  EXPECT_GT(checked, 0);
}

TEST(ChComplex, MPartOnRealsAwayFromConstants) {
  // With no constant letter the kappa terms vanish into R.
  auto s = make("polyvec d=2 into R", GerstAlgebra::from_polyvec(2, 2), GerstAlgebra::reals(),
                constant_term(GerstAlgebra::from_polyvec(2, 2)), 4, 3);
  const auto& G = s.H->algebra();
  const int one = G.unit();
  Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const Cochain f = random_cochain(rng, *s.C, 2, 6);
    const Cochain dm = s.C->d_m(f);
    for (const auto& X : s.C->basis(3)) {
      bool constant = false;
      for (const auto& p : X)
        for (int l : p) constant = constant || l == one;
      if (constant) continue;
      Rational want;
      for (const auto& [t, c] : s.S->m_map()(X))
        for (const auto& [e, v] : f)
          if (e.first == t.at(0)) want -= c * v * Rational(sign_pow(s.C->cochain_degree(e.first, e.second)));
      EXPECT_EQ(dm.coeff({X, 0}), want);
    }
  }
}

TEST(ChComplex, CoboundariesArePreimaged) {
  Rng rng(29);
  for (const auto& s : setups()) {
    for (int N = 1; N <= 2; ++N) {
      const Cochain g = random_cochain(rng, *s.C, N, 3);
      const Cochain f = s.C->d_ch(g);
      if (f.is_zero()) continue;
      const auto res = s.C->is_coboundary(f);
      ASSERT_TRUE(res.coboundary) << s.label;
      ASSERT_TRUE(res.preimage.has_value());
      EXPECT_EQ(s.C->d_ch(*res.preimage), f) << s.label;
    }
  }
}

TEST(ChComplex, RejectsLevelsOutsideTruncation) {
  auto s = std::move(setups()[0]);
  const Cochain g = random_cochain(*std::make_unique<Rng>(1), *s.C, s.C->Nmax(), 1);
  EXPECT_THROW(s.C->d_ch(g), std::length_error);
}

TEST(ChComplex, RejectsNonMorphisms) {
  const auto P = GerstAlgebra::from_polyvec(2, 2);
  genv::HSpace H(P);
  GInfty S(H);
  LetterMap bad = identity_map(P);
  // x1 d1 -> 2 x1 d1 breaks the bracket
  bad[letter_index(P, "x1 d1")] = Vec(letter_index(P, "x1 d1"), Rational(2));
  EXPECT_THROW(Complex(S, P, bad, 3, 3), std::invalid_argument);
}

TEST(F3, ValuesOnSmallArguments) {
  auto s = polyvec_into_reals({3, 3, 4, 4});
  const auto& G = s.H->algebra();
  const Cochain f = f3_111(*s.G, 3);
  const int a = letter_index(G, "x1 d2"), b = letter_index(G, "x2 d3"), c = letter_index(G, "x3 d1");
  // A = E21, E32, E13: A1 A3 A2 = E22 has trace 1, A1 A2 A3 = 0
  EXPECT_EQ(f3_111_value(*s.G, 3, f, {a, b, c}), Rational(1));
  EXPECT_EQ(f3_111_value(*s.G, 3, f, {a, c, b}), Rational(-1));
  const int e = letter_index(G, "x1 d1");
  EXPECT_EQ(f3_111_value(*s.G, 3, f, {e, e, e}), Rational(0));
  const int bi = letter_index(G, "x1*x2 d12");
  EXPECT_EQ(f3_111_value(*s.G, 3, f, {a, b, bi}), Rational(0));
}

TEST(F3, CocycleNotCoboundary) {
  auto s = polyvec_into_reals({3, 3, 4, 4});
  const Cochain f = f3_111(*s.G, 3);
  EXPECT_TRUE(s.C->d_m(f).is_zero());
  EXPECT_TRUE(s.C->d_ell(f).is_zero());
  EXPECT_TRUE(s.C->is_cocycle(f));
  const auto local = s.C->is_coboundary(f);
  EXPECT_FALSE(local.coboundary);
  EXPECT_FALSE(local.preimage.has_value());
  const auto full = s.C->is_coboundary(f, true);
  EXPECT_FALSE(full.coboundary);
  EXPECT_EQ(full.rows, static_cast<int>(s.C->basis(3).size()));
  EXPECT_EQ(full.cols, static_cast<int>(s.C->basis(2).size()));
  EXPECT_EQ(s.C->checked_shapes(f), (std::vector<Shape>{{1, 1, 1, 1}, {2, 1, 1}, {2, 2}, {3, 1}, {4}}));
}

TEST(F3, ReportRejectsSmallTruncations) {
  EXPECT_THROW(cocycle_report_json({2, 2, 4, 4}), std::invalid_argument);
  EXPECT_THROW(cocycle_report_json({3, 3, 3, 4}), std::length_error);
  bool ok = false;
  const std::string j = cocycle_report_json({3, 3, 4, 4}, &ok);
  EXPECT_TRUE(ok);
  EXPECT_NE(j.find("\"coboundary\": false"), std::string::npos);
}

namespace {

// Random degree-preserving family on canonical monomials, memoised so the
// same monomial always gets the same image.
struct RandomTaylor {
  Rng rng;
  const GInfty* S;
  const GerstAlgebra* T;
  int max_level;
  std::map<PackMono, Vec> seen;
  Vec operator()(const PackMono& Y) {
    auto it = seen.find(Y);
    if (it != seen.end()) return it->second;
    Vec v;
    if (level(Y) <= max_level)
      for (int b = 0; b < T->dim(); ++b)
        if (T->degree(b) - 2 == S->degree(Y) && rng.coin()) v.add(b, rng.nonzero_rational());
    return seen[Y] = v;
  }
};

PackMono random_mono(Rng& rng, const GInfty& S, const std::vector<int>& lengths) {
  for (int tries = 0; tries < 100; ++tries) {
    std::vector<TensorElem> ps;
    for (int p : lengths) {
      const auto reps = S.space().quotient().representatives(p);
      ps.emplace_back(reps[rng.below(reps.size())]);
    }
    const auto m = S.product(ps);
    if (!m.is_zero()) return m.begin()->first;
  }
  return {};
}

STensor tensor_image(const Morphism& F, const STensor& t) {
  STensor out;
  for (const auto& [factors, c] : t) {
    STensor cur(std::vector<PackMono>{}, c);
    for (const auto& A : factors) {
      STensor next;
      for (const auto& [fs, cf] : cur)
        for (const auto& [B, cb] : F(A)) {
          auto g = fs;
          g.push_back(B);
          next.add(std::move(g), cf * cb);
        }
      cur = std::move(next);
    }
    out += cur;
  }
  return out;
}

STensor after(const LinComb<PackMono>& x, const ginfty::MonoMap& f) {
  STensor out;
  for (const auto& [m, c] : x) out.add(f(m), c);
  return out;
}

}  // namespace

TEST(MorphismTest, IsAComorphism) {
  Rng rng(61);
  const auto P = GerstAlgebra::from_polyvec(2, 2);
  HSpace H(P);
  GInfty S(H);
  const std::vector<std::vector<int>> shapes = {{1}, {2}, {1, 1}, {2, 1}, {2, 2}, {3}, {3, 1}};
  for (int trial = 0; trial < 3; ++trial) {
    RandomTaylor f{Rng(100 + trial), &S, &P, 4, {}};
    Morphism F(S, S, std::ref(f));
    for (const auto& sh : shapes) {
      const PackMono X = random_mono(rng, S, sh);
      ASSERT_FALSE(X.empty());
      const auto FX = F(X);
      EXPECT_EQ(tensor_image(F, S.big_delta(X)), after(FX, S.delta_map()));
      EXPECT_EQ(tensor_image(F, S.kappa(X)), after(FX, S.kappa_map()));
    }
  }
}

TEST(MorphismTest, LinearPartIsTheFamily) {
  Rng rng(3);
  const auto P = GerstAlgebra::from_polyvec(2, 2);
  HSpace H(P);
  GInfty S(H);
  RandomTaylor f{Rng(1), &S, &P, 4, {}};
  Morphism F(S, S, std::ref(f));
  for (int t = 0; t < 10; ++t) {
    const PackMono X = random_mono(rng, S, {1, 1});
    TensorElem want;
    for (const auto& [b, c] : f(X)) want.add(Word{b}, c);
    TensorElem got;
    for (const auto& [w, c] : F.packet(X))
      if (w.size() == 1) got.add(w, c);
    EXPECT_EQ(got, want);
  }
}

TEST(MorphismTest, TableauSumMatchesInversion) {
  Rng rng(71);
  const std::vector<std::vector<int>> shapes = {{2}, {3}, {2, 1}, {3, 1}, {2, 1, 1}, {2, 2}, {3, 2}};
  Rng pick(4);
  std::vector<GerstAlgebra> algs = {GerstAlgebra::from_polyvec(2, 2), GerstAlgebra::sandbox(pick, 2, 3)};
  for (const auto& P : algs) {
    HSpace H(P);
    GInfty S(H);
    RandomTaylor f{Rng(7), &S, &P, 5, {}};
    Morphism F(S, S, std::ref(f));
    for (int trial = 0; trial < 4; ++trial)
      for (const auto& sh : shapes) {
        const PackMono X = random_mono(rng, S, sh);
        if (X.empty()) continue;
        EXPECT_EQ(F.packet_tableau(X), F.packet(X)) << shape_str(shape_of(X));
      }
  }
}

TEST(MorphismTest, TableauLiftIsAComorphism) {
  Rng rng(83);
  Rng pick(9);
  std::vector<GerstAlgebra> algs = {GerstAlgebra::from_polyvec(2, 2), GerstAlgebra::sandbox(pick, 2, 3)};
  for (const auto& P : algs) {
    HSpace H(P);
    GInfty S(H);
    for (int trial = 0; trial < 3; ++trial) {
      // two-level family: f_1, f_2 and f_11
      RandomTaylor f{Rng(200 + trial), &S, &P, 2, {}};
      Morphism F(S, S, std::ref(f), Lift::Tableau);
      for (const auto& sh : std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {2, 1}, {2, 2}}) {
        const PackMono X = random_mono(rng, S, sh);
        if (X.empty()) continue;
        const auto FX = F(X);
        EXPECT_EQ(tensor_image(F, S.big_delta(X)), after(FX, S.delta_map()));
        EXPECT_EQ(tensor_image(F, S.kappa(X)), after(FX, S.kappa_map()));
      }
    }
  }
}

TEST(MorphismTest, LinearFamilyHasNoHigherOutput) {
  Rng rng(5);
  const auto P = GerstAlgebra::from_polyvec(2, 2);
  HSpace H(P);
  GInfty S(H);
  RandomTaylor f{Rng(3), &S, &P, 1, {}};
  Morphism F(S, S, std::ref(f), Lift::Tableau);
  for (int t = 0; t < 8; ++t) {
    const PackMono X = random_mono(rng, S, {2, 2});
    EXPECT_TRUE(F.packet_tableau(X).is_zero());
    const PackMono Y = random_mono(rng, S, {3});
    TensorElem want(Word{}, Rational(1));
    for (int l : Y[0]) {
      TensorElem next;
      for (const auto& [w, c] : want)
        for (const auto& [b, cb] : f(PackMono{Word{l}})) {
          Word w2 = w;
          w2.push_back(b);
          next.add(std::move(w2), c * cb);
        }
      want = std::move(next);
    }
    EXPECT_EQ(F.packet_tableau(Y), H.reduce(want));
  }
}

TEST(ChComplex, AssemblyIndependentOfThreadCount) {
  for (const auto& s : setups())
    for (int N = 1; N < s.C->Nmax(); ++N) EXPECT_EQ(s.C->assemble(N, Part::All, 1), s.C->assemble(N, Part::All, 3)) << s.label;
}

TEST(MorphismTest, OneAndOneOneFamilyOnTwoPackets) {
  // only f_1 and f_11: values on one letter or a product of two letters
  Rng rng(17);
  Rng pick(21);
  std::vector<GerstAlgebra> algs = {GerstAlgebra::from_polyvec(2, 2), GerstAlgebra::sandbox(pick, 2, 3)};
  for (const auto& P : algs) {
    HSpace H(P);
    GInfty S(H);
    for (int trial = 0; trial < 3; ++trial) {
      RandomTaylor base{Rng(300 + trial), &S, &P, 2, {}};
      auto f = [&base](const PackMono& Y) {
        for (const auto& p : Y)
          if (p.size() > 1) return Vec();
        return base(Y);
      };
      Morphism tab(S, S, f, Lift::Tableau), inv(S, S, f);
      for (const auto& sh : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {2, 2}}) {
        const PackMono X = random_mono(rng, S, sh);
        if (X.empty()) continue;
        EXPECT_EQ(tab.packet_tableau(X), inv.packet(X)) << shape_str(shape_of(X));
        const auto FX = tab(X);
        EXPECT_EQ(tensor_image(tab, S.big_delta(X)), after(FX, S.delta_map()));
        EXPECT_EQ(tensor_image(tab, S.kappa(X)), after(FX, S.kappa_map()));
      }
    }
  }
}
