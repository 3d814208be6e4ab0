#pragma once

#include <map>
#include <string>
#include <vector>

#include "gch/lincomb.hpp"
#include "gch/rng.hpp"
#include "gch/tensorco.hpp"

namespace gch {

// Elements of S+(g[1]): words kept sorted by letter id.
using SymElem = LinComb<Word>;
using SymPair = LinComb<std::pair<Word, Word>>;

namespace symco {

// Sorts w in place; returns the Koszul sign or 0 if an odd letter repeats.
int canonicalize(Word& w, const std::vector<int>& sdeg);
SymElem sym_word(Word w, const std::vector<int>& sdeg, const Rational& c = Rational(1));

// Sum over ordered bipartitions I u J, both nonempty, of eps X_I (x) X_J.
SymPair sym_coproduct(const Word& w, const std::vector<int>& sdeg);
SymPair sym_coproduct(const SymElem& x, const std::vector<int>& sdeg);

// Sorted words of length n without repeated odd letters.
std::vector<Word> sym_words(const std::vector<int>& sdeg, int n);

// Graded Lie algebra on a finite basis. Degrees are unshifted.
struct LieModule;

class LieData {
 public:
  LieData(std::vector<int> degrees, BilinearTable bracket, std::vector<Vec> differential = {},
          bool validate = true);

  // h = g + sum of V[p] over levels: [X, v] = X.v, [v, X] = -(-1)^{|X||v|} X.v,
  // [V, V] = 0, with d extended by zero. Basis: g, then one copy of V per
  // level in the given order.
  static LieData module_extension(const LieData& g, const LieModule& mod, const std::vector<int>& levels);

  int dim() const { return static_cast<int>(deg_.size()); }
  int degree(int i) const { return deg_[i]; }
  const std::vector<int>& degrees() const { return deg_; }
  std::vector<int> shifted_degrees() const;
  const Vec& bracket(int i, int j) const { return br_[i][j]; }
  Vec bracket(const Vec& a, const Vec& b) const { return bilinear(br_, a, b); }
  bool has_differential() const { return !d_.empty(); }
  Vec d(int i) const { return d_.empty() ? Vec() : d_[i]; }
  Vec d(const Vec& a) const;
  const BilinearTable& table() const { return br_; }
  const std::vector<Vec>& differential() const { return d_; }

  std::string check() const;

 private:
  std::vector<int> deg_;
  BilinearTable br_;
  std::vector<Vec> d_;
};

// Left g-module of degree 0: action[x][v] = x.v.
struct LieModule {
  std::vector<int> degrees;
  BilinearTable action;
  static LieModule trivial(const LieData& g, std::vector<int> degrees);
  std::string check(const LieData& g) const;
};

// l1(X) = dX, l2(X.Y) = (-1)^x [X,Y], extended as a coderivation.
class Ell {
 public:
  explicit Ell(LieData g) : g_(std::move(g)), sdeg_(g_.shifted_degrees()) {}
  SymElem operator()(const Word& w) const;
  SymElem operator()(const SymElem& x) const;
  Vec l2(int a, int b) const;
  const LieData& algebra() const { return g_; }
  const std::vector<int>& letter_degrees() const { return sdeg_; }

 private:
  LieData g_;
  std::vector<int> sdeg_;
};

Ell ell_lift(const LieData& g);

// Cochain S(g[1]) -> h[1] of degree f, possibly spread over several arities.
struct LCochain {
  int degree = 0;
  std::map<Word, Vec> values;  // keys are canonical sorted words
  Vec operator()(const Word& w, const std::vector<int>& sdeg) const;
  int min_arity() const;
  int max_arity() const;
};

// phi[i] = image of the g basis vector i in h.
struct LieMorphism {
  std::vector<Vec> images;
  static LieMorphism inclusion(int gdim);
  std::string check(const LieData& g, const LieData& h) const;
};

// Throws std::invalid_argument if a stored value has the wrong degree.
void check_lcochain_degree(const LCochain& F, const LieData& g, const LieData& h);

// d_L F = l^h o F - (-1)^f F o l^g, projected to h[1], evaluated on all
// words of arity min_arity..max_arity+1.
LCochain d_chevalley(const LCochain& F, const LieData& g, const LieData& h, const LieMorphism& phi);

// Textbook alternating cochains on a degree-0 Lie algebra with values in a
// module, stored on strictly increasing index tuples.
struct ClassicalCochain {
  int arity = 1;
  std::map<Word, Vec> values;
  Vec operator()(const Word& args) const;  // any order, alternating
};

ClassicalCochain d_classical(const ClassicalCochain& c, const LieData& g, const LieModule& mod);

// Decalage transport F(X_i1...X_in) = (-1)^{n(n-1)/2} C(X_i1,...,X_in), with
// values placed in the copy of V starting at h index `offset`.
LCochain transport(const ClassicalCochain& c, const LieData& h, int offset);

// Small Lie algebras (dimension <= 3) under a random degree-preserving basis
// change; with allow_graded some have odd elements or a differential.
LieData random_lie(Rng& rng, bool allow_graded = true);
// Adjoint module; only valid together with a zero differential.
LieModule adjoint_module(const LieData& g);
// Random cochain of one arity, with a degree that admits nonzero values.
LCochain random_lcochain(Rng& rng, const LieData& g, const LieData& h, int arity);

}  // namespace symco
}  // namespace gch
