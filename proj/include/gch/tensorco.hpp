#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gch/lincomb.hpp"
#include "gch/rng.hpp"

namespace gch {

using Word = std::vector<int>;
using Vec = LinComb<int>;  // element of a space with an indexed basis
using TensorElem = LinComb<Word>;
using TensorPair = LinComb<std::pair<Word, Word>>;

// Bilinear operation on an indexed basis: table[i][j] = e_i * e_j.
using BilinearTable = std::vector<std::vector<Vec>>;

Vec bilinear(const BilinearTable& t, const Vec& a, const Vec& b);
// Rewrites a bilinear table in the basis e'_i = sum_j P[i][j] e_j.
BilinearTable change_basis(const BilinearTable& t, const std::vector<std::vector<Rational>>& P);
std::vector<std::vector<Rational>> invert_dense(const std::vector<std::vector<Rational>>& m);
// Random invertible matrix preserving the degree blocks of `deg`.
std::vector<std::vector<Rational>> random_graded_basis_change(Rng& rng, const std::vector<int>& deg);

Word concat(const Word& a, const Word& b);
Word slice(const Word& w, std::size_t from, std::size_t to);
long word_degree(const Word& w, const std::vector<int>& deg);

// Associative algebra of degree 0 on a finite basis with unshifted degrees.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::vector<int> degrees, BilinearTable product, bool commutative = false, bool validate = true);

  int dim() const { return static_cast<int>(deg_.size()); }
  int degree(int i) const { return deg_[i]; }
  int shifted_degree(int i) const { return deg_[i] - 1; }
  const std::vector<int>& degrees() const { return deg_; }
  std::vector<int> shifted_degrees() const;
  const Vec& mul(int i, int j) const { return prod_[i][j]; }
  Vec mul(const Vec& a, const Vec& b) const { return bilinear(prod_, a, b); }
  const BilinearTable& table() const { return prod_; }
  bool commutative() const { return comm_; }

  // Returns a description of the first violated axiom, empty if none.
  std::string check() const;

 private:
  std::vector<int> deg_;
  BilinearTable prod_;
  bool comm_;
};

// A-bimodule with degree-0 actions given by structure constants.
class Bimodule {
 public:
  Bimodule(const FiniteAlgebra& alg, std::vector<int> degrees, BilinearTable left, BilinearTable right,
           bool validate = true);
  static Bimodule regular(const FiniteAlgebra& alg);

  int dim() const { return static_cast<int>(deg_.size()); }
  int degree(int v) const { return deg_[v]; }
  const std::vector<int>& degrees() const { return deg_; }
  Vec left(int a, const Vec& v) const;   // a . v
  Vec right(const Vec& v, int a) const;  // v . a
  const BilinearTable& left_table() const { return left_; }
  const BilinearTable& right_table() const { return right_; }
  // Symmetric in the graded sense: v.a = (-1)^{|a||v|} a.v.
  bool symmetric(const FiniteAlgebra& alg) const;
  std::string check(const FiniteAlgebra& alg) const;

 private:
  std::vector<int> deg_;
  BilinearTable left_;   // left_[a][v]
  BilinearTable right_;  // right_[v][a]
};

// B = A + V[1] + ... + V[levels] with a.v, v.a the actions and v.w = 0.
// Basis of B: A's basis, then level 1 copy of V, level 2 copy, ...
FiniteAlgebra square_zero_extension(const FiniteAlgebra& alg, const Bimodule& mod, int levels);

namespace tensorco {

TensorPair deconcat(const Word& w);
TensorPair deconcat(const TensorElem& x);

// m2(a,b) = (-1)^{deg a} a.b on A[1].
Vec m2(int a, int b, const FiniteAlgebra& alg);

// Taylor family of a coderivation: maps[k] sends words of length k to A[1].
struct TaylorFamily {
  int degree = 0;
  std::vector<int> letter_degrees;  // shifted degrees of the alphabet
  std::map<int, std::function<Vec(const Word&)>> maps;
};

// Unique coderivation of the deconcatenation coproduct with the given
// Taylor projections.
class Coderivation {
 public:
  explicit Coderivation(TaylorFamily fam) : fam_(std::move(fam)) {}
  TensorElem operator()(const Word& w) const;
  TensorElem operator()(const TensorElem& x) const;
  int degree() const { return fam_.degree; }

 private:
  TaylorFamily fam_;
};

Coderivation coderivation_lift_tensor(TaylorFamily fam);
Coderivation m_lift(const FiniteAlgebra& alg);

// Hochschild cochain: values on words of one fixed arity, with a declared
// degree as a map into B[1] (elements of V sit in degree |v| - 1 there).
struct HochschildCochain {
  int arity = 1;
  int degree = 0;
  std::map<Word, Vec> values;
  Vec operator()(const Word& w) const;
};

// Throws std::invalid_argument when a stored value has the wrong degree.
void check_cochain_degree(const HochschildCochain& c, const FiniteAlgebra& alg, const Bimodule& mod);

HochschildCochain d_hochschild(const HochschildCochain& c, const FiniteAlgebra& alg, const Bimodule& mod);

std::vector<Word> all_words(int nletters, int length);

// Random algebras used by the property suites (dimension <= 3).
FiniteAlgebra random_algebra(Rng& rng, bool commutative);
HochschildCochain random_hochschild_cochain(Rng& rng, const FiniteAlgebra& alg, const Bimodule& mod, int arity);

}  // namespace tensorco
}  // namespace gch
