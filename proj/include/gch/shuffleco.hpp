#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gch/tensorco.hpp"

namespace gch::shuffleco {

// Signed shuffle product of words a (length p) and b (length q) over
// letters with the given (shifted) degrees.
TensorElem bat(int p, int q, const Word& a, const Word& b, const std::vector<int>& deg);
TensorElem bat(const Word& a, const Word& b, const std::vector<int>& deg);
TensorElem bat(const TensorElem& a, const TensorElem& b, const std::vector<int>& deg);
TensorElem bat3(int p, int q, int r, const Word& a, const Word& b, const Word& c, const std::vector<int>& deg);

// Quotient of a tensor power by all shuffle images, one letter multiset at
// a time. Representatives are the words left without a pivot when the
// shuffle images are row reduced with columns in decreasing lexicographic
// order, so they are the lexicographically smallest words that survive.
class ShuffleQuotient {
 public:
  struct Block {
    Word multiset;
    std::vector<Word> representatives;
    std::map<Word, TensorElem> reduction;  // every word of the multiset
  };

  explicit ShuffleQuotient(std::vector<int> letter_degrees);

  const std::vector<int>& degrees() const { return deg_; }
  int nletters() const { return static_cast<int>(deg_.size()); }

  // Thread-safe lazy construction.
  const Block& block(const Word& multiset) const;
  TensorElem reduce(const Word& w) const;
  TensorElem reduce(const TensorElem& x) const;
  bool is_representative(const Word& w) const;
  int dim(const Word& multiset) const;
  // All representatives of length n, in multiset order then word order.
  std::vector<Word> representatives(int n) const;
  // Sum of block dimensions over all multisets of size n.
  long dim_total(int n) const;
  // [{"multiset":[..],"dim":k,"representatives":[[..],..]},..] for length n.
  std::string to_json(int n) const;

 private:
  std::vector<int> deg_;
  mutable std::mutex mu_;
  mutable std::map<Word, std::unique_ptr<Block>> blocks_;
};

std::vector<Word> multisets(int nletters, int n);

// Pairs of reduced classes.
using QuotPair = LinComb<std::pair<Word, Word>>;

QuotPair delta(const Word& w, const ShuffleQuotient& Q);
QuotPair delta(const TensorElem& x, const ShuffleQuotient& Q);

// A Taylor coefficient F_n is defined on classes; it is evaluated on a raw
// word through the source reduction.
using TaylorMaps = std::map<int, std::function<Vec(const Word&)>>;

class LiftedMorphism {
 public:
  LiftedMorphism(TaylorMaps maps, const ShuffleQuotient& source, const ShuffleQuotient& target)
      : maps_(std::move(maps)), src_(&source), tgt_(&target) {}
  TensorElem operator()(const Word& w) const;
  TensorElem operator()(const TensorElem& x) const;

 private:
  Vec coefficient(const Word& w) const;
  TaylorMaps maps_;
  const ShuffleQuotient* src_;
  const ShuffleQuotient* tgt_;
};

class LiftedCoderivation {
 public:
  LiftedCoderivation(TaylorMaps maps, int degree, const ShuffleQuotient& space)
      : maps_(std::move(maps)), degree_(degree), q_(&space) {}
  TensorElem operator()(const Word& w) const;
  TensorElem operator()(const TensorElem& x) const;
  int degree() const { return degree_; }

 private:
  TaylorMaps maps_;
  int degree_;
  const ShuffleQuotient* q_;
};

LiftedMorphism lift_morphism(TaylorMaps maps, const ShuffleQuotient& source, const ShuffleQuotient& target);
LiftedCoderivation lift_coderivation(TaylorMaps maps, int degree, const ShuffleQuotient& space);

// The coderivation extending m2 for a graded-commutative algebra. The
// quotient must be built on alg.shifted_degrees().
LiftedCoderivation mu(const FiniteAlgebra& alg, const ShuffleQuotient& space);

// Throws std::invalid_argument if c does not vanish on every shuffle image
// of its arity.
void check_harrison(const tensorco::HochschildCochain& c, const ShuffleQuotient& Q);
// Extends values given on representatives to all words by reduction.
tensorco::HochschildCochain extend_from_representatives(const tensorco::HochschildCochain& c,
                                                         const ShuffleQuotient& Q);
tensorco::HochschildCochain d_harrison(const tensorco::HochschildCochain& c, const FiniteAlgebra& alg,
                                       const Bimodule& mod, const ShuffleQuotient& Q);

}  // namespace gch::shuffleco
