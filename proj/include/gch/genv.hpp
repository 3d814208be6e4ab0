#pragma once

#include <memory>

#include "gch/polyvec.hpp"
#include "gch/shuffleco.hpp"

namespace gch::genv {

// H: tensor words over the letters of a Gerstenhaber algebra seen in G[1],
// modulo shuffle images, with the bracket extended over shuffles and the
// codifferential mu built from mu2.
class HSpace {
 public:
  explicit HSpace(polyvec::GerstAlgebra G);
  HSpace(const HSpace&) = delete;
  HSpace& operator=(const HSpace&) = delete;

  const polyvec::GerstAlgebra& algebra() const { return G_; }
  const shuffleco::ShuffleQuotient& quotient() const { return *Q_; }
  const std::vector<int>& letter_degrees() const { return Q_->degrees(); }
  long degree(const Word& w) const { return word_degree(w, letter_degrees()); }

  // Sum over shuffles of a and b and adjacent positions k, k+1 holding a
  // letter of a followed by a letter of b, of the signed shuffled word with
  // those two letters replaced by their bracket. No reduction.
  TensorElem bracket_words(const Word& a, const Word& b) const;
  TensorElem bracket_raw(const TensorElem& a, const TensorElem& b) const;
  // Bracket of classes, reduced.
  TensorElem bracket(const TensorElem& a, const TensorElem& b) const;
  TensorElem mu(const TensorElem& a) const;
  TensorElem reduce(const TensorElem& a) const { return Q_->reduce(a); }

 private:
  polyvec::GerstAlgebra G_;
  std::unique_ptr<shuffleco::ShuffleQuotient> Q_;
  std::unique_ptr<shuffleco::LiftedCoderivation> mu_;
};

}  // namespace gch::genv
