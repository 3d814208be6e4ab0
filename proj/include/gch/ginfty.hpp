#pragma once

#include <functional>
#include <vector>

#include "gch/genv.hpp"

namespace gch::ginfty {

// A packet is a representative word of H, seen in H[1] with degree
// x = (sum of letter degrees) - 1. A monomial of S(H[1]) is a list of
// packets in canonical (sorted) order.
using Packet = Word;
using PackMono = std::vector<Packet>;
// Tensor products of monomials; one factor for elements of S(H[1]).
using STensor = LinComb<std::vector<PackMono>>;
using MonoMap = std::function<STensor(const PackMono&)>;

class GInfty {
 public:
  explicit GInfty(const genv::HSpace& H) : H_(&H) {}

  const genv::HSpace& space() const { return *H_; }
  long packet_degree(const Packet& X) const { return H_->degree(X) - 1; }
  long degree(const PackMono& m) const;
  long degree(const std::vector<PackMono>& t) const;

  // Product of packet classes, expanded and put in canonical order.
  LinComb<PackMono> product(const std::vector<TensorElem>& packets) const;
  STensor element(const std::vector<TensorElem>& packets) const;

  STensor big_delta(const PackMono& m) const;
  // Cobracket on one packet: sum over cuts U|V of (-1)^{u+1}(U(x)V + tau(U(x)V)).
  STensor kappa_packet(const Packet& X) const;
  // Extension to monomials: the cut packet X_s contributes X_I.A (x) B.X_J for
  // each term A (x) B of kappa(X_s) and each split I, J of the others, with
  // sign eps(x / x_I x_s x_J) (-1)^{x_I}.
  STensor kappa(const PackMono& m) const;
  // l2(X, Y) = (-1)^x [X, Y], reduced.
  TensorElem ell2(const Packet& X, const Packet& Y) const;
  STensor ell(const PackMono& m) const;
  STensor m(const PackMono& mono) const;

  // Applies a map of the given degree to tensor factor `slot`, splicing its
  // output factors in place, with the Koszul sign of passing the factors in
  // front. All tensor-of-maps signs go through here.
  STensor apply_at(const STensor& t, std::size_t slot, const MonoMap& f, int deg) const;
  // Exchanges factors slot and slot + 1 with the Koszul sign.
  STensor swap(const STensor& t, std::size_t slot) const;

  MonoMap delta_map() const;
  MonoMap kappa_map() const;
  MonoMap ell_map() const;
  MonoMap m_map() const;

 private:
  void add_product(STensor& out, std::vector<std::vector<TensorElem>> factors, const Rational& c) const;
  const genv::HSpace* H_;
};

}  // namespace gch::ginfty
