#pragma once

#include <string>
#include <vector>

#include "gch/lincomb.hpp"
#include "gch/rng.hpp"
#include "gch/tensorco.hpp"

namespace gch::polyvec {

// x^exps d_{dirs[0]} ^ ... ^ d_{dirs[k-1]}, indices 0-based, dirs strictly increasing.
struct Mono {
  std::vector<int> exps;
  std::vector<int> dirs;
  int k() const { return static_cast<int>(dirs.size()); }
  int poly_degree() const;
  bool homogeneous() const { return poly_degree() == k(); }
  friend bool operator<(const Mono& a, const Mono& b) {
    if (a.dirs.size() != b.dirs.size()) return a.dirs.size() < b.dirs.size();
    if (a.dirs != b.dirs) return a.dirs < b.dirs;
    return a.exps > b.exps;  // x1 before x2 within a direction block
  }
  friend bool operator==(const Mono& a, const Mono& b) { return a.exps == b.exps && a.dirs == b.dirs; }
};

class Polyvec {
 public:
  explicit Polyvec(int d = 0) : d_(d) {}
  Polyvec(int d, const Mono& m, Rational c = 1);

  int dim() const { return d_; }
  const LinComb<Mono>& terms() const { return terms_; }
  bool is_zero() const { return terms_.is_zero(); }
  // Tensor degree; throws on a zero or mixed-degree element.
  int k() const;
  bool homogeneous() const;

  void add(const Mono& m, const Rational& c) { terms_.add(m, c); }
  Polyvec& operator+=(const Polyvec& o);
  Polyvec& operator-=(const Polyvec& o);
  Polyvec& operator*=(const Rational& c);
  friend Polyvec operator+(Polyvec a, const Polyvec& b) { return a += b; }
  friend Polyvec operator-(Polyvec a, const Polyvec& b) { return a -= b; }
  friend Polyvec operator*(Polyvec a, const Rational& c) { return a *= c; }
  friend bool operator==(const Polyvec& a, const Polyvec& b) { return a.d_ == b.d_ && a.terms_ == b.terms_; }

  std::string str() const;

 private:
  int d_;
  LinComb<Mono> terms_;
};

// Homogeneous monomials of tensor degree k: C(d,k) C(d+k-1,k) of them.
std::vector<Mono> basis(int d, int k);
long basis_count(int d, int k);

Polyvec wedge(const Polyvec& a, const Polyvec& b);
// Schouten bracket written with odd variables xi_i = d_i:
// [P,Q] = sum_i (P <-d/dxi_i)(d/dx_i Q) - (-1)^{(p-1)(q-1)} (Q <-d/dxi_i)(d/dx_i P).
Polyvec schouten(const Polyvec& a, const Polyvec& b);
// Operations on G[1]: mu2(a,b) = (-1)^a a^b with a = k - 1; the bracket is
// the Schouten bracket itself, of degree 0 there.
Polyvec mu2(const Polyvec& a, const Polyvec& b);
Polyvec shifted_bracket(const Polyvec& a, const Polyvec& b);
// Constant term of a degree-0 element, 0 otherwise.
Rational f1(const Polyvec& a);

// "3/2 x1*x2^2 d23 - x3 d1 + 5"; indices are 1-based single digits.
Polyvec parse(const std::string& text, int d);

// Gerstenhaber algebra on a finite homogeneous basis. Tables are in the
// unshifted convention: wedge of degree 0, bracket of degree -1.
class GerstAlgebra {
 public:
  GerstAlgebra(std::vector<int> degrees, BilinearTable wedge, BilinearTable bracket, std::vector<std::string> names = {},
               bool validate = true);

  // Homogeneous polyvector fields of tensor degree <= kmax, modulo those of
  // higher degree.
  static GerstAlgebra from_polyvec(int d, int kmax);
  // Exterior algebra of a random Lie algebra of dimension lie_dim (2 or 3)
  // with its Schouten bracket, modulo wedge powers above `top`, under a
  // random degree-preserving basis change. The defaults give 3 letters.
  static GerstAlgebra sandbox(Rng& rng, int top = 1, int lie_dim = 2);
  // Same shape with zero bracket.
  static GerstAlgebra abelian_sandbox(Rng& rng, int top = 1, int lie_dim = 2);
  // Letters in degrees 0, 1, 1 with zero product and zero bracket.
  static GerstAlgebra zero_sandbox();
  // R in degree 0 with 1.1 = 1 and zero bracket.
  static GerstAlgebra reals();
  // Unit plus three degree-1 letters whose bracket fails the Jacobi
  // identity; not validated.
  static GerstAlgebra corrupted(Rng& rng);

  int dim() const { return static_cast<int>(deg_.size()); }
  int degree(int i) const { return deg_[i]; }
  const std::vector<int>& degrees() const { return deg_; }
  std::vector<int> shifted_degrees() const;
  const std::string& name(int i) const { return names_[i]; }
  const Vec& wedge(int i, int j) const { return wedge_[i][j]; }
  const Vec& bracket(int i, int j) const { return br_[i][j]; }
  Vec wedge(const Vec& a, const Vec& b) const { return bilinear(wedge_, a, b); }
  Vec bracket(const Vec& a, const Vec& b) const { return bilinear(br_, a, b); }
  Vec mu2(int i, int j) const;
  const BilinearTable& wedge_table() const { return wedge_; }
  const BilinearTable& bracket_table() const { return br_; }
  // Index of the unit, or -1.
  int unit() const;
  // The commutative algebra (G, wedge) for the shuffle constructions.
  FiniteAlgebra commutative_part() const;

  // Description of the first failed axiom, empty if none.
  std::string check() const;

 private:
  std::vector<int> deg_;
  BilinearTable wedge_, br_;
  std::vector<std::string> names_;
};

}  // namespace gch::polyvec
