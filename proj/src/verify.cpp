#include "gch/verify.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "gch/chcoh.hpp"
#include "gch/graded.hpp"
#include "gch/shuffleco.hpp"
#include "gch/symco.hpp"
#include "gch/tensorco.hpp"

namespace gch::verify {
namespace {

using chcoh::Morphism;
using genv::HSpace;
using ginfty::GInfty;
using ginfty::PackMono;
using ginfty::STensor;
using polyvec::GerstAlgebra;
using shuffleco::QuotPair;
using shuffleco::ShuffleQuotient;
using tensorco::HochschildCochain;

enum class Verdict { Pass, Fail, Skip };
struct Trial {
  Verdict v;
  std::string input;
};
using TrialFn = std::function<Trial(Rng&, int)>;

struct Check {
  std::string suite;
  std::string identity;
  std::function<TrialFn()> make;  // builds the fixtures, run on the worker
  bool once = false;              // deterministic, a single instance
};

template <class F>
Trial verdict(bool good, F&& describe) {
  return good ? Trial{Verdict::Pass, {}} : Trial{Verdict::Fail, describe()};
}
const Trial kSkip{Verdict::Skip, {}};

std::uint64_t mix(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h ^ (seed * 0x9E3779B97F4A7C15ull);
}

std::string ints_str(const std::vector<int>& w) {
  std::ostringstream s;
  s << '[';
  for (std::size_t i = 0; i < w.size(); ++i) s << (i ? " " : "") << w[i];
  s << ']';
  return s.str();
}

std::string packet_str(const GerstAlgebra& G, const Word& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + G.name(w[i]);
  return s + ")";
}

std::string mono_str(const GerstAlgebra& G, const PackMono& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? " . " : "") + packet_str(G, m[i]);
  return s;
}

std::string elem_str(const GerstAlgebra& G, const TensorElem& x) {
  std::string s;
  for (const auto& [w, c] : x) s += (s.empty() ? "" : " + ") + c.str() + " " + packet_str(G, w);
  return s.empty() ? "0" : s;
}

std::string words_str(const std::vector<Word>& ws, const std::vector<int>& deg) {
  std::string s = "degrees " + ints_str(deg) + ", words";
  for (const auto& w : ws) s += " " + ints_str(w);
  return s;
}

Word random_word(Rng& rng, int nletters, int len) {
  Word w(len);
  for (int& x : w) x = static_cast<int>(rng.below(nletters));
  return w;
}

std::vector<int> random_degrees(Rng& rng, int n) {
  std::vector<int> d(n);
  for (int& x : d) x = rng.range(-1, 2);
  return d;
}

// ---------------------------------------------------------------- shuffle

using Triple = std::tuple<Word, Word, Word>;
using TriSum = LinComb<Triple>;

QuotPair flip(const QuotPair& x, const std::vector<int>& deg) {
  QuotPair out;
  for (const auto& [p, c] : x)
    out.add({p.second, p.first}, c * Rational(sign_pow(word_degree(p.first, deg) * word_degree(p.second, deg))));
  return out;
}

TriSum cyclic_delta_twice(const Word& w, const ShuffleQuotient& Q) {
  const auto& deg = Q.degrees();
  TriSum out;
  for (const auto& [p, c] : shuffleco::delta(w, Q))
    for (const auto& [q, c2] : shuffleco::delta(p.first, Q)) {
      const Word &a = q.first, &b = q.second, &d = p.second;
      const std::vector<int> degs = {int(word_degree(a, deg)), int(word_degree(b, deg)), int(word_degree(d, deg))};
      const Rational k = c * c2;
      out.add({a, b, d}, k);
      out.add({d, a, b}, k * Rational(koszul_sign(degs, {2, 0, 1})));
      out.add({b, d, a}, k * Rational(koszul_sign(degs, {1, 2, 0})));
    }
  return out;
}

TrialFn on_random_alphabet(std::function<Trial(Rng&, const std::vector<int>&)> body) {
  return [body](Rng& rng, int) { return body(rng, random_degrees(rng, 3)); };
}

std::vector<Check> shuffle_checks() {
  std::vector<Check> c;
  c.push_back({"shuffle", "bat graded commutative", [] {
                 return on_random_alphabet([](Rng& rng, const std::vector<int>& deg) {
                   const Word a = random_word(rng, 3, rng.range(1, 3)), b = random_word(rng, 3, rng.range(1, 3));
                   const Rational s(sign_pow(word_degree(a, deg) * word_degree(b, deg)));
                   return verdict(shuffleco::bat(a, b, deg) == shuffleco::bat(b, a, deg) * s,
                                  [&] { return words_str({a, b}, deg); });
                 });
               }});
  c.push_back({"shuffle", "bat associative", [] {
                 return on_random_alphabet([](Rng& rng, const std::vector<int>& deg) {
                   const Word x = random_word(rng, 3, rng.range(1, 2)), y = random_word(rng, 3, rng.range(1, 2)),
                              z = random_word(rng, 3, rng.range(1, 2));
                   const TensorElem l = shuffleco::bat(shuffleco::bat(TensorElem(x), TensorElem(y), deg), TensorElem(z), deg);
                   const TensorElem r = shuffleco::bat(TensorElem(x), shuffleco::bat(TensorElem(y), TensorElem(z), deg), deg);
                   const TensorElem t = shuffleco::bat3(int(x.size()), int(y.size()), int(z.size()), x, y, z, deg);
                   return verdict(l == r && t == l, [&] { return words_str({x, y, z}, deg); });
                 });
               }});
  c.push_back({"shuffle", "shuffle images vanish in the quotient", [] {
                 return on_random_alphabet([](Rng& rng, const std::vector<int>& deg) {
                   ShuffleQuotient Q(deg);
                   const Word a = random_word(rng, 3, rng.range(1, 3)), b = random_word(rng, 3, rng.range(1, 2));
                   return verdict(Q.reduce(shuffleco::bat(a, b, deg)).is_zero(), [&] { return words_str({a, b}, deg); });
                 });
               }});
  c.push_back({"shuffle", "delta coantisymmetric", [] {
                 return on_random_alphabet([](Rng& rng, const std::vector<int>& deg) {
                   ShuffleQuotient Q(deg);
                   const Word w = random_word(rng, 3, rng.range(1, 4));
                   const QuotPair d = shuffleco::delta(w, Q);
                   return verdict(flip(d, deg) == d * Rational(-1), [&] { return words_str({w}, deg); });
                 });
               }});
  c.push_back({"shuffle", "delta coJacobi", [] {
                 return on_random_alphabet([](Rng& rng, const std::vector<int>& deg) {
                   ShuffleQuotient Q(deg);
                   const Word w = random_word(rng, 3, rng.range(1, 4));
                   return verdict(cyclic_delta_twice(w, Q).is_zero(), [&] { return words_str({w}, deg); });
                 });
               }});
  c.push_back({"shuffle", "delta kills shuffle images", [] {
                 return on_random_alphabet([](Rng& rng, const std::vector<int>& deg) {
                   ShuffleQuotient Q(deg);
                   const Word a = random_word(rng, 3, rng.range(1, 2)), b = random_word(rng, 3, rng.range(1, 2));
                   return verdict(shuffleco::delta(shuffleco::bat(a, b, deg), Q).is_zero(),
                                  [&] { return words_str({a, b}, deg); });
                 });
               }});
  c.push_back({"shuffle", "mu squares to zero", [] {
                 return TrialFn([](Rng& rng, int) {
                   const FiniteAlgebra a = tensorco::random_algebra(rng, true);
                   ShuffleQuotient Q(a.shifted_degrees());
                   const auto m = shuffleco::mu(a, Q);
                   const Word w = random_word(rng, a.dim(), rng.range(1, 4));
                   return verdict(m(m(w)).is_zero(), [&] { return words_str({w}, a.shifted_degrees()); });
                 });
               }});
  c.push_back({"shuffle", "Harrison cobord squares to zero", [] {
                 return TrialFn([](Rng& rng, int) {
                   const FiniteAlgebra a = tensorco::random_algebra(rng, true);
                   const Bimodule v = Bimodule::regular(a);
                   ShuffleQuotient Q(a.shifted_degrees());
                   const int arity = rng.range(1, 3);
                   const HochschildCochain raw = tensorco::random_hochschild_cochain(rng, a, v, arity);
                   HochschildCochain reps;
                   reps.arity = arity;
                   reps.degree = raw.degree;
                   for (const auto& [w, val] : raw.values)
                     if (Q.is_representative(w)) reps.values[w] = val;
                   const HochschildCochain c0 = shuffleco::extend_from_representatives(reps, Q);
                   const HochschildCochain dc = shuffleco::d_harrison(c0, a, v, Q);
                   return verdict(shuffleco::d_harrison(dc, a, v, Q).values.empty(), [&] {
                     return "arity " + std::to_string(arity) + " cochain of degree " + std::to_string(raw.degree) +
                            " on an algebra of dimension " + std::to_string(a.dim());
                   });
                 });
               }});
  return c;
}

// --------------------------------------------------------------- tensorco

using WordTriple = std::tuple<Word, Word, Word>;

// (f (x) g)(u (x) v) = (-1)^{|g||u|} f(u) (x) g(v)
template <class F, class G>
TensorPair tensor_maps(const TensorPair& x, F f, int gdeg, G g, const std::vector<int>& deg) {
  TensorPair out;
  for (const auto& [uv, c] : x) {
    const TensorElem fu = f(uv.first), gv = g(uv.second);
    const Rational s = c * Rational(sign_pow(long(gdeg) * word_degree(uv.first, deg)));
    for (const auto& [a, ca] : fu)
      for (const auto& [b, cb] : gv) out.add({a, b}, s * ca * cb);
  }
  return out;
}

std::vector<Check> tensorco_checks() {
  std::vector<Check> c;
  c.push_back({"tensorco", "deconcatenation coassociative", [] {
                 return TrialFn([](Rng& rng, int) {
                   const Word w = random_word(rng, 3, rng.range(1, 5));
                   LinComb<WordTriple> l, r;
                   for (const auto& [uv, k] : tensorco::deconcat(w)) {
                     for (const auto& [ab, k2] : tensorco::deconcat(uv.first)) l.add({ab.first, ab.second, uv.second}, k * k2);
                     for (const auto& [ab, k2] : tensorco::deconcat(uv.second)) r.add({uv.first, ab.first, ab.second}, k * k2);
                   }
                   return verdict(l == r, [&] { return "word " + ints_str(w); });
                 });
               }});
  c.push_back({"tensorco", "m is a coderivation", [] {
                 return TrialFn([](Rng& rng, int) {
                   const FiniteAlgebra a = tensorco::random_algebra(rng, false);
                   const auto deg = a.shifted_degrees();
                   const auto m = tensorco::m_lift(a);
                   const Word w = random_word(rng, a.dim(), rng.range(1, 5));
                   auto id = [](const Word& u) { return TensorElem(u); };
                   auto mm = [&](const Word& u) { return m(u); };
                   const TensorPair lhs = tensor_maps(tensorco::deconcat(w), mm, 0, id, deg) +
                                          tensor_maps(tensorco::deconcat(w), id, 1, mm, deg);
                   return verdict(lhs == tensorco::deconcat(m(w)), [&] { return words_str({w}, deg); });
                 });
               }});
  c.push_back({"tensorco", "m squares to zero", [] {
                 return TrialFn([](Rng& rng, int) {
                   const FiniteAlgebra a = tensorco::random_algebra(rng, false);
                   const auto m = tensorco::m_lift(a);
                   const Word w = random_word(rng, a.dim(), rng.range(1, 5));
                   return verdict(m(m(w)).is_zero(), [&] { return words_str({w}, a.shifted_degrees()); });
                 });
               }});
  c.push_back({"tensorco", "Hochschild cobord squares to zero", [] {
                 return TrialFn([](Rng& rng, int) {
                   const FiniteAlgebra a = tensorco::random_algebra(rng, false);
                   const Bimodule v = Bimodule::regular(a);
                   const int arity = rng.range(1, 3);
                   const HochschildCochain c0 = tensorco::random_hochschild_cochain(rng, a, v, arity);
                   const auto dd = tensorco::d_hochschild(tensorco::d_hochschild(c0, a, v), a, v);
                   return verdict(dd.values.empty(), [&] {
                     return "arity " + std::to_string(arity) + " on an algebra of dimension " + std::to_string(a.dim());
                   });
                 });
               }});
  return c;
}

// ------------------------------------------------------------------ symco

Word random_sym_word(Rng& rng, int len, const std::vector<int>& sdeg) {
  for (;; --len) {
    const auto words = symco::sym_words(sdeg, len);
    if (!words.empty()) return words[rng.below(words.size())];
  }
}

symco::LieData nonabelian2() {
  BilinearTable t(2, std::vector<Vec>(2));
  t[0][1] = Vec(0);
  t[1][0] = Vec(0, -1);
  return symco::LieData({0, 0}, t);
}

std::vector<Check> symco_checks() {
  std::vector<Check> c;
  c.push_back({"symco", "coproduct cocommutative", [] {
                 return on_random_alphabet([](Rng& rng, const std::vector<int>& sdeg) {
                   const Word w = random_sym_word(rng, rng.range(1, 5), sdeg);
                   const SymPair d = symco::sym_coproduct(w, sdeg);
                   SymPair flipped;
                   for (const auto& [p, k] : d)
                     flipped.add({p.second, p.first},
                                 k * Rational(sign_pow(word_degree(p.first, sdeg) * word_degree(p.second, sdeg))));
                   return verdict(flipped == d, [&] { return words_str({w}, sdeg); });
                 });
               }});
  c.push_back({"symco", "coproduct coassociative", [] {
                 return on_random_alphabet([](Rng& rng, const std::vector<int>& sdeg) {
                   const Word w = random_sym_word(rng, rng.range(1, 5), sdeg);
                   LinComb<WordTriple> l, r;
                   for (const auto& [p, k] : symco::sym_coproduct(w, sdeg)) {
                     for (const auto& [q, k2] : symco::sym_coproduct(p.first, sdeg)) l.add({q.first, q.second, p.second}, k * k2);
                     for (const auto& [q, k2] : symco::sym_coproduct(p.second, sdeg)) r.add({p.first, q.first, q.second}, k * k2);
                   }
                   return verdict(l == r, [&] { return words_str({w}, sdeg); });
                 });
               }});
  c.push_back({"symco", "ell squares to zero", [] {
                 return TrialFn([](Rng& rng, int) {
                   const auto l = symco::ell_lift(symco::random_lie(rng));
                   const Word w = random_sym_word(rng, rng.range(1, 4), l.letter_degrees());
                   return verdict(l(l(w)).is_zero(), [&] { return words_str({w}, l.letter_degrees()); });
                 });
               }});
  c.push_back({"symco", "ell is a coderivation", [] {
                 return TrialFn([](Rng& rng, int) {
                   const auto l = symco::ell_lift(symco::random_lie(rng));
                   const auto& sdeg = l.letter_degrees();
                   const Word w = random_sym_word(rng, rng.range(1, 4), sdeg);
                   SymPair lhs;
                   for (const auto& [p, k] : symco::sym_coproduct(w, sdeg)) {
                     for (const auto& [u, cu] : l(p.first)) lhs.add({u, p.second}, k * cu);
                     const Rational s(sign_pow(word_degree(p.first, sdeg)));
                     for (const auto& [u, cu] : l(p.second)) lhs.add({p.first, u}, s * k * cu);
                   }
                   return verdict(lhs == symco::sym_coproduct(l(w), sdeg), [&] { return words_str({w}, sdeg); });
                 });
               }});
  c.push_back({"symco", "Chevalley cobord squares to zero", [] {
                 return TrialFn([](Rng& rng, int) {
                   const auto g = symco::random_lie(rng);
                   const auto v = g.has_differential() ? symco::LieModule::trivial(g, {0, 1}) : symco::adjoint_module(g);
                   const auto h = symco::LieData::module_extension(g, v, {-1, 0, 1});
                   const auto phi = symco::LieMorphism::inclusion(g.dim());
                   const auto F = symco::random_lcochain(rng, g, h, rng.range(1, 2));
                   const auto dF = symco::d_chevalley(F, g, h, phi);
                   return verdict(dF.degree == F.degree + 1 && symco::d_chevalley(dF, g, h, phi).values.empty(), [&] {
                     return "degree " + std::to_string(F.degree) + " cochain, Lie algebra of dimension " +
                            std::to_string(g.dim());
                   });
                 });
               }});
  c.push_back({"symco", "Chevalley cobord recovers the textbook cobord", [] {
                 return TrialFn([](Rng& rng, int) {
                   const auto g = symco::random_lie(rng, false);
                   const auto v = rng.coin() ? symco::LieModule::trivial(g, {0}) : symco::adjoint_module(g);
                   const int n = rng.range(1, 2);
                   const auto h = symco::LieData::module_extension(g, v, {n - 1});
                   symco::ClassicalCochain cc;
                   cc.arity = n;
                   const std::vector<int> ones(g.dim(), 1);
                   for (const Word& w : symco::sym_words(ones, n)) {
                     Vec val;
                     for (int k = 0; k < static_cast<int>(v.degrees.size()); ++k) val.add(k, rng.small_rational());
                     if (!val.is_zero()) cc.values[w] = val;
                   }
                   if (cc.values.empty()) return kSkip;
                   const auto lhs = symco::d_chevalley(symco::transport(cc, h, g.dim()), g, h,
                                                       symco::LieMorphism::inclusion(g.dim()));
                   auto rhs = symco::transport(symco::d_classical(cc, g, v), h, g.dim());
                   for (auto& [w, val] : rhs.values) val *= Rational(sign_pow(n + 1));
                   return verdict(lhs.values == rhs.values, [&] {
                     return "arity " + std::to_string(n) + " cochain, Lie algebra of dimension " + std::to_string(g.dim());
                   });
                 });
               }});
  c.push_back({"symco", "cobord on the nonabelian plane",
               [] {
                 return TrialFn([](Rng&, int) {
                   // [e1, e2] = e1, trivial coefficients: d e1* = -e1* ^ e2*, d e2* = 0
                   const auto g = nonabelian2();
                   const auto v = symco::LieModule::trivial(g, {0});
                   symco::ClassicalCochain e1, e2;
                   e1.values[Word{0}] = Vec(0);
                   e2.values[Word{1}] = Vec(0);
                   const bool ok = symco::d_classical(e1, g, v)(Word{0, 1}) == Vec(0, -1) &&
                                   symco::d_classical(e2, g, v)(Word{0, 1}).is_zero();
                   return verdict(ok, [] { return std::string("d e1*(e1, e2) or d e2*(e1, e2)"); });
                 });
               },
               true});
  return c;
}

// ------------------------------------------------------------------- genv

struct Algebras {
  std::vector<std::string> labels;
  std::vector<std::unique_ptr<HSpace>> H;
  std::vector<std::unique_ptr<GInfty>> S;
  void add(std::string label, GerstAlgebra G) {
    labels.push_back(std::move(label));
    H.push_back(std::make_unique<HSpace>(std::move(G)));
    S.push_back(std::make_unique<GInfty>(*H.back()));
  }
};

// Two polyvector and two sandbox instances; trial i uses instance i mod 4.
std::shared_ptr<Algebras> standard_algebras() {
  auto a = std::make_shared<Algebras>();
  Rng rng(7);
  a->add("polyvec d=2 k<=2", GerstAlgebra::from_polyvec(2, 2));
  a->add("sandbox 3 letters", GerstAlgebra::sandbox(rng));
  a->add("polyvec d=3 k<=2", GerstAlgebra::from_polyvec(3, 2));
  a->add("sandbox 7 letters", GerstAlgebra::sandbox(rng, 2, 3));
  return a;
}

std::shared_ptr<Algebras> corrupted_algebras() {
  auto a = std::make_shared<Algebras>();
  Rng rng(2);
  a->add("corrupted sandbox", GerstAlgebra::corrupted(rng));
  return a;
}

// Homogeneous element: up to three words of the same length and degree.
TensorElem random_helem(Rng& rng, const HSpace& H, int len) {
  const int n = H.algebra().dim();
  const Word w = random_word(rng, n, len);
  TensorElem x(w, rng.nonzero_rational());
  for (int t = 0; t < 10 && x.size() < 3; ++t) {
    const Word v = random_word(rng, n, len);
    if (H.degree(v) == H.degree(w) && x.coeff(v).is_zero()) x.add(v, rng.nonzero_rational());
  }
  return x;
}

long hdeg(const HSpace& H, const TensorElem& x) { return H.degree(x.begin()->first); }

std::string helems_str(const Algebras& A, std::size_t k, const std::vector<TensorElem>& xs) {
  std::string s = A.labels[k] + ":";
  for (const auto& x : xs) s += " [" + elem_str(A.H[k]->algebra(), x) + "]";
  return s;
}

using HBody = std::function<Trial(Rng&, const Algebras&, std::size_t)>;

std::function<TrialFn()> over(std::function<std::shared_ptr<Algebras>()> algebras, HBody body) {
  return [algebras, body] {
    auto A = algebras();
    return TrialFn([A, body](Rng& rng, int i) { return body(rng, *A, static_cast<std::size_t>(i) % A->H.size()); });
  };
}

std::vector<Check> genv_checks(const std::string& suite, std::function<std::shared_ptr<Algebras>()> algebras) {
  std::vector<Check> c;
  c.push_back({suite, "bracket antisymmetric", over(algebras, [](Rng& rng, const Algebras& A, std::size_t k) {
                 const HSpace& H = *A.H[k];
                 const auto a = random_helem(rng, H, rng.range(1, 3)), b = random_helem(rng, H, rng.range(1, 3));
                 const long x = hdeg(H, a), y = hdeg(H, b);
                 return verdict(H.bracket(a, b) == H.bracket(b, a) * Rational(-sign_pow(x * y)),
                                [&] { return helems_str(A, k, {a, b}); });
               })});
  c.push_back({suite, "bracket Jacobi", over(algebras, [](Rng& rng, const Algebras& A, std::size_t k) {
                 const HSpace& H = *A.H[k];
                 const auto a = random_helem(rng, H, rng.range(1, 2)), b = random_helem(rng, H, rng.range(1, 2)),
                            e = random_helem(rng, H, rng.range(1, 2));
                 const long x = hdeg(H, a), y = hdeg(H, b), z = hdeg(H, e);
                 TensorElem jac = H.bracket(H.bracket(a, b), e) * Rational(sign_pow(x * z));
                 jac += H.bracket(H.bracket(b, e), a) * Rational(sign_pow(y * x));
                 jac += H.bracket(H.bracket(e, a), b) * Rational(sign_pow(z * y));
                 return verdict(jac.is_zero(), [&] { return helems_str(A, k, {a, b, e}); });
               })});
  c.push_back({suite, "mu is a derivation of the bracket", over(algebras, [](Rng& rng, const Algebras& A, std::size_t k) {
                 const HSpace& H = *A.H[k];
                 const auto a = random_helem(rng, H, rng.range(1, 3)), b = random_helem(rng, H, rng.range(1, 3));
                 const TensorElem lhs = H.mu(H.bracket(a, b));
                 const TensorElem rhs = H.bracket(H.mu(a), b) + H.bracket(a, H.mu(b)) * Rational(sign_pow(hdeg(H, a)));
                 return verdict(lhs == rhs, [&] { return helems_str(A, k, {a, b}); });
               })});
  c.push_back({suite, "mu squares to zero", over(algebras, [](Rng& rng, const Algebras& A, std::size_t k) {
                 const HSpace& H = *A.H[k];
                 const auto a = random_helem(rng, H, rng.range(1, 4));
                 return verdict(H.mu(H.mu(a)).is_zero(), [&] { return helems_str(A, k, {a}); });
               })});
  c.push_back({suite, "bracket well defined on classes", over(algebras, [](Rng& rng, const Algebras& A, std::size_t k) {
                 const HSpace& H = *A.H[k];
                 const auto a = random_helem(rng, H, rng.range(1, 3)), b = random_helem(rng, H, rng.range(1, 3));
                 return verdict(H.bracket(a, b) == H.bracket(H.reduce(a), H.reduce(b)),
                                [&] { return helems_str(A, k, {a, b}); });
               })});
  return c;
}

// ----------------------------------------------------------------- ginfty

// Product of n random reduced packets of length <= maxlen; zero if every
// draw collapses.
STensor random_element(Rng& rng, const GInfty& S, int n, int maxlen = 2) {
  for (int tries = 0; tries < 50; ++tries) {
    std::vector<TensorElem> packets;
    for (int i = 0; i < n; ++i)
      packets.push_back(S.space().reduce(TensorElem(random_word(rng, S.space().algebra().dim(), rng.range(1, maxlen)))));
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

std::string selem_str(const Algebras& A, std::size_t k, const STensor& x) {
  std::string s = A.labels[k] + ": ";
  int shown = 0;
  for (const auto& [t, c] : x) {
    if (shown++ == 3) return s + " + ...";
    s += (shown > 1 ? " + " : "") + c.str() + " " + mono_str(A.H[k]->algebra(), t.at(0));
  }
  return s;
}

using SBody = std::function<bool(const GInfty&, const STensor&)>;

std::function<TrialFn()> over_monomials(SBody body) {
  return over(standard_algebras, [body](Rng& rng, const Algebras& A, std::size_t k) {
    const GInfty& S = *A.S[k];
    const STensor x = random_element(rng, S, rng.range(1, 3));
    if (x.is_zero()) return kSkip;
    return verdict(body(S, x), [&] { return selem_str(A, k, x); });
  });
}

std::vector<Check> ginfty_checks() {
  std::vector<Check> c;
  c.push_back({"ginfty", "Delta coassociative and cocommutative", over_monomials([](const GInfty& S, const STensor& x) {
                 const STensor d = lift(x, S.delta_map());
                 return S.apply_at(d, 0, S.delta_map(), 0) == S.apply_at(d, 1, S.delta_map(), 0) && S.swap(d, 0) == d;
               })});
  c.push_back({"ginfty", "kappa cosymmetric", over_monomials([](const GInfty& S, const STensor& x) {
                 const STensor k = lift(x, S.kappa_map());
                 return S.swap(k, 0) == k;
               })});
  c.push_back({"ginfty", "kappa coJacobi", over_monomials([](const GInfty& S, const STensor& x) {
                 const STensor kk = S.apply_at(S.apply_at(x, 0, S.kappa_map(), 1), 0, S.kappa_map(), 1);
                 STensor sum = kk;
                 sum += S.swap(S.swap(kk, 1), 0);
                 sum += S.swap(S.swap(kk, 0), 1);
                 return sum.is_zero();
               })});
  c.push_back({"ginfty", "kappa coLeibniz", over_monomials([](const GInfty& S, const STensor& x) {
                 const STensor k = S.apply_at(x, 0, S.kappa_map(), 1);
                 const STensor d = S.apply_at(x, 0, S.delta_map(), 0);
                 const STensor rhs = S.apply_at(d, 0, S.kappa_map(), 1) + S.swap(S.apply_at(d, 1, S.kappa_map(), 1), 0);
                 return S.apply_at(k, 1, S.delta_map(), 0) == rhs;
               })});
  for (const bool with_m : {true, false})
    c.push_back({"ginfty", with_m ? "m anticommutes with kappa" : "ell anticommutes with kappa",
                 over_monomials([with_m](const GInfty& S, const STensor& x) {
                   const auto f = with_m ? S.m_map() : S.ell_map();
                   const STensor k = S.apply_at(x, 0, S.kappa_map(), 1);
                   const STensor lhs = S.apply_at(k, 1, f, 1) + S.apply_at(k, 0, f, 1);
                   return lhs == S.apply_at(S.apply_at(x, 0, f, 1), 0, S.kappa_map(), 1) * Rational(-1);
                 })});
  c.push_back({"ginfty", "ell and m are coderivations of Delta", over_monomials([](const GInfty& S, const STensor& x) {
                 for (const auto& f : {S.ell_map(), S.m_map()}) {
                   const STensor lhs = S.apply_at(S.apply_at(x, 0, f, 1), 0, S.delta_map(), 0);
                   const STensor d = S.apply_at(x, 0, S.delta_map(), 0);
                   if (lhs != S.apply_at(d, 0, f, 1) + S.apply_at(d, 1, f, 1)) return false;
                 }
                 return true;
               })});
  c.push_back({"ginfty", "(ell + m) squares to zero", over_monomials([](const GInfty& S, const STensor& x) {
                 const ginfty::MonoMap q = [&S](const PackMono& m) { return S.ell(m) + S.m(m); };
                 return S.apply_at(S.apply_at(x, 0, q, 1), 0, q, 1).is_zero();
               })});
  return c;
}

// ------------------------------------------------------------------ chcoh

struct ComplexSetup {
  std::unique_ptr<HSpace> H;
  std::unique_ptr<GInfty> S;
  std::unique_ptr<chcoh::Complex> C;
  std::string label;
};

std::shared_ptr<std::vector<ComplexSetup>> complex_setups() {
  auto out = std::make_shared<std::vector<ComplexSetup>>();
  auto add = [&](std::string label, GerstAlgebra src, GerstAlgebra tgt, chcoh::LetterMap f1, int Nmax, int nmax) {
    ComplexSetup s;
    s.label = std::move(label);
    s.H = std::make_unique<HSpace>(std::move(src));
    s.S = std::make_unique<GInfty>(*s.H);
    s.C = std::make_unique<chcoh::Complex>(*s.S, std::move(tgt), std::move(f1), Nmax, nmax);
    out->push_back(std::move(s));
  };
  Rng rng(3);
  const auto sb = GerstAlgebra::sandbox(rng);
  add("sandbox identity", sb, sb, chcoh::identity_map(sb), 4, 4);
  const auto P = GerstAlgebra::from_polyvec(2, 2);
  add("polyvec d=2 into R", P, GerstAlgebra::reals(), chcoh::constant_term(P), 4, 3);
  add("polyvec d=2 into sandbox", P, sb, chcoh::unit_projection(P, sb), 4, 3);
  return out;
}

chcoh::Cochain random_cochain(Rng& rng, const chcoh::Complex& C, int N, int terms) {
  const auto basis = C.basis(N);
  chcoh::Cochain g;
  for (int i = 0; i < terms; ++i)
    g.add({basis[rng.below(basis.size())], static_cast<int>(rng.below(C.target().dim()))}, rng.nonzero_rational());
  return g;
}

std::string cochain_str(const ComplexSetup& s, const chcoh::Cochain& g) {
  std::string out = s.label + ":";
  for (const auto& [e, c] : g) out += " " + c.str() + " [" + mono_str(s.H->algebra(), e.first) + " -> " + s.C->target().name(e.second) + "]";
  return out;
}

using CBody = std::function<bool(const chcoh::Complex&, const chcoh::Cochain&)>;

std::function<TrialFn()> over_cochains(CBody body) {
  return [body] {
    auto setups = complex_setups();
    return TrialFn([setups, body](Rng& rng, int i) {
      const ComplexSetup& s = (*setups)[static_cast<std::size_t>(i) % setups->size()];
      const auto g = random_cochain(rng, *s.C, rng.range(1, 2), rng.range(1, 3));
      return verdict(body(*s.C, g), [&] { return cochain_str(s, g); });
    });
  };
}

// Random degree-preserving family on levels <= max_level, memoised.
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
    if (chcoh::level(Y) <= max_level)
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

std::vector<Check> chcoh_checks() {
  std::vector<Check> c;
  c.push_back({"chcoh", "d_CH squares to zero", over_cochains([](const chcoh::Complex& C, const chcoh::Cochain& g) {
                 return C.d_ch(C.d_ch(g)).is_zero();
               })});
  c.push_back({"chcoh", "d_CH is d_m + d_ell", over_cochains([](const chcoh::Complex& C, const chcoh::Cochain& g) {
                 return C.d_ch(g) == C.d_m(g) + C.d_ell(g);
               })});
  c.push_back({"chcoh", "lifted morphism is a comorphism", [] {
                 auto A = std::make_shared<Algebras>();
                 Rng pick(9);
                 A->add("polyvec d=2 k<=2", GerstAlgebra::from_polyvec(2, 2));
                 A->add("sandbox 7 letters", GerstAlgebra::sandbox(pick, 2, 3));
                 return TrialFn([A](Rng& rng, int i) {
                   const std::size_t k = static_cast<std::size_t>(i) % A->H.size();
                   const GInfty& S = *A->S[k];
                   static const std::vector<std::vector<int>> shapes = {{1}, {2}, {1, 1}, {2, 1}, {2, 2}};
                   const PackMono X = random_mono(rng, S, shapes[rng.below(shapes.size())]);
                   if (X.empty()) return kSkip;
                   // levels 1 and 2 of the family: f_1, f_2 and f_11
                   RandomTaylor f{Rng(rng.next()), &S, &A->H[k]->algebra(), 2, {}};
                   const Morphism F(S, S, std::ref(f), chcoh::Lift::Tableau);
                   const auto FX = F(X);
                   const bool ok = tensor_image(F, S.big_delta(X)) == after(FX, S.delta_map()) &&
                                   tensor_image(F, S.kappa(X)) == after(FX, S.kappa_map());
                   return verdict(ok, [&] { return A->labels[k] + ": " + mono_str(A->H[k]->algebra(), X); });
                 });
               }});
  c.push_back({"chcoh", "f3_111 on (x1 d2)(x2 d3)(x3 d1) is 1",
               [] {
                 return TrialFn([](Rng&, int) {
                   HSpace H(GerstAlgebra::from_polyvec(3, 1));
                   GInfty S(H);
                   const auto f = chcoh::f3_111(S, 3);
                   const auto& G = H.algebra();
                   const Rational v = chcoh::f3_111_value(
                       S, 3, f,
                       {chcoh::letter_index(G, "x1 d2"), chcoh::letter_index(G, "x2 d3"), chcoh::letter_index(G, "x3 d1")});
                   return verdict(v == Rational(1), [&] { return "value " + v.str(); });
                 });
               },
               true});
  return c;
}

std::vector<Check> checks_for(const std::string& suite) {
  if (suite == "shuffle") return shuffle_checks();
  if (suite == "tensorco") return tensorco_checks();
  if (suite == "symco") return symco_checks();
  if (suite == "genv") return genv_checks("genv", standard_algebras);
  if (suite == "ginfty") return ginfty_checks();
  if (suite == "chcoh") return chcoh_checks();
  if (suite == "corrupted") return genv_checks("corrupted", corrupted_algebras);
  if (suite == "all") {
    std::vector<Check> all;
    for (const auto& s : suite_names())
      for (auto& c : checks_for(s)) all.push_back(std::move(c));
    return all;
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

Outcome run_check(const Check& c, const Options& opt) {
  Outcome out;
  out.suite = c.suite;
  out.identity = c.identity;
  Rng rng(mix(opt.seed, c.suite + "/" + c.identity));
  const TrialFn f = c.make();
  const int want = c.once ? 1 : opt.trials;
  for (int attempt = 0; out.instances < want && attempt < 4 * want; ++attempt) {
    Trial t;
    try {
      t = f(rng, out.instances);
    } catch (const std::exception& e) {
      t = {Verdict::Fail, std::string("exception: ") + e.what()};
    }
    if (t.v == Verdict::Skip) continue;
    ++out.instances;
    if (t.v == Verdict::Fail && out.failures++ == 0) out.counterexample = t.input;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"shuffle", "tensorco", "symco", "genv", "ginfty", "chcoh"};
  return names;
}

bool known_suite(const std::string& name) {
  if (name == "all" || name == "corrupted") return true;
  for (const auto& s : suite_names())
    if (s == name) return true;
  return false;
}

std::vector<Outcome> run(const std::string& suite, const Options& opt) {
  if (opt.trials < 1) throw std::invalid_argument("trials must be positive");
  const std::vector<Check> checks = checks_for(suite);
  std::vector<Outcome> out(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < checks.size();) out[i] = run_check(checks[i], opt);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), checks.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

bool all_pass(const std::vector<Outcome>& r) {
  for (const auto& o : r)
    if (!o.pass()) return false;
  return !r.empty();
}

std::string report_text(const std::vector<Outcome>& r, const std::string& suite, const Options& opt) {
  std::ostringstream s;
  s << "verify suite=" << suite << " seed=" << opt.seed << " trials=" << opt.trials << "\n";
  int failed = 0;
  for (const auto& o : r) {
    failed += !o.pass();
    s << (o.pass() ? "PASS " : "FAIL ") << o.suite << "/" << o.identity << " " << (o.instances - o.failures) << "/"
      << o.instances;
    if (o.failures) s << " first counterexample: " << o.counterexample;
    s << "\n";
  }
  if (failed)
    s << "result: FAIL (" << failed << " of " << r.size() << " identities)\n";
  else
    s << "result: PASS (" << r.size() << " identities)\n";
  return s.str();
}

std::string report_json(const std::vector<Outcome>& r, const std::string& suite, const Options& opt) {
  nlohmann::json results = nlohmann::json::array();
  for (const auto& o : r)
    results.push_back({{"suite", o.suite},
                       {"identity", o.identity},
                       {"instances", o.instances},
                       {"failures", o.failures},
                       {"pass", o.pass()},
                       {"counterexample", o.failures ? nlohmann::json(o.counterexample) : nlohmann::json(nullptr)}});
  const nlohmann::json j = {
      {"suite", suite}, {"seed", opt.seed}, {"trials", opt.trials}, {"pass", all_pass(r)}, {"results", results}};
  return j.dump(2) + "\n";
}

}  // namespace gch::verify
