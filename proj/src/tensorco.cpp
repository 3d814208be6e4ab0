#include "gch/tensorco.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "gch/graded.hpp"
#include "gch/sparse.hpp"

namespace gch {

Vec bilinear(const BilinearTable& t, const Vec& a, const Vec& b) {
  Vec out;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) out.add(t[i][j], ci * cj);
  return out;
}

std::vector<std::vector<Rational>> invert_dense(const std::vector<std::vector<Rational>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  RrefResult rr = rref(SparseMat::from_dense(aug));
  if (static_cast<int>(rr.pivots.size()) < n || rr.pivots[n - 1] != n - 1)
    throw std::invalid_argument("invert_dense: singular matrix");
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = rr.reduced.at(i, n + j);
  return inv;
}

BilinearTable change_basis(const BilinearTable& t, const std::vector<std::vector<Rational>>& P) {
  const int n = static_cast<int>(P.size());
  auto Pinv = invert_dense(P);
  // old basis e_k = sum_l Pinv[k][l] e'_l
  auto to_new = [&](const Vec& v) {
    Vec out;
    for (const auto& [k, c] : v)
      for (int l = 0; l < n; ++l)
        if (!Pinv[k][l].is_zero()) out.add(l, c * Pinv[k][l]);
    return out;
  };
  auto row = [&](int i) {
    Vec v;
    for (int j = 0; j < n; ++j)
      if (!P[i][j].is_zero()) v.add(j, P[i][j]);
    return v;
  };
  BilinearTable out(n, std::vector<Vec>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = to_new(bilinear(t, row(i), row(j)));
  return out;
}

std::vector<std::vector<Rational>> random_graded_basis_change(Rng& rng, const std::vector<int>& deg) {
  const int n = static_cast<int>(deg.size());
  for (;;) {
    std::vector<std::vector<Rational>> P(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (deg[i] == deg[j]) P[i][j] = (i == j) ? rng.nonzero_rational(3, 2) : rng.small_rational(2, 1);
    try {
      invert_dense(P);
      return P;
    } catch (const std::invalid_argument&) {
    }
  }
}

Word concat(const Word& a, const Word& b) {
  Word w(a);
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

Word slice(const Word& w, std::size_t from, std::size_t to) { return Word(w.begin() + from, w.begin() + to); }

long word_degree(const Word& w, const std::vector<int>& deg) {
  long s = 0;
  for (int l : w) s += deg[l];
  return s;
}

// ---- FiniteAlgebra ---------------------------------------------------------

FiniteAlgebra::FiniteAlgebra(std::vector<int> degrees, BilinearTable product, bool commutative, bool validate)
    : deg_(std::move(degrees)), prod_(std::move(product)), comm_(commutative) {
  const int n = dim();
  if (static_cast<int>(prod_.size()) != n) throw std::invalid_argument("FiniteAlgebra: table size mismatch");
  for (const auto& r : prod_)
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("FiniteAlgebra: table size mismatch");
  if (validate) {
    std::string err = check();
    if (!err.empty()) throw std::invalid_argument("FiniteAlgebra: " + err);
  }
}

std::vector<int> FiniteAlgebra::shifted_degrees() const {
  std::vector<int> s(deg_);
  for (int& d : s) d -= 1;
  return s;
}

std::string FiniteAlgebra::check() const {
  const int n = dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (const auto& [k, c] : prod_[i][j]) {
        (void)c;
        if (k < 0 || k >= n) return "product index out of range";
        if (deg_[k] != deg_[i] + deg_[j]) return "product is not of degree 0";
      }
      if (comm_) {
        Vec lhs = prod_[i][j];
        Vec rhs = prod_[j][i] * Rational(sign_pow(long(deg_[i]) * deg_[j]));
        if (lhs != rhs) {
          std::ostringstream os;
          os << "not graded commutative on (" << i << "," << j << ")";
          return os.str();
        }
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec l = mul(prod_[i][j], Vec(k));
        Vec r = mul(Vec(i), prod_[j][k]);
        if (l != r) {
          std::ostringstream os;
          os << "not associative on (" << i << "," << j << "," << k << ")";
          return os.str();
        }
      }
  return {};
}

// ---- Bimodule --------------------------------------------------------------

Bimodule::Bimodule(const FiniteAlgebra& alg, std::vector<int> degrees, BilinearTable left, BilinearTable right,
                   bool validate)
    : deg_(std::move(degrees)), left_(std::move(left)), right_(std::move(right)) {
  if (validate) {
    std::string err = check(alg);
    if (!err.empty()) throw std::invalid_argument("Bimodule: " + err);
  }
}

Bimodule Bimodule::regular(const FiniteAlgebra& alg) {
  BilinearTable right(alg.dim(), std::vector<Vec>(alg.dim()));
  for (int v = 0; v < alg.dim(); ++v)
    for (int a = 0; a < alg.dim(); ++a) right[v][a] = alg.mul(v, a);
  return Bimodule(alg, alg.degrees(), alg.table(), right);
}

Vec Bimodule::left(int a, const Vec& v) const {
  Vec out;
  for (const auto& [i, c] : v) out.add(left_[a][i], c);
  return out;
}

Vec Bimodule::right(const Vec& v, int a) const {
  Vec out;
  for (const auto& [i, c] : v) out.add(right_[i][a], c);
  return out;
}

bool Bimodule::symmetric(const FiniteAlgebra& alg) const {
  for (int a = 0; a < alg.dim(); ++a)
    for (int v = 0; v < dim(); ++v)
      if (right_[v][a] != left_[a][v] * Rational(sign_pow(long(alg.degree(a)) * deg_[v]))) return false;
  return true;
}

std::string Bimodule::check(const FiniteAlgebra& alg) const {
  const int na = alg.dim(), nv = dim();
  if (static_cast<int>(left_.size()) != na || static_cast<int>(right_.size()) != nv) return "table size mismatch";
  for (int a = 0; a < na; ++a)
    for (int v = 0; v < nv; ++v) {
      for (const auto& [w, c] : left_[a][v]) {
        (void)c;
        if (deg_[w] != alg.degree(a) + deg_[v]) return "left action is not of degree 0";
      }
      for (const auto& [w, c] : right_[v][a]) {
        (void)c;
        if (deg_[w] != alg.degree(a) + deg_[v]) return "right action is not of degree 0";
      }
    }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b)
      for (int v = 0; v < nv; ++v) {
        Vec ab_v;
        for (const auto& [k, c] : alg.mul(a, b)) ab_v.add(left(k, Vec(v)), c);
        if (ab_v != left(a, left(b, Vec(v)))) return "left action not associative";
        Vec v_ab;
        for (const auto& [k, c] : alg.mul(a, b)) v_ab.add(right(Vec(v), k), c);
        if (v_ab != right(right(Vec(v), a), b)) return "right action not associative";
        if (right(left(a, Vec(v)), b) != left(a, right(Vec(v), b))) return "actions do not commute";
      }
  return {};
}

FiniteAlgebra square_zero_extension(const FiniteAlgebra& alg, const Bimodule& mod, int levels) {
  const int na = alg.dim(), nv = mod.dim();
  const int n = na + levels * nv;
  std::vector<int> deg(n);
  for (int i = 0; i < na; ++i) deg[i] = alg.degree(i);
  for (int p = 1; p <= levels; ++p)
    for (int v = 0; v < nv; ++v) deg[na + (p - 1) * nv + v] = mod.degree(v) - p;
  BilinearTable t(n, std::vector<Vec>(n));
  auto lift = [&](const Vec& v, int p) {
    Vec out;
    for (const auto& [i, c] : v) out.add(na + (p - 1) * nv + i, c);
    return out;
  };
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) t[i][j] = alg.mul(i, j);
  for (int p = 1; p <= levels; ++p)
    for (int a = 0; a < na; ++a)
      for (int v = 0; v < nv; ++v) {
        int idx = na + (p - 1) * nv + v;
        t[a][idx] = lift(mod.left_table()[a][v], p);
        t[idx][a] = lift(mod.right_table()[v][a], p);
      }
  return FiniteAlgebra(deg, t, false);
}

namespace tensorco {

TensorPair deconcat(const Word& w) {
  TensorPair out;
  for (std::size_t k = 1; k < w.size(); ++k) out.add({slice(w, 0, k), slice(w, k, w.size())}, 1);
  return out;
}

TensorPair deconcat(const TensorElem& x) {
  TensorPair out;
  for (const auto& [w, c] : x) out.add(deconcat(w), c);
  return out;
}

Vec m2(int a, int b, const FiniteAlgebra& alg) {
  return alg.mul(a, b) * Rational(sign_pow(alg.shifted_degree(a)));
}

TensorElem Coderivation::operator()(const Word& w) const {
  TensorElem out;
  const std::size_t p = w.size();
  for (const auto& [k, q] : fam_.maps) {
    if (k < 1 || static_cast<std::size_t>(k) > p) continue;
    for (std::size_t j = 0; j + k <= p; ++j) {
      Vec v = q(slice(w, j, j + k));
      if (v.is_zero()) continue;
      Word pre = slice(w, 0, j), post = slice(w, j + k, p);
      for (const auto& [l, c] : v) {
        Word nw = pre;
        nw.push_back(l);
        nw.insert(nw.end(), post.begin(), post.end());
        out.add(nw, c * Rational(sign_pow(long(fam_.degree) * word_degree(pre, fam_.letter_degrees))));
      }
    }
  }
  return out;
}

TensorElem Coderivation::operator()(const TensorElem& x) const {
  TensorElem out;
  for (const auto& [w, c] : x) out.add((*this)(w), c);
  return out;
}

Coderivation coderivation_lift_tensor(TaylorFamily fam) { return Coderivation(std::move(fam)); }

Coderivation m_lift(const FiniteAlgebra& alg) {
  TaylorFamily fam;
  fam.degree = 1;
  fam.letter_degrees = alg.shifted_degrees();
  fam.maps[2] = [alg](const Word& w) { return m2(w[0], w[1], alg); };
  return Coderivation(std::move(fam));
}

Vec HochschildCochain::operator()(const Word& w) const {
  if (static_cast<int>(w.size()) != arity) return {};
  auto it = values.find(w);
  return it == values.end() ? Vec() : it->second;
}

void check_cochain_degree(const HochschildCochain& c, const FiniteAlgebra& alg, const Bimodule& mod) {
  const auto sdeg = alg.shifted_degrees();
  for (const auto& [w, v] : c.values) {
    if (static_cast<int>(w.size()) != c.arity) throw std::invalid_argument("Hochschild cochain: wrong arity");
    for (const auto& [i, x] : v) {
      (void)x;
      if (mod.degree(i) - 1 != c.degree + word_degree(w, sdeg))
        throw std::invalid_argument("Hochschild cochain: value degree does not match the declared cochain degree");
    }
  }
}

std::vector<Word> all_words(int nletters, int length) {
  std::vector<Word> out;
  Word w(length, 0);
  if (length == 0) return {w};
  for (;;) {
    out.push_back(w);
    int i = length - 1;
    while (i >= 0 && w[i] == nletters - 1) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
  return out;
}

HochschildCochain d_hochschild(const HochschildCochain& c, const FiniteAlgebra& alg, const Bimodule& mod) {
  check_cochain_degree(c, alg, mod);
  const auto sdeg = alg.shifted_degrees();
  const int n = c.arity + 1;
  const int cd = c.degree;
  Coderivation m = m_lift(alg);
  HochschildCochain out;
  out.arity = n;
  out.degree = cd + 1;
  for (const Word& w : all_words(alg.dim(), n)) {
    Vec val;
    // C(a_1..a_{n-1}).a_n and a_1.C(a_2..a_n)
    Word head = slice(w, 0, n - 1), tail = slice(w, 1, n);
    val.add(mod.right(c(head), w[n - 1]), Rational(sign_pow(cd + word_degree(head, sdeg) + 1)));
    val.add(mod.left(w[0], c(tail)), Rational(sign_pow(long(cd) * sdeg[w[0]] + sdeg[w[0]] + 1)));
    // internal products through the coderivation m
    for (const auto& [u, k] : m(w)) val.add(c(u), k * Rational(sign_pow(cd)));
    if (!val.is_zero()) out.values[w] = val;
  }
  return out;
}

namespace {

FiniteAlgebra base_algebra(int which) {
  using T = BilinearTable;
  auto table = [](int n) { return T(n, std::vector<Vec>(n)); };
  switch (which) {
    case 0: {  // upper triangular 2x2, E12 odd: e0=E11, e1=E22, e2=E12
      T t = table(3);
      t[0][0] = Vec(0);
      t[1][1] = Vec(1);
      t[0][2] = Vec(2);
      t[2][1] = Vec(2);
      return FiniteAlgebra({0, 0, 1}, t, false);
    }
    case 1: {  // upper triangular 2x2, ungraded
      T t = table(3);
      t[0][0] = Vec(0);
      t[1][1] = Vec(1);
      t[0][2] = Vec(2);
      t[2][1] = Vec(2);
      return FiniteAlgebra({0, 0, 0}, t, false);
    }
    case 2: {  // x odd, y = x.x of degree 2
      T t = table(2);
      t[0][0] = Vec(1);
      return FiniteAlgebra({1, 2}, t, false);
    }
    case 3: {  // k[x]/(x^3)
      T t = table(3);
      t[0][0] = Vec(0);
      t[0][1] = t[1][0] = Vec(1);
      t[0][2] = t[2][0] = t[1][1] = Vec(2);
      return FiniteAlgebra({0, 0, 0}, t, true);
    }
    case 4: {  // exterior algebra on one odd generator, times k
      T t = table(3);
      t[0][0] = Vec(0);
      t[0][1] = t[1][0] = Vec(1);
      t[2][2] = Vec(2);
      return FiniteAlgebra({0, 1, 0}, t, true);
    }
    case 5: {  // k[x]/(x^2) with x of degree 2
      T t = table(2);
      t[0][0] = Vec(0);
      t[0][1] = t[1][0] = Vec(1);
      return FiniteAlgebra({0, 2}, t, true);
    }
    default: {  // non-unital: x.x = y
      T t = table(2);
      t[0][0] = Vec(1);
      return FiniteAlgebra({0, 0}, t, true);
    }
  }
}

}  // namespace

FiniteAlgebra random_algebra(Rng& rng, bool commutative) {
  static const int comm[] = {3, 4, 5, 6};
  static const int any[] = {0, 1, 2, 3, 4, 5, 6};
  int which = commutative ? comm[rng.below(4)] : any[rng.below(7)];
  FiniteAlgebra base = base_algebra(which);
  auto P = random_graded_basis_change(rng, base.degrees());
  return FiniteAlgebra(base.degrees(), change_basis(base.table(), P), base.commutative());
}

HochschildCochain random_hochschild_cochain(Rng& rng, const FiniteAlgebra& alg, const Bimodule& mod, int arity) {
  const auto sdeg = alg.shifted_degrees();
  auto words = all_words(alg.dim(), arity);
  // pick a degree that admits values on at least one word
  std::vector<int> options;
  for (const Word& w : words)
    for (int v = 0; v < mod.dim(); ++v) options.push_back(mod.degree(v) - 1 - static_cast<int>(word_degree(w, sdeg)));
  HochschildCochain c;
  c.arity = arity;
  c.degree = options[rng.below(options.size())];
  for (const Word& w : words) {
    Vec val;
    for (int v = 0; v < mod.dim(); ++v)
      if (mod.degree(v) - 1 == c.degree + word_degree(w, sdeg) && rng.coin()) val.add(v, rng.nonzero_rational());
    if (!val.is_zero()) c.values[w] = val;
  }
  return c;
}

}  // namespace tensorco
}  // namespace gch
