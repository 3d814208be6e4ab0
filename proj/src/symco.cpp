#include "gch/symco.hpp"

#include <climits>
#include <sstream>
#include <stdexcept>

#include "gch/graded.hpp"
#include "gch/symalg.hpp"

namespace gch::symco {

int canonicalize(Word& w, const std::vector<int>& sdeg) {
  return sym_canonicalize(w, [&](int l) { return sdeg[l]; });
}

SymElem sym_word(Word w, const std::vector<int>& sdeg, const Rational& c) {
  int s = canonicalize(w, sdeg);
  SymElem out;
  if (s != 0) out.add(std::move(w), c * Rational(s));
  return out;
}

namespace {

std::vector<int> degrees_of(const Word& w, const std::vector<int>& sdeg) {
  std::vector<int> d(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) d[i] = sdeg[w[i]];
  return d;
}

Word pick(const Word& w, const std::vector<int>& idx) {
  Word out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(w[i]);
  return out;
}

}  // namespace

SymPair sym_coproduct(const Word& w, const std::vector<int>& sdeg) {
  SymPair out;
  for_each_bipartition(degrees_of(w, sdeg), [&](const std::vector<int>& I, const std::vector<int>& J, int s) {
    out.add({pick(w, I), pick(w, J)}, Rational(s));
  });
  return out;
}

SymPair sym_coproduct(const SymElem& x, const std::vector<int>& sdeg) {
  SymPair out;
  for (const auto& [w, c] : x) out.add(sym_coproduct(w, sdeg), c);
  return out;
}

std::vector<Word> sym_words(const std::vector<int>& sdeg, int n) {
  std::vector<Word> out;
  const int m = static_cast<int>(sdeg.size());
  if (n <= 0) return out;
  Word w(n, 0);
  // non-decreasing sequences, strict at odd letters
  auto rec = [&](auto&& self, int pos, int from) -> void {
    if (pos == n) {
      out.push_back(w);
      return;
    }
    for (int l = from; l < m; ++l) {
      w[pos] = l;
      self(self, pos + 1, odd(sdeg[l]) ? l + 1 : l);
    }
  };
  rec(rec, 0, 0);
  return out;
}

// ---- LieData -----------------------------------------------------------------

LieData::LieData(std::vector<int> degrees, BilinearTable bracket, std::vector<Vec> differential, bool validate)
    : deg_(std::move(degrees)), br_(std::move(bracket)), d_(std::move(differential)) {
  const int n = dim();
  if (static_cast<int>(br_.size()) != n) throw std::invalid_argument("LieData: table size mismatch");
  for (const auto& r : br_)
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("LieData: table size mismatch");
  if (!d_.empty() && static_cast<int>(d_.size()) != n) throw std::invalid_argument("LieData: differential size");
  bool nonzero = false;
  for (const Vec& v : d_) nonzero = nonzero || !v.is_zero();
  if (!nonzero) d_.clear();
  if (validate) {
    std::string err = check();
    if (!err.empty()) throw std::invalid_argument("LieData: " + err);
  }
}

std::vector<int> LieData::shifted_degrees() const {
  std::vector<int> s(deg_);
  for (int& d : s) d -= 1;
  return s;
}

Vec LieData::d(const Vec& a) const {
  Vec out;
  if (d_.empty()) return out;
  for (const auto& [i, c] : a) out.add(d_[i], c);
  return out;
}

std::string LieData::check() const {
  const int n = dim();
  auto e = [](int i) { return Vec(i); };
  std::ostringstream os;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (const auto& [k, c] : br_[i][j]) {
        (void)c;
        if (k < 0 || k >= n) return "bracket index out of range";
        if (deg_[k] != deg_[i] + deg_[j]) return "bracket is not of degree 0";
      }
      if (br_[i][j] != br_[j][i] * Rational(-sign_pow(long(deg_[i]) * deg_[j]))) {
        os << "antisymmetry fails at (" << i << "," << j << ")";
        return os.str();
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // [X,[Y,Z]] = [[X,Y],Z] + (-1)^{xy} [Y,[X,Z]]
        Vec lhs = bracket(e(i), br_[j][k]);
        Vec rhs = bracket(br_[i][j], e(k)) + bracket(e(j), br_[i][k]) * Rational(sign_pow(long(deg_[i]) * deg_[j]));
        if (lhs != rhs) {
          os << "Jacobi fails at (" << i << "," << j << "," << k << ")";
          return os.str();
        }
      }
  if (d_.empty()) return "";
  for (int i = 0; i < n; ++i) {
    for (const auto& [k, c] : d_[i]) {
      (void)c;
      if (k < 0 || k >= n) return "differential index out of range";
      if (deg_[k] != deg_[i] + 1) return "differential is not of degree 1";
    }
    if (!d(d_[i]).is_zero()) return "d o d != 0";
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec lhs = d(br_[i][j]);
      Vec rhs = bracket(d_[i], e(j)) + bracket(e(i), d_[j]) * Rational(sign_pow(deg_[i]));
      if (lhs != rhs) {
        os << "d is not a derivation at (" << i << "," << j << ")";
        return os.str();
      }
    }
  return "";
}

LieModule LieModule::trivial(const LieData& g, std::vector<int> degrees) {
  LieModule m;
  m.degrees = std::move(degrees);
  m.action.assign(g.dim(), std::vector<Vec>(m.degrees.size()));
  return m;
}

std::string LieModule::check(const LieData& g) const {
  const int n = g.dim(), m = static_cast<int>(degrees.size());
  if (static_cast<int>(action.size()) != n) return "action table size mismatch";
  auto act = [&](int x, const Vec& v) {
    Vec out;
    for (const auto& [j, c] : v) out.add(action[x][j], c);
    return out;
  };
  auto act_vec = [&](const Vec& x, const Vec& v) {
    Vec out;
    for (const auto& [i, c] : x) out.add(act(i, v), c);
    return out;
  };
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(action[x].size()) != m) return "action table size mismatch";
    for (int v = 0; v < m; ++v)
      for (const auto& [k, c] : action[x][v]) {
        (void)c;
        if (k < 0 || k >= m) return "action index out of range";
        if (degrees[k] != g.degree(x) + degrees[v]) return "action is not of degree 0";
      }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int v = 0; v < m; ++v) {
        Vec lhs = act_vec(g.bracket(x, y), Vec(v));
        Vec rhs = act(x, action[y][v]) - act(y, action[x][v]) * Rational(sign_pow(long(g.degree(x)) * g.degree(y)));
        if (lhs != rhs) return "action is not a representation";
      }
  return "";
}

LieData LieData::module_extension(const LieData& g, const LieModule& mod, const std::vector<int>& levels) {
  std::string err = mod.check(g);
  if (!err.empty()) throw std::invalid_argument("module_extension: " + err);
  const int n = g.dim(), m = static_cast<int>(mod.degrees.size());
  const int total = n + m * static_cast<int>(levels.size());
  std::vector<int> deg(g.degrees());
  for (int p : levels)
    for (int v = 0; v < m; ++v) deg.push_back(mod.degrees[v] - p);
  BilinearTable br(total, std::vector<Vec>(total));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) br[i][j] = g.bracket(i, j);
  for (std::size_t L = 0; L < levels.size(); ++L) {
    const int off = n + m * static_cast<int>(L);
    for (int x = 0; x < n; ++x)
      for (int v = 0; v < m; ++v) {
        Vec xv;
        for (const auto& [k, c] : mod.action[x][v]) xv.add(off + k, c);
        br[x][off + v] = xv;
        br[off + v][x] = xv * Rational(-sign_pow(long(deg[x]) * deg[off + v]));
      }
  }
  std::vector<Vec> d;
  if (g.has_differential()) {
    d.assign(total, Vec());
    for (int i = 0; i < n; ++i) d[i] = g.d(i);
  }
  return LieData(std::move(deg), std::move(br), std::move(d));
}

// ---- Ell ---------------------------------------------------------------------

Vec Ell::l2(int a, int b) const { return g_.bracket(a, b) * Rational(sign_pow(sdeg_[a])); }

SymElem Ell::operator()(const Word& w) const {
  SymElem out;
  const int n = static_cast<int>(w.size());
  if (g_.has_differential()) {
    long before = 0;
    for (int j = 0; j < n; ++j) {
      const Rational s(sign_pow(before));
      for (const auto& [k, c] : g_.d(w[j])) {
        Word u(w);
        u[j] = k;
        out.add(sym_word(std::move(u), sdeg_, s * c));
      }
      before += sdeg_[w[j]];
    }
  }
  if (n < 2) return out;
  auto degs = degrees_of(w, sdeg_);
  std::vector<int> perm;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      perm = {i, j};
      Word rest;
      for (int k = 0; k < n; ++k)
        if (k != i && k != j) {
          perm.push_back(k);
          rest.push_back(w[k]);
        }
      const Rational eps(koszul_sign(degs, perm));
      for (const auto& [k, c] : l2(w[i], w[j])) {
        Word u{k};
        u.insert(u.end(), rest.begin(), rest.end());
        out.add(sym_word(std::move(u), sdeg_, eps * c));
      }
    }
  return out;
}

SymElem Ell::operator()(const SymElem& x) const {
  SymElem out;
  for (const auto& [w, c] : x) out.add((*this)(w), c);
  return out;
}

Ell ell_lift(const LieData& g) { return Ell(g); }

// ---- cochains ----------------------------------------------------------------

Vec LCochain::operator()(const Word& w, const std::vector<int>& sdeg) const {
  Word u(w);
  int s = canonicalize(u, sdeg);
  if (s == 0) return Vec();
  auto it = values.find(u);
  if (it == values.end()) return Vec();
  return it->second * Rational(s);
}

int LCochain::min_arity() const {
  int a = INT_MAX;
  for (const auto& [w, v] : values) a = std::min(a, static_cast<int>(w.size()));
  return values.empty() ? 0 : a;
}

int LCochain::max_arity() const {
  int a = 0;
  for (const auto& [w, v] : values) a = std::max(a, static_cast<int>(w.size()));
  return a;
}

LieMorphism LieMorphism::inclusion(int gdim) {
  LieMorphism phi;
  for (int i = 0; i < gdim; ++i) phi.images.push_back(Vec(i));
  return phi;
}

std::string LieMorphism::check(const LieData& g, const LieData& h) const {
  if (static_cast<int>(images.size()) != g.dim()) return "morphism size mismatch";
  auto map = [&](const Vec& v) {
    Vec out;
    for (const auto& [i, c] : v) out.add(images[i], c);
    return out;
  };
  for (int i = 0; i < g.dim(); ++i) {
    for (const auto& [k, c] : images[i]) {
      (void)c;
      if (k < 0 || k >= h.dim() || h.degree(k) != g.degree(i)) return "morphism is not of degree 0";
    }
    if (map(g.d(i)) != h.d(images[i])) return "morphism does not commute with d";
    for (int j = 0; j < g.dim(); ++j)
      if (map(g.bracket(i, j)) != h.bracket(images[i], images[j])) return "morphism does not preserve brackets";
  }
  return "";
}

void check_lcochain_degree(const LCochain& F, const LieData& g, const LieData& h) {
  const auto gs = g.shifted_degrees(), hs = h.shifted_degrees();
  for (const auto& [w, v] : F.values)
    for (const auto& [k, c] : v) {
      (void)c;
      if (k < 0 || k >= h.dim() || hs[k] - word_degree(w, gs) != F.degree)
        throw std::invalid_argument("cochain value has the wrong degree");
    }
}

LCochain d_chevalley(const LCochain& F, const LieData& g, const LieData& h, const LieMorphism& phi) {
  std::string err = phi.check(g, h);
  if (!err.empty()) throw std::invalid_argument("d_chevalley: " + err);
  check_lcochain_degree(F, g, h);
  const auto gs = g.shifted_degrees(), hs = h.shifted_degrees();
  const Ell lg(g), lh(h);
  const int f = F.degree;
  LCochain out;
  out.degree = f + 1;
  if (F.values.empty()) return out;
  auto l2h = [&](const Vec& a, const Vec& b) {
    Vec r;
    for (const auto& [i, ci] : a)
      for (const auto& [j, cj] : b) r.add(lh.l2(i, j), ci * cj);
    return r;
  };
  const Rational outer(-sign_pow(f));
  for (int n = std::max(1, F.min_arity()); n <= F.max_arity() + 1; ++n)
    for (const Word& w : sym_words(gs, n)) {
      Vec val = h.d(F(w, gs));
      if (n >= 2) {
        auto degs = degrees_of(w, gs);
        for (int i = 0; i < n; ++i) {
          std::vector<int> perm{i};
          Word rest;
          for (int k = 0; k < n; ++k)
            if (k != i) {
              perm.push_back(k);
              rest.push_back(w[k]);
            }
          Vec Fr = F(rest, gs);
          if (Fr.is_zero()) continue;
          // Koszul sign of F passing X_i in (phi (x) F) o Delta
          Rational s(koszul_sign(degs, perm) * sign_pow(long(f) * gs[w[i]]));
          val.add(l2h(phi.images[w[i]], Fr), s);
        }
      }
      for (const auto& [u, c] : lg(w)) val.add(F(u, gs), outer * c);
      if (!val.is_zero()) out.values[w] = val;
    }
  return out;
}

// ---- classical Chevalley-Eilenberg ---------------------------------------------

Vec ClassicalCochain::operator()(const Word& args) const {
  Word u(args);
  int s = sym_canonicalize(u, [](int) { return 1; });
  if (s == 0) return Vec();
  auto it = values.find(u);
  return it == values.end() ? Vec() : it->second * Rational(s);
}

ClassicalCochain d_classical(const ClassicalCochain& c, const LieData& g, const LieModule& mod) {
  const int n = c.arity;
  ClassicalCochain out;
  out.arity = n + 1;
  std::vector<int> ones(g.dim(), 1);
  for (const Word& x : sym_words(ones, n + 1)) {
    Vec val;
    // sum_i (-1)^i X_i . C(.. i^ ..) + sum_{i<j} (-1)^{i+j} C([X_i,X_j], .. i^ j^ ..)
    for (int i = 0; i <= n; ++i) {
      Word rest;
      for (int k = 0; k <= n; ++k)
        if (k != i) rest.push_back(x[k]);
      for (const auto& [v, cv] : c(rest))
        for (const auto& [k, ck] : mod.action[x[i]][v]) val.add(k, Rational(sign_pow(i)) * cv * ck);
    }
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        Word rest;
        for (int k = 0; k <= n; ++k)
          if (k != i && k != j) rest.push_back(x[k]);
        for (const auto& [b, cb] : g.bracket(x[i], x[j])) {
          Word args{b};
          args.insert(args.end(), rest.begin(), rest.end());
          val.add(c(args), Rational(sign_pow(i + j)) * cb);
        }
      }
    if (!val.is_zero()) out.values[x] = val;
  }
  return out;
}

LCochain transport(const ClassicalCochain& c, const LieData& h, int offset) {
  const int n = c.arity;
  const Rational s(sign_pow(long(n) * (n - 1) / 2));
  const auto hs = h.shifted_degrees();
  LCochain out;
  out.degree = 0;
  bool first = true;
  for (const auto& [w, v] : c.values) {
    Vec val;
    for (const auto& [k, ck] : v) {
      val.add(offset + k, s * ck);
      if (first) {
        out.degree = hs[offset + k] + n;  // inputs all have shifted degree -1
        first = false;
      }
    }
    out.values[w] = val;
  }
  return out;
}

// ---- random data ---------------------------------------------------------------

namespace {

struct LieSeed {
  std::vector<int> deg;
  BilinearTable br;
  std::vector<Vec> d;
};

LieSeed base_lie(int which) {
  auto table = [](int n) { return BilinearTable(n, std::vector<Vec>(n)); };
  LieSeed s;
  switch (which) {
    case 0:  // [e0,e1] = e0
      s.deg = {0, 0};
      s.br = table(2);
      s.br[0][1] = Vec(0);
      s.br[1][0] = Vec(0, -1);
      break;
    case 1:  // sl2: h, e, f
      s.deg = {0, 0, 0};
      s.br = table(3);
      s.br[0][1] = Vec(1, 2);
      s.br[1][0] = Vec(1, -2);
      s.br[0][2] = Vec(2, -2);
      s.br[2][0] = Vec(2, 2);
      s.br[1][2] = Vec(0);
      s.br[2][1] = Vec(0, -1);
      break;
    case 2:  // Heisenberg
      s.deg = {0, 0, 0};
      s.br = table(3);
      s.br[0][1] = Vec(2);
      s.br[1][0] = Vec(2, -1);
      break;
    case 3:  // abelian, d e0 = e1
      s.deg = {0, 1};
      s.br = table(2);
      s.d = {Vec(1), Vec()};
      break;
    case 4:  // x, y odd, z: [x,y] = y, [x,z] = 2z, [y,y] = z
      s.deg = {0, 1, 2};
      s.br = table(3);
      s.br[0][1] = Vec(1);
      s.br[1][0] = Vec(1, -1);
      s.br[0][2] = Vec(2, 2);
      s.br[2][0] = Vec(2, -2);
      s.br[1][1] = Vec(2);
      break;
    default:  // a, b, c odd: [a,b] = b, [a,c] = c, d b = c
      s.deg = {0, 0, 1};
      s.br = table(3);
      s.br[0][1] = Vec(1);
      s.br[1][0] = Vec(1, -1);
      s.br[0][2] = Vec(2);
      s.br[2][0] = Vec(2, -1);
      s.d = {Vec(), Vec(2), Vec()};
      break;
  }
  return s;
}

std::vector<Vec> change_basis_linear(const std::vector<Vec>& d, const std::vector<std::vector<Rational>>& P) {
  if (d.empty()) return d;
  const int n = static_cast<int>(P.size());
  auto Pinv = invert_dense(P);
  std::vector<Vec> out(n);
  for (int i = 0; i < n; ++i) {
    Vec img;
    for (int j = 0; j < n; ++j)
      if (!P[i][j].is_zero()) img.add(d[j], P[i][j]);
    for (const auto& [k, c] : img)
      for (int l = 0; l < n; ++l)
        if (!Pinv[k][l].is_zero()) out[i].add(l, c * Pinv[k][l]);
  }
  return out;
}

}  // namespace

LieData random_lie(Rng& rng, bool allow_graded) {
  int which = static_cast<int>(rng.below(allow_graded ? 6 : 3));
  LieSeed s = base_lie(which);
  auto P = random_graded_basis_change(rng, s.deg);
  return LieData(s.deg, change_basis(s.br, P), change_basis_linear(s.d, P));
}

LieModule adjoint_module(const LieData& g) {
  LieModule m;
  m.degrees = g.degrees();
  m.action = g.table();
  return m;
}

LCochain random_lcochain(Rng& rng, const LieData& g, const LieData& h, int arity) {
  const auto gs = g.shifted_degrees(), hs = h.shifted_degrees();
  auto words = sym_words(gs, arity);
  std::vector<int> options;
  for (const Word& w : words)
    for (int k = 0; k < h.dim(); ++k) options.push_back(hs[k] - static_cast<int>(word_degree(w, gs)));
  LCochain F;
  if (options.empty()) return F;
  F.degree = options[rng.below(options.size())];
  for (const Word& w : words) {
    Vec val;
    for (int k = 0; k < h.dim(); ++k)
      if (hs[k] - word_degree(w, gs) == F.degree && rng.coin()) val.add(k, rng.nonzero_rational());
    if (!val.is_zero()) F.values[w] = val;
  }
  return F;
}

}  // namespace gch::symco
