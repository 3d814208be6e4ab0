#include "gch/chcoh.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "gch/graded.hpp"
#include "gch/symalg.hpp"

namespace gch::chcoh {

Shape shape_of(const PackMono& m) {
  Shape s;
  for (const auto& X : m) s.push_back(static_cast<int>(X.size()));
  std::sort(s.rbegin(), s.rend());
  return s;
}

int level(const PackMono& m) {
  int n = 0;
  for (const auto& X : m) n += static_cast<int>(X.size());
  return n;
}

std::string shape_str(const Shape& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + ")";
}

namespace {

// The unit as a multiple of the single degree-0 letter e: e ^ e = c e gives
// 1 = e / c. Returns (e, c).
std::pair<int, Rational> unit_letter(const polyvec::GerstAlgebra& G) {
  int e = -1;
  for (int i = 0; i < G.dim(); ++i)
    if (G.degree(i) == 0) {
      if (e >= 0) throw std::invalid_argument("degree-0 part must be spanned by the unit");
      e = i;
    }
  if (e < 0) throw std::invalid_argument("algebra has no unit");
  const Rational c = G.wedge(e, e).coeff(e);
  if (c.is_zero() || G.wedge(e, e).size() != 1) throw std::invalid_argument("algebra has no unit");
  for (int j = 0; j < G.dim(); ++j)
    if (G.wedge(e, j) != Vec(j, c)) throw std::invalid_argument("algebra has no unit");
  return {e, c};
}

}  // namespace

LetterMap constant_term(const polyvec::GerstAlgebra& G) {
  const auto [e, c] = unit_letter(G);
  LetterMap f(G.dim());
  f[e] = Vec(0, c);
  return f;
}

LetterMap unit_projection(const polyvec::GerstAlgebra& G, const polyvec::GerstAlgebra& target) {
  const auto [e, c] = unit_letter(G);
  const auto [e2, c2] = unit_letter(target);
  LetterMap f(G.dim());
  f[e] = Vec(e2, c / c2);
  return f;
}

LetterMap identity_map(const polyvec::GerstAlgebra& G) {
  LetterMap f(G.dim());
  for (int i = 0; i < G.dim(); ++i) f[i] = Vec(i);
  return f;
}

namespace {

Vec map_vec(const LetterMap& f, const Vec& v) {
  Vec out;
  for (const auto& [i, c] : v) out.add(f[i], c);
  return out;
}

Word letters_of(const PackMono& m) {
  Word w;
  for (const auto& X : m) w.insert(w.end(), X.begin(), X.end());
  std::sort(w.begin(), w.end());
  return w;
}

// Partitions of N into at most nmax parts, largest part first.
void partitions(int N, int maxpart, int parts_left, Shape& cur, std::vector<Shape>& out) {
  if (N == 0) {
    out.push_back(cur);
    return;
  }
  if (parts_left == 0) return;
  for (int p = std::min(N, maxpart); p >= 1; --p) {
    cur.push_back(p);
    partitions(N - p, p, parts_left - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Complex::Complex(const ginfty::GInfty& source, polyvec::GerstAlgebra target, LetterMap f1, int Nmax, int nmax)
    : src_(&source), tgt_(std::move(target)), f1_(std::move(f1)), Nmax_(Nmax), nmax_(nmax) {
  const auto& G = src_->space().algebra();
  if (static_cast<int>(f1_.size()) != G.dim()) throw std::invalid_argument("f1: one image per source letter");
  if (Nmax < 1 || nmax < 1) throw std::invalid_argument("truncation bounds must be positive");
  for (int a = 0; a < G.dim(); ++a)
    for (const auto& [b, c] : f1_[a])
      if (b < 0 || b >= tgt_.dim() || tgt_.degree(b) != G.degree(a))
        throw std::invalid_argument("f1 must preserve degrees");
  for (int a = 0; a < G.dim(); ++a)
    for (int b = 0; b < G.dim(); ++b) {
      if (map_vec(f1_, G.wedge(a, b)) != tgt_.wedge(f1_[a], f1_[b]))
        throw std::invalid_argument("f1 does not preserve the product");
      if (map_vec(f1_, G.bracket(a, b)) != tgt_.bracket(f1_[a], f1_[b]))
        throw std::invalid_argument("f1 does not preserve the bracket");
    }

  const Rational half(1, 2);
  const int n = G.dim(), m = tgt_.dim();
  m_left_.assign(m, std::vector<Vec>(n));
  l_left_.assign(m, std::vector<Vec>(n));
  m_right_.assign(n, std::vector<Vec>(m));
  l_right_.assign(n, std::vector<Vec>(m));
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < n; ++a) {
      const Vec eb(b);
      m_left_[b][a] = tgt_.wedge(eb, f1_[a]) * half;
      m_right_[a][b] = tgt_.wedge(f1_[a], eb) * half;
      l_left_[b][a] = tgt_.bracket(eb, f1_[a]) * (half * Rational(sign_pow(tgt_.degree(b))));
      l_right_[a][b] = tgt_.bracket(f1_[a], eb) * (half * Rational(sign_pow(G.degree(a))));
    }

  producers_.assign(n, {});
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      std::set<int> cs;
      for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        for (const auto& [c, v] : G.mu2(x, y)) cs.insert(c);
        for (const auto& [c, v] : G.bracket(x, y)) cs.insert(c);
      }
      for (int c : cs) producers_[c].emplace_back(a, b);
    }
}

std::vector<Shape> Complex::shapes(int N) const {
  std::vector<Shape> out;
  Shape cur;
  partitions(N, N, nmax_, cur, out);
  return out;
}

std::vector<PackMono> Complex::basis(const Shape& s) const {
  const auto& Q = src_->space().quotient();
  // groups of equal lengths, each filled with a nondecreasing choice of
  // representatives; odd packets may not repeat
  std::vector<std::pair<int, int>> groups;
  for (int p : s) {
    if (!groups.empty() && groups.back().first == p)
      ++groups.back().second;
    else
      groups.emplace_back(p, 1);
  }
  std::vector<std::vector<Word>> reps;
  for (const auto& [p, r] : groups) reps.push_back(Q.representatives(p));
  std::vector<PackMono> out;
  PackMono cur;
  std::function<void(std::size_t, int, std::size_t)> rec = [&](std::size_t g, int left, std::size_t from) {
    if (g == groups.size()) {
      PackMono m = cur;
      std::sort(m.begin(), m.end());
      out.push_back(std::move(m));
      return;
    }
    if (left == 0) {
      rec(g + 1, g + 1 < groups.size() ? groups[g + 1].second : 0, 0);
      return;
    }
    for (std::size_t i = from; i < reps[g].size(); ++i) {
      const bool odd_packet = odd(src_->packet_degree(reps[g][i]));
      cur.push_back(reps[g][i]);
      rec(g, left - 1, odd_packet ? i + 1 : i);
      cur.pop_back();
    }
  };
  if (!groups.empty()) rec(0, groups[0].second, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PackMono> Complex::basis(int N) const {
  std::vector<PackMono> out;
  for (const auto& s : shapes(N)) {
    auto b = basis(s);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

std::vector<PackMono> Complex::basis_on_letters(const Word& multiset) const {
  const auto& Q = src_->space().quotient();
  const int L = static_cast<int>(multiset.size());
  std::set<std::vector<Word>> splits;
  std::vector<int> block(L, 0);
  // restricted growth strings enumerate the set partitions of positions
  std::function<void(int, int)> rec = [&](int i, int nblocks) {
    if (i == L) {
      std::vector<Word> parts(nblocks);
      for (int k = 0; k < L; ++k) parts[block[k]].push_back(multiset[k]);
      for (auto& p : parts) std::sort(p.begin(), p.end());
      std::sort(parts.begin(), parts.end());
      splits.insert(std::move(parts));
      return;
    }
    for (int b = 0; b <= nblocks && b < nmax_; ++b) {
      block[i] = b;
      rec(i + 1, std::max(nblocks, b + 1));
    }
  };
  rec(0, 0);
  std::set<PackMono> out;
  for (const auto& parts : splits) {
    std::vector<const std::vector<Word>*> reps;
    for (const auto& p : parts) reps.push_back(&Q.block(p).representatives);
    PackMono cur(parts.size());
    std::function<void(std::size_t)> pick = [&](std::size_t k) {
      if (k == parts.size()) {
        PackMono m = cur;
        std::sort(m.begin(), m.end());
        for (std::size_t i = 1; i < m.size(); ++i)
          if (m[i] == m[i - 1] && odd(src_->packet_degree(m[i]))) return;
        out.insert(std::move(m));
        return;
      }
      for (const Word& w : *reps[k]) {
        cur[k] = w;
        pick(k + 1);
      }
    };
    pick(0);
  }
  return {out.begin(), out.end()};
}

long Complex::cochain_degree(const PackMono& Y, int b) const { return (tgt_.degree(b) - 2) - src_->degree(Y); }

RowTerms Complex::row(const PackMono& X, Part part) const {
  const auto& H = src_->space();
  const auto& Q = H.quotient();
  const int n = static_cast<int>(X.size()), m = tgt_.dim();
  std::vector<int> degs(n);
  for (int i = 0; i < n; ++i) degs[i] = static_cast<int>(src_->packet_degree(X[i]));
  RowTerms out;

  // Phi(M) (x) F0(a) paired by tab[b][a]. kappa is odd, so Phi passing it
  // costs (-1)^{|Phi|} there.
  auto phi_left = [&](const LinComb<PackMono>& M, int a, const std::vector<std::vector<Vec>>& tab, const Rational& c,
                      bool odd_coproduct) {
    for (const auto& [Y, cy] : M)
      for (int b = 0; b < m; ++b) {
        const Rational s = odd_coproduct ? c * cy * Rational(sign_pow(cochain_degree(Y, b))) : c * cy;
        for (const auto& [g, v] : tab[b][a]) out.add({g, {Y, b}}, s * v);
      }
  };
  // F0(a) (x) Phi(M) paired by tab[a][b], with the sign of Phi passing (a)
  auto phi_right = [&](int a, const LinComb<PackMono>& M, const std::vector<std::vector<Vec>>& tab,
                       const Rational& c, bool odd_coproduct) {
    const long da = H.degree(Word{a}) - 1;
    for (const auto& [Y, cy] : M)
      for (int b = 0; b < m; ++b) {
        const long fd = cochain_degree(Y, b);
        const Rational s = c * cy * Rational(sign_pow(fd * da + (odd_coproduct ? fd : 0)));
        for (const auto& [g, v] : tab[a][b]) out.add({g, {Y, b}}, s * v);
      }
  };

  if (part != Part::M && n >= 2) {
    for (int s = 0; s < n; ++s) {
      if (X[s].size() != 1) continue;
      PackMono rest;
      long before = 0, after = 0;
      for (int i = 0; i < n; ++i) {
        if (i == s) continue;
        rest.push_back(X[i]);
        (i < s ? before : after) += degs[i];
      }
      const LinComb<PackMono> M(rest);
      phi_left(M, X[s][0], l_left_, Rational(sign_pow(degs[s] * after)), false);
      phi_right(X[s][0], M, l_right_, Rational(sign_pow(degs[s] * before)), false);
    }
  }

  if (part != Part::Ell) {
    for (int s = 0; s < n; ++s) {
      const std::size_t L = X[s].size();
      if (L < 2) continue;
      std::vector<int> others;
      long xo = 0;
      for (int i = 0; i < n; ++i)
        if (i != s) {
          others.push_back(i);
          xo += degs[i];
        }
      std::vector<int> left_perm = others, right_perm{s};
      left_perm.push_back(s);
      right_perm.insert(right_perm.end(), others.begin(), others.end());
      const int left_sign = koszul_sign(degs, left_perm) * sign_pow(xo);
      const int right_sign = koszul_sign(degs, right_perm);
      for (std::size_t j = 1; j < L; ++j) {
        const Word u = slice(X[s], 0, j), v = slice(X[s], j, L);
        const long du = src_->packet_degree(u), dv = src_->packet_degree(v);
        const Rational cut(sign_pow(du + 1));
        // terms U (x) V and (-1)^{uv} V (x) U of the packet cobracket
        for (const auto& [A, B, c] : {std::tuple{u, v, cut}, std::tuple{v, u, cut * Rational(sign_pow(du * dv))}}) {
          if (B.size() == 1) {
            std::vector<TensorElem> f;
            for (int i : others) f.emplace_back(X[i]);
            f.push_back(Q.reduce(A));
            phi_left(src_->product(f), B[0], m_left_, c * Rational(left_sign), true);
          }
          if (A.size() == 1) {
            std::vector<TensorElem> f{Q.reduce(B)};
            for (int i : others) f.emplace_back(X[i]);
            phi_right(A[0], src_->product(f), m_right_, c * Rational(right_sign), true);
          }
        }
      }
    }
  }

  ginfty::STensor qx;
  if (part != Part::M) qx += src_->ell(X);
  if (part != Part::Ell) qx += src_->m(X);
  for (const auto& [t, c] : qx) {
    const PackMono& Y = t[0];
    for (int b = 0; b < m; ++b) out.add({b, {Y, b}}, -c * Rational(sign_pow(cochain_degree(Y, b))));
  }
  return out;
}

int Complex::level_of(const Cochain& f) const {
  int N = -1;
  for (const auto& [e, c] : f) {
    const int l = level(e.first);
    if (N >= 0 && l != N) throw std::invalid_argument("cochain mixes levels");
    N = l;
  }
  return N;
}

std::vector<Word> Complex::candidate_multisets(const Cochain& f) const {
  std::set<Word> support, out;
  for (const auto& [e, c] : f) support.insert(letters_of(e.first));
  const int n = src_->space().algebra().dim();
  for (const Word& w : support) {
    for (int a = 0; a < n; ++a) {
      if (f1_[a].is_zero()) continue;
      Word x = w;
      x.insert(std::upper_bound(x.begin(), x.end(), a), a);
      out.insert(std::move(x));
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0 && w[i] == w[i - 1]) continue;
      for (const auto& [a, b] : producers_[w[i]]) {
        Word x = w;
        x.erase(x.begin() + static_cast<long>(i));
        x.insert(std::upper_bound(x.begin(), x.end(), a), a);
        x.insert(std::upper_bound(x.begin(), x.end(), b), b);
        out.insert(std::move(x));
      }
    }
  }
  return {out.begin(), out.end()};
}

Cochain Complex::apply(const Cochain& f, Part part) const {
  const int N = level_of(f);
  if (N < 0) return {};
  if (N + 1 > Nmax_)
    throw std::length_error("truncation too small: level " + std::to_string(N + 1) + " exceeds Nmax");
  Cochain out;
  for (const Word& ms : candidate_multisets(f))
    for (const PackMono& X : basis_on_letters(ms))
      for (const auto& [key, c] : row(X, part)) {
        const Rational v = f.coeff(key.second);
        if (!v.is_zero()) out.add({X, key.first}, c * v);
      }
  return out;
}

std::vector<Shape> Complex::checked_shapes(const Cochain& f) const {
  std::set<Shape> out;
  if (level_of(f) < 0) return {};
  for (const Word& ms : candidate_multisets(f))
    for (const PackMono& X : basis_on_letters(ms)) out.insert(shape_of(X));
  return {out.begin(), out.end()};
}

SparseMat Complex::rows_matrix(const std::vector<PackMono>& rows, const std::vector<PackMono>& cols, Part part,
                               unsigned threads) const {
  const int m = tgt_.dim();
  std::map<PackMono, int> col_index;
  for (std::size_t j = 0; j < cols.size(); ++j) col_index.emplace(cols[j], static_cast<int>(j));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(rows.size(), 1)));
  // contiguous row ranges, concatenated in order
  std::vector<std::vector<Triplet>> parts(threads);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = rows.size() * w / threads; i < rows.size() * (w + 1) / threads; ++i)
        for (const auto& [key, c] : row(rows[i], part)) {
          const auto it = col_index.find(key.second.first);
          if (it == col_index.end())
            throw std::length_error("truncation too small: d reaches shape " + shape_str(shape_of(key.second.first)));
          parts[w].push_back({static_cast<int>(i) * m + key.first, it->second * m + key.second.second, c});
        }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Triplet> t;
  for (auto& p : parts) t.insert(t.end(), p.begin(), p.end());
  return SparseMat::from_triplets(static_cast<int>(rows.size()) * m, static_cast<int>(cols.size()) * m, t);
}

SparseMat Complex::assemble(int N, Part part, unsigned threads) const {
  if (N < 1 || N + 1 > Nmax_)
    throw std::length_error("assemble: levels " + std::to_string(N) + " -> " + std::to_string(N + 1) +
                            " not inside the truncation");
  return rows_matrix(basis(N + 1), basis(N), part, threads);
}

Cochain Complex::from_column(int N, const Column& x) const {
  const auto cols = basis(N);
  const int m = tgt_.dim();
  if (x.size() != cols.size() * static_cast<std::size_t>(m)) throw std::invalid_argument("from_column: size mismatch");
  Cochain f;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int b = 0; b < m; ++b) f.add({cols[j], b}, x[j * m + b]);
  return f;
}

CoboundaryResult Complex::is_coboundary(const Cochain& f, bool all_rows) const {
  const int N = level_of(f);
  CoboundaryResult res;
  if (N < 0) {
    res.coboundary = true;
    res.preimage = Cochain{};
    return res;
  }
  if (N > Nmax_) throw std::length_error("is_coboundary: level outside the truncation");
  if (N == 1) return res;  // nothing below level 1, and f is nonzero
  const int m = tgt_.dim();
  const auto cols = basis(N - 1);
  auto solve = [&](const std::vector<PackMono>& rows) {
    const SparseMat M = rows_matrix(rows, cols, Part::All);
    Column b(rows.size() * m);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int c = 0; c < m; ++c) b[i * m + c] = f.coeff({rows[i], c});
    res.rows = M.nrows();
    res.cols = M.ncols();
    return solve_in_column_span(M, b);
  };
  if (all_rows) {
    const auto x = solve(basis(N));
    if (x) {
      res.coboundary = true;
      res.preimage = from_column(N - 1, *x);
    }
    return res;
  }
  std::set<Word> support;
  for (const auto& [e, c] : f) support.insert(letters_of(e.first));
  std::set<PackMono> local;
  for (const Word& w : support)
    for (auto& X : basis_on_letters(w)) local.insert(std::move(X));
  auto x = solve({local.begin(), local.end()});
  if (!x) return res;
  Cochain g = from_column(N - 1, *x);
  if (d_ch(g) != f) {
    x = solve(basis(N));
    if (!x) return res;
    g = from_column(N - 1, *x);
  }
  res.coboundary = true;
  res.preimage = std::move(g);
  return res;
}

namespace {

// The letters of from_polyvec(d, kmax) in order.
std::vector<polyvec::Mono> polyvec_letters(int d, int count) {
  std::vector<polyvec::Mono> out;
  for (int k = 0; k <= d && static_cast<int>(out.size()) < count; ++k)
    for (auto& m : polyvec::basis(d, k)) out.push_back(std::move(m));
  if (static_cast<int>(out.size()) < count) throw std::invalid_argument("not a polyvector truncation");
  out.resize(count);
  return out;
}

using Matrix = std::vector<std::vector<Rational>>;

Matrix mul(const Matrix& a, const Matrix& b) {
  const std::size_t d = a.size();
  Matrix c(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Rational trace(const Matrix& a) {
  Rational t;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

}  // namespace

Cochain f3_111(const ginfty::GInfty& source, int d) {
  const auto& G = source.space().algebra();
  const auto monos = polyvec_letters(d, G.dim());
  std::vector<int> fields;
  std::map<int, Matrix> jac;  // (A)_{ij} = d_j a^i
  for (int a = 0; a < G.dim(); ++a) {
    if (monos[a].k() != 1) continue;
    fields.push_back(a);
    Matrix A(d, std::vector<Rational>(d));
    const int i = monos[a].dirs[0];
    for (int j = 0; j < d; ++j)
      if (monos[a].exps[j] == 1) A[i][j] = 1;
    jac[a] = std::move(A);
  }
  Cochain f;
  for (std::size_t p = 0; p < fields.size(); ++p)
    for (std::size_t q = p + 1; q < fields.size(); ++q)
      for (std::size_t r = q + 1; r < fields.size(); ++r) {
        const Matrix &A1 = jac[fields[p]], &A2 = jac[fields[q]], &A3 = jac[fields[r]];
        const Rational v = trace(mul(mul(A1, A3), A2)) - trace(mul(mul(A1, A2), A3));
        f.add({PackMono{{fields[p]}, {fields[q]}, {fields[r]}}, 0}, v);
      }
  return f;
}

Rational f3_111_value(const ginfty::GInfty& source, int, const Cochain& f, const std::vector<int>& letters) {
  std::vector<TensorElem> packets;
  for (int a : letters) packets.emplace_back(Word{a});
  Rational v;
  for (const auto& [Y, c] : source.product(packets)) v += c * f.coeff({Y, 0});
  return v;
}

PolyvecSetup polyvec_into_reals(const Truncation& t) {
  if (t.d < 1) throw std::invalid_argument("d must be positive");
  PolyvecSetup s;
  s.H = std::make_unique<genv::HSpace>(polyvec::GerstAlgebra::from_polyvec(t.d, t.kmax));
  s.G = std::make_unique<ginfty::GInfty>(*s.H);
  s.C = std::make_unique<Complex>(*s.G, polyvec::GerstAlgebra::reals(), constant_term(s.H->algebra()), t.Nmax, t.nmax);
  return s;
}

int letter_index(const polyvec::GerstAlgebra& G, const std::string& name) {
  for (int i = 0; i < G.dim(); ++i)
    if (G.name(i) == name) return i;
  throw std::invalid_argument("no letter named " + name);
}

std::string cocycle_report_json(const Truncation& t, bool* ok) {
  if (t.d < 3) throw std::invalid_argument("the cocycle needs d >= 3");
  if (t.kmax < 1) throw std::invalid_argument("the cocycle needs kmax >= 1");
  if (t.Nmax < 4 || t.nmax < 4)
    throw std::length_error("truncation too small: d f reaches shapes (2,1,1) and (1,1,1,1); need Nmax >= 4, nmax >= 4");
  const auto s = polyvec_into_reals(t);
  const auto& G = s.H->algebra();
  const Cochain f = f3_111(*s.G, t.d);
  const Rational value = f3_111_value(
      *s.G, t.d, f, {letter_index(G, "x1 d2"), letter_index(G, "x2 d3"), letter_index(G, "x3 d1")});
  const bool cocycle = s.C->is_cocycle(f);
  const CoboundaryResult cb = s.C->is_coboundary(f);
  nlohmann::json shapes = nlohmann::json::array();
  for (const auto& sh : s.C->checked_shapes(f)) shapes.push_back(sh);
  nlohmann::json j = {
      {"value", value.str()},
      {"cocycle", cocycle},
      {"coboundary", cb.coboundary},
      {"checked_shapes", shapes},
      {"system", {{"rows", cb.rows}, {"cols", cb.cols}}},
      {"truncation", {{"d", t.d}, {"kmax", t.kmax}, {"Nmax", t.Nmax}, {"nmax", t.nmax}}},
  };
  if (ok) *ok = value == Rational(1) && cocycle && !cb.coboundary;
  return j.dump(2);
}

// Morphism reconstruction.

Vec Morphism::f_of(const std::vector<TensorElem>& parts) const {
  Vec out;
  for (const auto& [Y, c] : src_->product(parts)) out.add(f_(Y), c);
  return out;
}

TensorElem Morphism::packet(const PackMono& X) const {
  TensorElem out;
  for (const auto& [b, c] : f_(X)) out.add(Word{b}, c);
  const auto& Q = tgt_->space().quotient();
  for (int t = 2; t <= level(X); ++t) {
    // f^{(x)t} of the (t-1)-fold iterated kappa of X, as words of letters
    ginfty::STensor K(std::vector<PackMono>{X});
    for (int i = 0; i + 1 < t; ++i) K = src_->apply_at(K, 0, src_->kappa_map(), 1);
    TensorElem rhs;
    for (const auto& [factors, c] : K) {
      TensorElem cur(Word{}, c);
      for (const auto& A : factors) {
        const Vec v = f_(A);
        TensorElem next;
        for (const auto& [w, cw] : cur)
          for (const auto& [b, cb] : v) {
            Word w2 = w;
            w2.push_back(b);
            next.add(std::move(w2), cw * cb);
          }
        cur = std::move(next);
        if (cur.is_zero()) break;
      }
      rhs += cur;
    }
    std::map<Word, TensorElem> by_letters;
    for (const auto& [w, c] : rhs) {
      Word ms = w;
      std::sort(ms.begin(), ms.end());
      by_letters[ms].add(w, c);
    }
    for (const auto& [ms, b] : by_letters) {
      const auto& reps = Q.block(ms).representatives;
      std::map<Word, int> row_of;
      auto row = [&](const Word& w) { return row_of.try_emplace(w, static_cast<int>(row_of.size())).first->second; };
      std::vector<Triplet> trip;
      for (std::size_t j = 0; j < reps.size(); ++j) {
        ginfty::STensor KK(std::vector<PackMono>{PackMono{reps[j]}});
        for (int i = 0; i + 1 < t; ++i) KK = tgt_->apply_at(KK, 0, tgt_->kappa_map(), 1);
        for (const auto& [factors, c] : KK) {
          Word w;
          for (const auto& A : factors) w.push_back(A[0][0]);
          trip.push_back({row(w), static_cast<int>(j), c});
        }
      }
      for (const auto& [w, c] : b) row(w);
      const auto M = SparseMat::from_triplets(static_cast<int>(row_of.size()), static_cast<int>(reps.size()), trip);
      Column rhs_col(row_of.size());
      for (const auto& [w, c] : b) rhs_col[row_of[w]] = c;
      const auto x = solve_in_column_span(M, rhs_col);
      if (!x) throw std::logic_error("Morphism::packet: no preimage under the iterated coproduct");
      for (std::size_t j = 0; j < reps.size(); ++j) out.add(reps[j], (*x)[j]);
    }
  }
  return out;
}

TensorElem Morphism::packet_tableau(const PackMono& X) const {
  const auto& H = src_->space();
  const auto& Q = H.quotient();
  const int n = static_cast<int>(X.size());
  TensorElem out;
  std::vector<unsigned> cuts(n, 0);
  std::vector<std::vector<Word>> parts(n);

  auto emit = [&](const std::vector<std::vector<std::pair<int, int>>>& columns, const std::vector<std::vector<int>>& cell_id,
                  int ncells) {
    // reading order of T is row by row; that of T' column by column, rows
    // increasing inside a column. A cut piece counts as a word unless its
    // column holds a piece of another cut factor; whole factors count as
    // packets.
    std::vector<int> perm, cell_deg(ncells);
    std::vector<std::vector<TensorElem>> ys;
    for (const auto& col : columns) {
      int cut_parts = 0;
      for (const auto& [j, k] : col) cut_parts += parts[j].size() > 1;
      std::vector<TensorElem> y;
      for (const auto& [j, k] : col) {
        const bool as_packet = parts[j].size() == 1 || cut_parts > 1;
        cell_deg[cell_id[j][k]] = static_cast<int>(H.degree(parts[j][k]) - (as_packet ? 1 : 0));
        perm.push_back(cell_id[j][k]);
        y.push_back(Q.reduce(parts[j][k]));
      }
      ys.push_back(std::move(y));
    }
    TensorElem t(Word{}, Rational(koszul_sign(cell_deg, perm)));
    for (const auto& y : ys) {
      const Vec v = f_of(y);
      TensorElem next;
      for (const auto& [w, c] : t)
        for (const auto& [b, cb] : v) {
          Word w2 = w;
          w2.push_back(b);
          next.add(std::move(w2), c * cb);
        }
      t = std::move(next);
      if (t.is_zero()) return;
    }
    out += t;
  };

  auto tableaux = [&]() {
    std::vector<int> cut_rows, whole_rows;
    std::vector<std::vector<int>> cell_id(n);
    int ncells = 0;
    for (int j = 0; j < n; ++j) {
      (parts[j].size() > 1 ? cut_rows : whole_rows).push_back(j);
      for (std::size_t k = 0; k < parts[j].size(); ++k) cell_id[j].push_back(ncells++);
    }
    if (cut_rows.empty()) {
      std::vector<std::pair<int, int>> col;
      for (int j = 0; j < n; ++j) col.emplace_back(j, 0);
      emit({col}, cell_id, ncells);
      return;
    }
    int total = 0, widest = 0;
    for (int j : cut_rows) {
      total += static_cast<int>(parts[j].size());
      widest = std::max(widest, static_cast<int>(parts[j].size()));
    }
    for (int C = widest; C <= total; ++C) {
      std::vector<unsigned> place(n, 0);
      // Rows and columns form a bipartite graph; two cut rows may meet in
      // at most one column, and no cycle may close through several.
      auto acyclic = [&](std::size_t r, unsigned mask) {
        std::vector<int> parent(cut_rows.size() + C);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        auto link = [&](int a, int b) {
          a = find(a);
          b = find(b);
          if (a == b) return false;
          parent[a] = b;
          return true;
        };
        for (std::size_t q = 0; q <= r; ++q) {
          const unsigned mq = q == r ? mask : place[cut_rows[q]];
          for (int c = 0; c < C; ++c)
            if ((mq & (1u << c)) && !link(static_cast<int>(q), static_cast<int>(cut_rows.size()) + c)) return false;
        }
        return true;
      };
      std::function<void(std::size_t, unsigned)> cut_rec = [&](std::size_t r, unsigned covered) {
        if (r == cut_rows.size()) {
          if (covered != (1u << C) - 1) return;
          std::vector<int> where(whole_rows.size(), 0);
          std::function<void(std::size_t)> whole_rec = [&](std::size_t w) {
            if (w == whole_rows.size()) {
              std::vector<std::vector<std::pair<int, int>>> columns(C);
              for (int j = 0; j < n; ++j) {
                if (parts[j].size() > 1) {
                  int k = 0;
                  for (int c = 0; c < C; ++c)
                    if (place[j] & (1u << c)) columns[c].emplace_back(j, k++);
                } else {
                  const auto it = std::find(whole_rows.begin(), whole_rows.end(), j);
                  columns[where[it - whole_rows.begin()]].emplace_back(j, 0);
                }
              }
              for (auto& col : columns) std::sort(col.begin(), col.end());
              emit(columns, cell_id, ncells);
              return;
            }
            for (int c = 0; c < C; ++c) {
              where[w] = c;
              whole_rec(w + 1);
            }
          };
          whole_rec(0);
          return;
        }
        const int j = cut_rows[r];
        for (unsigned mask = 0; mask < (1u << C); ++mask) {
          if (std::popcount(mask) != static_cast<int>(parts[j].size())) continue;
          if (!acyclic(r, mask)) continue;
          place[j] = mask;
          cut_rec(r + 1, covered | mask);
        }
      };
      cut_rec(0, 0);
    }
  };

  std::function<void(int)> choose_cuts = [&](int j) {
    if (j == n) {
      tableaux();
      return;
    }
    const std::size_t p = X[j].size();
    for (unsigned mask = 0; mask < (1u << (p - 1)); ++mask) {
      parts[j].clear();
      std::size_t start = 0;
      for (std::size_t i = 1; i < p; ++i)
        if (mask & (1u << (i - 1))) {
          parts[j].push_back(slice(X[j], start, i));
          start = i;
        }
      parts[j].push_back(slice(X[j], start, p));
      choose_cuts(j + 1);
    }
  };
  choose_cuts(0);
  return tgt_->space().reduce(out);
}

LinComb<PackMono> Morphism::operator()(const PackMono& X) const {
  LinComb<PackMono> out;
  ginfty::STensor t(std::vector<PackMono>{X});
  Rational fact(1);
  for (std::size_t r = 1; r <= X.size(); ++r) {
    fact *= Rational(static_cast<long>(r));
    for (const auto& [factors, c] : t) {
      std::vector<TensorElem> images;
      for (const auto& A : factors) images.push_back(lift_ == Lift::Tableau ? packet_tableau(A) : packet(A));
      out.add(tgt_->product(images), c / fact);
    }
    if (r < X.size()) t = src_->apply_at(t, r - 1, src_->delta_map(), 0);
  }
  return out;
}

}  // namespace gch::chcoh
