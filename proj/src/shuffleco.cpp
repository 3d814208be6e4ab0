#include "gch/shuffleco.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "gch/graded.hpp"
#include "gch/sparse.hpp"

namespace gch::shuffleco {

namespace {

std::vector<int> degrees_of(const Word& w, const std::vector<int>& deg) {
  std::vector<int> d(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) d[i] = deg[w[i]];
  return d;
}

// Calls f(positions) for each increasing choice of p positions out of n.
template <class F>
void for_each_subset(int n, int p, F&& f) {
  std::vector<int> pos(p);
  auto rec = [&](auto&& self, int k, int from) -> void {
    if (k == p) {
      f(pos);
      return;
    }
    for (int i = from; i <= n - (p - k); ++i) {
      pos[k] = i;
      self(self, k + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

TensorElem bat(int p, int q, const Word& a, const Word& b, const std::vector<int>& deg) {
  if (static_cast<int>(a.size()) != p || static_cast<int>(b.size()) != q || p < 1 || q < 1)
    throw std::invalid_argument("bat: length mismatch");
  const int n = p + q;
  Word ab = concat(a, b);
  auto degs = degrees_of(ab, deg);
  TensorElem out;
  std::vector<int> perm(n);
  Word w(n);
  for_each_subset(n, p, [&](const std::vector<int>& pos) {
    int ia = 0, ib = p;
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
      if (k < pos.size() && pos[k] == i) {
        perm[i] = ia++;
        ++k;
      } else {
        perm[i] = ib++;
      }
      w[i] = ab[perm[i]];
    }
    out.add(w, Rational(koszul_sign(degs, perm)));
  });
  return out;
}

TensorElem bat(const Word& a, const Word& b, const std::vector<int>& deg) {
  return bat(static_cast<int>(a.size()), static_cast<int>(b.size()), a, b, deg);
}

TensorElem bat(const TensorElem& a, const TensorElem& b, const std::vector<int>& deg) {
  TensorElem out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) out.add(bat(u, v, deg), cu * cv);
  return out;
}

TensorElem bat3(int p, int q, int r, const Word& a, const Word& b, const Word& c, const std::vector<int>& deg) {
  if (static_cast<int>(a.size()) != p || static_cast<int>(b.size()) != q || static_cast<int>(c.size()) != r ||
      p < 1 || q < 1 || r < 1)
    throw std::invalid_argument("bat3: length mismatch");
  const int n = p + q + r;
  Word abc = concat(concat(a, b), c);
  auto degs = degrees_of(abc, deg);
  TensorElem out;
  std::vector<int> perm(n), label(n);
  // label each output slot 0, 1 or 2, keeping each source in order
  auto rec = [&](auto&& self, int i, int na, int nb, int nc) -> void {
    if (i == n) {
      int ia = 0, ib = p, ic = p + q;
      Word w(n);
      for (int k = 0; k < n; ++k) {
        perm[k] = label[k] == 0 ? ia++ : label[k] == 1 ? ib++ : ic++;
        w[k] = abc[perm[k]];
      }
      out.add(w, Rational(koszul_sign(degs, perm)));
      return;
    }
    if (na < p) label[i] = 0, self(self, i + 1, na + 1, nb, nc);
    if (nb < q) label[i] = 1, self(self, i + 1, na, nb + 1, nc);
    if (nc < r) label[i] = 2, self(self, i + 1, na, nb, nc + 1);
  };
  rec(rec, 0, 0, 0, 0);
  return out;
}

// ---- ShuffleQuotient -------------------------------------------------------------

ShuffleQuotient::ShuffleQuotient(std::vector<int> letter_degrees) : deg_(std::move(letter_degrees)) {}

const ShuffleQuotient::Block& ShuffleQuotient::block(const Word& multiset) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = blocks_.find(multiset);
    if (it != blocks_.end()) return *it->second;
  }
  // Built outside the lock; a racing duplicate is identical and discarded.
  auto b = std::make_unique<Block>();
  b->multiset = multiset;
  std::vector<Word> words;
  Word w(multiset);
  std::sort(w.begin(), w.end());
  do words.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  const int N = static_cast<int>(words.size());
  std::map<Word, int> col;  // larger words get smaller columns
  for (int i = 0; i < N; ++i) col[words[i]] = N - 1 - i;
  const int n = static_cast<int>(multiset.size());
  RowReducer rr(N);
  for (const Word& u : words)
    for (int r = 1; r < n; ++r) {
      TensorElem img = bat(slice(u, 0, r), slice(u, r, n), deg_);
      SparseRow row;
      for (const auto& [v, c] : img) row.push_back({col.at(v), c});
      std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      if (!row.empty()) rr.insert(row);
    }
  std::vector<bool> pivot(N, false);
  for (const auto& [pc, row] : rr.pivot_rows()) {
    pivot[pc] = true;
    TensorElem red;
    for (const auto& [c, v] : row)
      if (c != pc) red.add(words[N - 1 - c], -v);
    b->reduction[words[N - 1 - pc]] = red;
  }
  for (int i = 0; i < N; ++i)
    if (!pivot[N - 1 - i]) {
      b->representatives.push_back(words[i]);
      b->reduction[words[i]] = TensorElem(words[i]);
    }
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = blocks_.try_emplace(multiset, std::move(b));
  return *it->second;
}

TensorElem ShuffleQuotient::reduce(const Word& w) const {
  Word key(w);
  std::sort(key.begin(), key.end());
  return block(key).reduction.at(w);
}

TensorElem ShuffleQuotient::reduce(const TensorElem& x) const {
  TensorElem out;
  for (const auto& [w, c] : x) out.add(reduce(w), c);
  return out;
}

bool ShuffleQuotient::is_representative(const Word& w) const {
  TensorElem r = reduce(w);
  return r.size() == 1 && r.begin()->first == w && r.begin()->second.is_one();
}

int ShuffleQuotient::dim(const Word& multiset) const {
  Word key(multiset);
  std::sort(key.begin(), key.end());
  return static_cast<int>(block(key).representatives.size());
}

std::vector<Word> multisets(int nletters, int n) {
  std::vector<Word> out;
  if (n <= 0) return out;
  Word w(n);
  auto rec = [&](auto&& self, int pos, int from) -> void {
    if (pos == n) {
      out.push_back(w);
      return;
    }
    for (int l = from; l < nletters; ++l) {
      w[pos] = l;
      self(self, pos + 1, l);
    }
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<Word> ShuffleQuotient::representatives(int n) const {
  std::vector<Word> out;
  for (const Word& m : multisets(nletters(), n)) {
    const auto& reps = block(m).representatives;
    out.insert(out.end(), reps.begin(), reps.end());
  }
  return out;
}

long ShuffleQuotient::dim_total(int n) const {
  // A block's dimension depends only on the multiplicities of its letters
  // and their parities, so one block per pattern is built.
  std::map<std::vector<std::pair<int, int>>, long> by_pattern;
  long s = 0;
  for (const Word& m : multisets(nletters(), n)) {
    std::vector<std::pair<int, int>> pattern;
    for (std::size_t i = 0; i < m.size();) {
      std::size_t j = i;
      while (j < m.size() && m[j] == m[i]) ++j;
      pattern.emplace_back(static_cast<int>(j - i), deg_[m[i]] & 1);
      i = j;
    }
    std::sort(pattern.begin(), pattern.end());
    auto it = by_pattern.find(pattern);
    if (it == by_pattern.end()) it = by_pattern.emplace(pattern, dim(m)).first;
    s += it->second;
  }
  return s;
}

std::string ShuffleQuotient::to_json(int n) const {
  nlohmann::json arr = nlohmann::json::array();
  for (const Word& m : multisets(nletters(), n)) {
    const Block& b = block(m);
    arr.push_back({{"multiset", b.multiset}, {"dim", b.representatives.size()}, {"representatives", b.representatives}});
  }
  return arr.dump();
}

// ---- delta -----------------------------------------------------------------------

QuotPair delta(const Word& w, const ShuffleQuotient& Q) {
  const auto& deg = Q.degrees();
  const int n = static_cast<int>(w.size());
  QuotPair out;
  for (int j = 1; j < n; ++j) {
    Word u = slice(w, 0, j), v = slice(w, j, n);
    TensorElem ru = Q.reduce(u), rv = Q.reduce(v);
    const Rational s(-sign_pow(word_degree(u, deg) * word_degree(v, deg)));
    for (const auto& [a, ca] : ru)
      for (const auto& [b, cb] : rv) {
        out.add({a, b}, ca * cb);
        out.add({b, a}, s * ca * cb);
      }
  }
  return out;
}

QuotPair delta(const TensorElem& x, const ShuffleQuotient& Q) {
  QuotPair out;
  for (const auto& [w, c] : x) out.add(delta(w, Q), c);
  return out;
}

// ---- lifts -----------------------------------------------------------------------

Vec LiftedMorphism::coefficient(const Word& w) const {
  auto it = maps_.find(static_cast<int>(w.size()));
  if (it == maps_.end()) return Vec();
  Vec out;
  for (const auto& [u, c] : src_->reduce(w)) out.add(it->second(u), c);
  return out;
}

TensorElem LiftedMorphism::operator()(const Word& w) const {
  const int n = static_cast<int>(w.size());
  // compositions of n, built left to right
  std::vector<TensorElem> partial(n + 1);
  partial[0] = TensorElem(Word{});
  for (int end = 1; end <= n; ++end)
    for (int start = 0; start < end; ++start) {
      if (partial[start].is_zero()) continue;
      Vec f = coefficient(slice(w, start, end));
      for (const auto& [u, cu] : partial[start])
        for (const auto& [b, cb] : f) {
          Word x(u);
          x.push_back(b);
          partial[end].add(x, cu * cb);
        }
    }
  return tgt_->reduce(partial[n]);
}

TensorElem LiftedMorphism::operator()(const TensorElem& x) const {
  TensorElem out;
  for (const auto& [w, c] : x) out.add((*this)(w), c);
  return out;
}

TensorElem LiftedCoderivation::operator()(const Word& w) const {
  const auto& deg = q_->degrees();
  const int n = static_cast<int>(w.size());
  TensorElem raw;
  for (const auto& [r, fn] : maps_) {
    if (r > n) continue;
    for (int j = 0; j + r <= n; ++j) {
      Word pre = slice(w, 0, j), mid = slice(w, j, j + r), post = slice(w, j + r, n);
      const Rational s(sign_pow(long(degree_) * word_degree(pre, deg)));
      Vec val;
      for (const auto& [u, c] : q_->reduce(mid)) val.add(fn(u), c);
      for (const auto& [b, cb] : val) {
        Word x(pre);
        x.push_back(b);
        x.insert(x.end(), post.begin(), post.end());
        raw.add(x, s * cb);
      }
    }
  }
  return q_->reduce(raw);
}

TensorElem LiftedCoderivation::operator()(const TensorElem& x) const {
  TensorElem out;
  for (const auto& [w, c] : x) out.add((*this)(w), c);
  return out;
}

LiftedMorphism lift_morphism(TaylorMaps maps, const ShuffleQuotient& source, const ShuffleQuotient& target) {
  return LiftedMorphism(std::move(maps), source, target);
}

LiftedCoderivation lift_coderivation(TaylorMaps maps, int degree, const ShuffleQuotient& space) {
  return LiftedCoderivation(std::move(maps), degree, space);
}

LiftedCoderivation mu(const FiniteAlgebra& alg, const ShuffleQuotient& space) {
  if (!alg.commutative()) throw std::invalid_argument("mu: algebra must be graded commutative");
  if (space.degrees() != alg.shifted_degrees()) throw std::invalid_argument("mu: quotient alphabet mismatch");
  TaylorMaps maps;
  maps[2] = [alg](const Word& w) { return tensorco::m2(w[0], w[1], alg); };
  return LiftedCoderivation(std::move(maps), 1, space);
}

// ---- Harrison --------------------------------------------------------------------

void check_harrison(const tensorco::HochschildCochain& c, const ShuffleQuotient& Q) {
  const int n = c.arity;
  for (const Word& m : multisets(Q.nletters(), n)) {
    Word u(m);
    do {
      for (int r = 1; r < n; ++r) {
        Vec val;
        for (const auto& [w, cw] : bat(slice(u, 0, r), slice(u, r, n), Q.degrees())) val.add(c(w), cw);
        if (!val.is_zero()) throw std::invalid_argument("Harrison cochain does not vanish on a shuffle image");
      }
    } while (std::next_permutation(u.begin(), u.end()));
  }
}

tensorco::HochschildCochain extend_from_representatives(const tensorco::HochschildCochain& c,
                                                         const ShuffleQuotient& Q) {
  tensorco::HochschildCochain out;
  out.arity = c.arity;
  out.degree = c.degree;
  for (const Word& w : tensorco::all_words(Q.nletters(), c.arity)) {
    Vec val;
    for (const auto& [u, cu] : Q.reduce(w)) {
      auto it = c.values.find(u);
      if (it != c.values.end()) val.add(it->second, cu);
    }
    if (!val.is_zero()) out.values[w] = val;
  }
  return out;
}

tensorco::HochschildCochain d_harrison(const tensorco::HochschildCochain& c, const FiniteAlgebra& alg,
                                       const Bimodule& mod, const ShuffleQuotient& Q) {
  if (Q.degrees() != alg.shifted_degrees()) throw std::invalid_argument("d_harrison: quotient alphabet mismatch");
  check_harrison(c, Q);
  return tensorco::d_hochschild(c, alg, mod);
}

}  // namespace gch::shuffleco
