#include "gch/polyvec.hpp"

#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gch/graded.hpp"
#include "gch/symalg.hpp"
#include "gch/symco.hpp"

namespace gch::polyvec {

int Mono::poly_degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }

Polyvec::Polyvec(int d, const Mono& m, Rational c) : d_(d) {
  if (static_cast<int>(m.exps.size()) != d) throw std::invalid_argument("monomial has wrong number of variables");
  terms_.add(m, c);
}

int Polyvec::k() const {
  if (terms_.is_zero()) throw std::logic_error("degree of zero polyvector");
  const int k0 = terms_.begin()->first.k();
  for (const auto& [m, c] : terms_)
    if (m.k() != k0) throw std::logic_error("polyvector of mixed degree");
  return k0;
}

bool Polyvec::homogeneous() const {
  for (const auto& [m, c] : terms_)
    if (!m.homogeneous()) return false;
  return true;
}

Polyvec& Polyvec::operator+=(const Polyvec& o) {
  terms_ += o.terms_;
  return *this;
}
Polyvec& Polyvec::operator-=(const Polyvec& o) {
  terms_ -= o.terms_;
  return *this;
}
Polyvec& Polyvec::operator*=(const Rational& c) {
  terms_ *= c;
  return *this;
}

namespace {

std::string mono_str(const Mono& m) {
  std::string s;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    for (int e = 0; e < m.exps[i]; ++e) {
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(i + 1);
    }
  }
  if (!m.dirs.empty()) {
    if (!s.empty()) s += " ";
    s += "d";
    for (int i : m.dirs) s += std::to_string(i + 1);
  }
  return s;
}

// Product of two monomials; returns the sign of sorting the directions, 0 if
// a direction repeats.
int mono_mul(const Mono& a, const Mono& b, Mono& out) {
  out.exps.resize(a.exps.size());
  for (std::size_t i = 0; i < a.exps.size(); ++i) out.exps[i] = a.exps[i] + b.exps[i];
  out.dirs = a.dirs;
  out.dirs.insert(out.dirs.end(), b.dirs.begin(), b.dirs.end());
  return sym_canonicalize(out.dirs, [](int) { return 1; });
}

// Right derivative with respect to the odd variable of direction i.
int right_dxi(const Mono& m, int i, Mono& out) {
  for (int j = 0; j < m.k(); ++j) {
    if (m.dirs[j] != i) continue;
    out.exps = m.exps;
    out.dirs = m.dirs;
    out.dirs.erase(out.dirs.begin() + j);
    return sign_pow(m.k() - 1 - j);
  }
  return 0;
}

void half_bracket(const Polyvec& a, const Polyvec& b, const Rational& scale, Polyvec& out) {
  const int d = a.dim();
  Mono l, r, prod;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      for (int i = 0; i < d; ++i) {
        if (mb.exps[i] == 0) continue;
        const int s = right_dxi(ma, i, l);
        if (s == 0) continue;
        r = mb;
        --r.exps[i];
        const int t = mono_mul(l, r, prod);
        if (t == 0) continue;
        out.add(prod, ca * cb * scale * Rational(s * t * mb.exps[i]));
      }
}

void check_dims(const Polyvec& a, const Polyvec& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("polyvectors on different spaces");
}

void compositions(int d, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == d - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = total; e >= 0; --e) {
    cur.push_back(e);
    compositions(d, total - e, cur, out);
    cur.pop_back();
  }
}

void subsets(int d, int k, int from, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = from; i < d; ++i) {
    cur.push_back(i);
    subsets(d, k, i + 1, cur, out);
    cur.pop_back();
  }
}

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::string Polyvec::str() const {
  if (terms_.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a.sign() < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
      if (a.sign() < 0) a = -a;
    }
    const std::string ms = mono_str(m);
    if (ms.empty())
      os << a;
    else if (a.is_one())
      os << ms;
    else
      os << a << " " << ms;
    first = false;
  }
  return os.str();
}

long basis_count(int d, int k) { return binom(d, k) * binom(d + k - 1, k); }

std::vector<Mono> basis(int d, int k) {
  if (d < 1) throw std::invalid_argument("dimension must be positive");
  if (k < 0 || k > d) throw std::out_of_range("tensor degree must lie in [0, d]");
  std::vector<std::vector<int>> dir_sets, exp_vecs;
  std::vector<int> cur;
  subsets(d, k, 0, cur, dir_sets);
  cur.clear();
  compositions(d, k, cur, exp_vecs);
  std::vector<Mono> out;
  out.reserve(dir_sets.size() * exp_vecs.size());
  for (const auto& dirs : dir_sets)
    for (const auto& e : exp_vecs) out.push_back(Mono{e, dirs});
  return out;
}

Polyvec wedge(const Polyvec& a, const Polyvec& b) {
  check_dims(a, b);
  Polyvec out(a.dim());
  Mono prod;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      const int s = mono_mul(ma, mb, prod);
      if (s != 0) out.add(prod, ca * cb * Rational(s));
    }
  return out;
}

Polyvec schouten(const Polyvec& a, const Polyvec& b) {
  check_dims(a, b);
  Polyvec out(a.dim());
  // bilinear, so split into homogeneous parts by tensor degree
  std::map<int, Polyvec> pa, pb;
  for (const auto& [m, c] : a.terms()) pa.try_emplace(m.k(), a.dim()).first->second.add(m, c);
  for (const auto& [m, c] : b.terms()) pb.try_emplace(m.k(), b.dim()).first->second.add(m, c);
  for (const auto& [p, x] : pa)
    for (const auto& [q, y] : pb) {
      half_bracket(x, y, 1, out);
      half_bracket(y, x, Rational(-sign_pow(static_cast<long>(p - 1) * (q - 1))), out);
    }
  return out;
}

Polyvec mu2(const Polyvec& a, const Polyvec& b) {
  check_dims(a, b);
  Polyvec out(a.dim());
  for (const auto& [m, c] : a.terms()) {
    Polyvec t(a.dim(), m, c);
    out += wedge(t, b) * Rational(sign_pow(m.k() - 1));
  }
  return out;
}

Polyvec shifted_bracket(const Polyvec& a, const Polyvec& b) { return schouten(a, b); }

Rational f1(const Polyvec& a) {
  Rational r;
  for (const auto& [m, c] : a.terms())
    if (m.k() == 0 && m.poly_degree() == 0) r += c;
  return r;
}

Polyvec parse(const std::string& text, int d) {
  if (d < 1 || d > 9) throw std::invalid_argument("parse supports 1 <= d <= 9");
  Polyvec out(d);
  std::size_t pos = 0;
  const std::size_t n = text.size();
  auto skip = [&] {
    while (pos < n && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse polyvector '" + text + "' at " + std::to_string(pos) + ": " + why);
  };
  auto digit_index = [&]() {
    if (pos >= n || !std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected an index");
    const int i = text[pos++] - '1';
    if (i < 0 || i >= d) fail("index out of range");
    return i;
  };
  skip();
  if (pos == n) fail("empty input");
  bool first = true;
  while (true) {
    skip();
    if (pos == n) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Rational coef(sign);
    bool any = false;
    if (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      const std::size_t start = pos;
      while (pos < n && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
      coef *= Rational::parse(text.substr(start, pos - start));
      any = true;
      skip();
      if (pos < n && text[pos] == '*') {
        ++pos;
        skip();
      }
    }
    Mono m{std::vector<int>(d, 0), {}};
    while (pos < n && text[pos] == 'x') {
      ++pos;
      const int i = digit_index();
      int e = 1;
      if (pos < n && text[pos] == '^') {
        ++pos;
        const std::size_t start = pos;
        while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected an exponent");
        e = std::stoi(text.substr(start, pos - start));
      }
      m.exps[i] += e;
      any = true;
      skip();
      if (pos < n && text[pos] == '*') {
        ++pos;
        skip();
        if (pos >= n || text[pos] != 'x') fail("expected a variable after *");
      }
    }
    if (pos < n && text[pos] == 'd') {
      ++pos;
      std::vector<int> dirs;
      while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) dirs.push_back(digit_index());
      if (dirs.empty()) fail("expected directions after d");
      const int s = sym_canonicalize(dirs, [](int) { return 1; });
      if (s == 0) coef = 0;
      coef *= Rational(s == 0 ? 1 : s);
      m.dirs = std::move(dirs);
      any = true;
    }
    if (!any) fail("empty term");
    out.add(m, coef);
  }
  return out;
}

GerstAlgebra::GerstAlgebra(std::vector<int> degrees, BilinearTable wedge, BilinearTable bracket,
                           std::vector<std::string> names, bool validate)
    : deg_(std::move(degrees)), wedge_(std::move(wedge)), br_(std::move(bracket)), names_(std::move(names)) {
  const std::size_t n = deg_.size();
  if (wedge_.size() != n || br_.size() != n) throw std::invalid_argument("table size does not match the basis");
  for (std::size_t i = 0; i < n; ++i)
    if (wedge_[i].size() != n || br_[i].size() != n) throw std::invalid_argument("table size does not match the basis");
  if (names_.empty())
    for (std::size_t i = 0; i < n; ++i) names_.push_back("g" + std::to_string(i));
  if (names_.size() != n) throw std::invalid_argument("wrong number of names");
  if (validate) {
    const std::string err = check();
    if (!err.empty()) throw std::invalid_argument("not a Gerstenhaber algebra: " + err);
  }
}

std::vector<int> GerstAlgebra::shifted_degrees() const {
  std::vector<int> s(deg_);
  for (int& x : s) --x;
  return s;
}

Vec GerstAlgebra::mu2(int i, int j) const { return wedge_[i][j] * Rational(sign_pow(deg_[i] - 1)); }

int GerstAlgebra::unit() const {
  for (int u = 0; u < dim(); ++u) {
    if (deg_[u] != 0) continue;
    bool ok = true;
    for (int j = 0; j < dim() && ok; ++j) ok = wedge_[u][j] == Vec(j) && wedge_[j][u] == Vec(j);
    if (ok) return u;
  }
  return -1;
}

FiniteAlgebra GerstAlgebra::commutative_part() const { return FiniteAlgebra(deg_, wedge_, true); }

std::string GerstAlgebra::check() const {
  const int n = dim();
  auto homogeneous = [&](const Vec& v, int want) {
    for (const auto& [i, c] : v)
      if (i < 0 || i >= n || deg_[i] != want) return false;
    return true;
  };
  auto name = [&](int i) { return names_[i]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!homogeneous(wedge_[i][j], deg_[i] + deg_[j]))
        return "wedge " + name(i) + "," + name(j) + " has the wrong degree";
      if (!homogeneous(br_[i][j], deg_[i] + deg_[j] - 1))
        return "bracket " + name(i) + "," + name(j) + " has the wrong degree";
      if (wedge_[i][j] != wedge_[j][i] * Rational(sign_pow(static_cast<long>(deg_[i]) * deg_[j])))
        return "wedge is not graded commutative on " + name(i) + "," + name(j);
      const long s = static_cast<long>(deg_[i] - 1) * (deg_[j] - 1);
      if (br_[i][j] != br_[j][i] * Rational(-sign_pow(s)))
        return "bracket is not graded antisymmetric on " + name(i) + "," + name(j);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vec a(i), b(j), c(k);
        if (wedge(wedge(a, b), c) != wedge(a, wedge(b, c)))
          return "wedge is not associative on " + name(i) + "," + name(j) + "," + name(k);
        const long x = deg_[i] - 1, y = deg_[j] - 1, z = deg_[k] - 1;
        Vec jac = bracket(bracket(a, b), c) * Rational(sign_pow(x * z));
        jac += bracket(bracket(b, c), a) * Rational(sign_pow(y * x));
        jac += bracket(bracket(c, a), b) * Rational(sign_pow(z * y));
        if (!jac.is_zero()) return "Jacobi fails on " + name(i) + "," + name(j) + "," + name(k);
        Vec leib = bracket(a, wedge(b, c));
        leib -= wedge(bracket(a, b), c);
        leib -= wedge(b, bracket(a, c)) * Rational(sign_pow(static_cast<long>(deg_[j]) * x));
        if (!leib.is_zero()) return "Leibniz fails on " + name(i) + "," + name(j) + "," + name(k);
      }
  return {};
}

GerstAlgebra GerstAlgebra::from_polyvec(int d, int kmax) {
  if (kmax < 0 || kmax > d) throw std::out_of_range("kmax must lie in [0, d]");
  std::vector<Mono> monos;
  std::vector<int> deg;
  std::vector<std::string> names;
  for (int k = 0; k <= kmax; ++k)
    for (auto& m : basis(d, k)) {
      deg.push_back(k);
      names.push_back(k == 0 ? "1" : mono_str(m));
      monos.push_back(std::move(m));
    }
  std::map<Mono, int> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = static_cast<int>(i);
  auto to_vec = [&](const Polyvec& p) {
    Vec v;
    for (const auto& [m, c] : p.terms())
      if (m.k() <= kmax) v.add(index.at(m), c);
    return v;
  };
  const std::size_t n = monos.size();
  BilinearTable w(n, std::vector<Vec>(n)), b(n, std::vector<Vec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Polyvec a(d, monos[i]), c(d, monos[j]);
      w[i][j] = to_vec(polyvec::wedge(a, c));
      b[i][j] = to_vec(schouten(a, c));
    }
  return GerstAlgebra(std::move(deg), std::move(w), std::move(b), std::move(names), false);
}

namespace {

// Exterior algebra basis as sorted index sets; e_I ^ e_J with its sign.
int ext_mul(const std::vector<int>& I, const std::vector<int>& J, std::vector<int>& out) {
  out = I;
  out.insert(out.end(), J.begin(), J.end());
  return sym_canonicalize(out, [](int) { return 1; });
}

using ExtElem = LinComb<std::vector<int>>;

ExtElem ext_wedge(const ExtElem& a, const ExtElem& b) {
  ExtElem out;
  std::vector<int> w;
  for (const auto& [I, x] : a)
    for (const auto& [J, y] : b) {
      const int s = ext_mul(I, J, w);
      if (s != 0) out.add(w, x * y * Rational(s));
    }
  return out;
}

// Schouten bracket on the exterior algebra of a Lie algebra, from the
// bracket of generators by the two Leibniz rules.
ExtElem ext_bracket(const std::vector<int>& I, const std::vector<int>& J, const BilinearTable& lie) {
  if (I.empty() || J.empty()) return {};
  if (I.size() == 1 && J.size() == 1) {
    ExtElem out;
    for (const auto& [k, c] : lie[I[0]][J[0]]) out.add(std::vector<int>{k}, c);
    return out;
  }
  if (I.size() == 1) {
    // [x, y^r] = [x,y]^r + y^[x,r]
    const std::vector<int> y{J[0]}, r(J.begin() + 1, J.end());
    ExtElem out = ext_wedge(ext_bracket(I, y, lie), ExtElem(r));
    out += ext_wedge(ExtElem(y), ext_bracket(I, r, lie));
    return out;
  }
  // [x^b, c] = x^[b,c] + (-1)^{|b|(|c|-1)} [x,c]^b
  const std::vector<int> x{I[0]}, rest(I.begin() + 1, I.end());
  ExtElem out = ext_wedge(ExtElem(x), ext_bracket(rest, J, lie));
  out += ext_wedge(ext_bracket(x, J, lie), ExtElem(rest)) *
         Rational(sign_pow(static_cast<long>(rest.size()) * (static_cast<long>(J.size()) - 1)));
  return out;
}

GerstAlgebra exterior(const BilinearTable& lie, int top, Rng* rng) {
  const int m = static_cast<int>(lie.size());
  std::vector<std::vector<int>> sets;
  std::vector<int> cur;
  for (int k = 0; k <= std::min(top, m); ++k) subsets(m, k, 0, cur, sets);
  std::map<std::vector<int>, int> index;
  std::vector<int> deg;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    index[sets[i]] = static_cast<int>(i);
    deg.push_back(static_cast<int>(sets[i].size()));
    std::string s = sets[i].empty() ? "1" : "e";
    for (int x : sets[i]) s += std::to_string(x + 1);
    names.push_back(s);
  }
  auto to_vec = [&](const ExtElem& e) {
    Vec v;
    for (const auto& [I, c] : e) {
      auto it = index.find(I);
      if (it != index.end()) v.add(it->second, c);
    }
    return v;
  };
  const std::size_t n = sets.size();
  BilinearTable w(n, std::vector<Vec>(n)), b(n, std::vector<Vec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      w[i][j] = to_vec(ext_wedge(ExtElem(sets[i]), ExtElem(sets[j])));
      b[i][j] = to_vec(ext_bracket(sets[i], sets[j], lie));
    }
  if (rng != nullptr) {
    auto P = random_graded_basis_change(*rng, deg);
    w = change_basis(w, P);
    b = change_basis(b, P);
    for (auto& s : names) s += "'";
  }
  return GerstAlgebra(std::move(deg), std::move(w), std::move(b), std::move(names), false);
}

}  // namespace

GerstAlgebra GerstAlgebra::sandbox(Rng& rng, int top, int lie_dim) {
  if (lie_dim != 2 && lie_dim != 3) throw std::invalid_argument("sandbox Lie algebra must have dimension 2 or 3");
  // ungraded Lie algebras only, so that the generators sit in degree 1
  symco::LieData g = symco::random_lie(rng, false);
  while (g.dim() != lie_dim) g = symco::random_lie(rng, false);
  GerstAlgebra out = exterior(g.table(), top, &rng);
  const std::string err = out.check();
  if (!err.empty()) throw std::logic_error("sandbox construction failed: " + err);
  return out;
}

GerstAlgebra GerstAlgebra::abelian_sandbox(Rng& rng, int top, int lie_dim) {
  BilinearTable lie(lie_dim, std::vector<Vec>(lie_dim));
  GerstAlgebra out = exterior(lie, top, &rng);
  const std::string err = out.check();
  if (!err.empty()) throw std::logic_error("sandbox construction failed: " + err);
  return out;
}

GerstAlgebra GerstAlgebra::zero_sandbox() {
  BilinearTable zero(3, std::vector<Vec>(3));
  return GerstAlgebra({0, 1, 1}, zero, zero, {"z0", "z1", "z2"});
}

GerstAlgebra GerstAlgebra::reals() {
  BilinearTable w{{Vec(0)}}, b{{Vec()}};
  return GerstAlgebra({0}, std::move(w), std::move(b), {"1"});
}

GerstAlgebra GerstAlgebra::corrupted(Rng& rng) {
  // random antisymmetric brackets on three generators until Jacobi fails
  while (true) {
    BilinearTable lie(3, std::vector<Vec>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const Rational c = rng.small_rational();
          lie[i][j].add(k, c);
          lie[j][i].add(k, -c);
        }
    GerstAlgebra out = exterior(lie, 1, nullptr);
    if (!out.check().empty()) return out;
  }
}

}  // namespace gch::polyvec
