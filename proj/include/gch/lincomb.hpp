#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gch/rational.hpp"

namespace gch {

// Finite formal sum of keys with rational coefficients. Ordered by key so
// that iteration (and therefore every printed or exported result) is
// deterministic. Zero coefficients are never stored.
template <class Key, class Less = std::less<Key>>
class LinComb {
 public:
  using map_type = std::map<Key, Rational, Less>;
  using const_iterator = typename map_type::const_iterator;

  LinComb() = default;
  LinComb(const Key& k, Rational c = 1) { add(k, std::move(c)); }

  void add(const Key& k, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add(Key&& k, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(std::move(k), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add(const LinComb& o, const Rational& c = 1) {
    if (c.is_zero()) return;
    for (const auto& [k, v] : o.terms_) add(k, v * c);
  }

  LinComb& operator+=(const LinComb& o) {
    add(o);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    add(o, Rational(-1));
    return *this;
  }
  LinComb& operator*=(const Rational& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& kv : terms_) kv.second *= c;
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(LinComb a, const Rational& c) { return a *= c; }
  friend LinComb operator*(const Rational& c, LinComb a) { return a *= c; }
  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LinComb& a, const LinComb& b) { return !(a == b); }

  Rational coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const map_type& terms() const { return terms_; }
  void clear() { terms_.clear(); }

 private:
  map_type terms_;
};

// Applies a linear map given on keys: sum_k c_k * f(k).
template <class Out, class In, class F>
Out apply_linear(const In& x, F&& f) {
  Out out;
  for (const auto& [k, c] : x) out.add(f(k), c);
  return out;
}

}  // namespace gch
