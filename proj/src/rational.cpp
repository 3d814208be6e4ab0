#include "gch/rational.hpp"

#include <functional>
#include <limits>
#include <stdexcept>

namespace gch {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 uabs(i128 v) { return v < 0 ? u128(-v) : u128(v); }

bool fits(i128 v) { return v > i128(kMin) && v <= i128(kMax); }

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFull));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (num == kMin || den == kMin) {
    set_big(mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))));
    return;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = static_cast<std::int64_t>(gcd128(uabs(num), uabs(den)));
  n_ = num / g;
  d_ = den / g;
}

Rational::Rational(const mpq_class& q) { set_big(q); }

void Rational::set_big(mpq_class q) {
  q.canonicalize();
  if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t())) {
    long n = mpz_get_si(q.get_num_mpz_t());
    long d = mpz_get_si(q.get_den_mpz_t());
    if (n != kMin) {
      n_ = n;
      d_ = d;
      big_.reset();
      return;
    }
  }
  if (big_)
    *big_ = std::move(q);
  else
    big_ = std::make_unique<mpq_class>(std::move(q));
  n_ = 0;
  d_ = 1;
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpq_class(mpz_class(s, 10)));
    mpz_class num(s.substr(0, slash), 10), den(s.substr(slash + 1), 10);
    if (den == 0) throw std::domain_error("zero denominator");
    return Rational(mpq_class(num, den));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rational::parse: bad rational '" + s + "'");
  }
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return n_ > 0 ? 1 : (n_ < 0 ? -1 : 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

mpz_class Rational::numerator() const { return to_mpq().get_num(); }
mpz_class Rational::denominator() const { return to_mpq().get_den(); }

std::string Rational::str() const {
  if (!big_) return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
  return big_->get_str();
}

Rational Rational::operator-() const {
  Rational r(*this);
  r.negate();
  return r;
}

void Rational::negate() {
  if (big_)
    *big_ = -*big_;
  else
    n_ = -n_;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (d_ == 1 && o.d_ == 1) {
      i128 s = i128(n_) + o.n_;
      if (fits(s)) {
        n_ = static_cast<std::int64_t>(s);
        return *this;
      }
    }
    i128 num = i128(n_) * o.d_ + i128(o.n_) * d_;
    i128 den = i128(d_) * o.d_;
    u128 g = gcd128(uabs(num), u128(den));
    if (g > 1) {
      num /= i128(g);
      den /= i128(g);
    }
    if (num == 0) {
      n_ = 0;
      d_ = 1;
      return *this;
    }
    if (fits(num) && fits(den)) {
      n_ = static_cast<std::int64_t>(num);
      d_ = static_cast<std::int64_t>(den);
      return *this;
    }
    set_big(mpq_class(to_mpz(num), to_mpz(den)));
    return *this;
  }
  set_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (n_ == 0 || o.n_ == 0) {
      n_ = 0;
      d_ = 1;
      return *this;
    }
    // cross-cancel first to keep intermediate values small
    std::int64_t g1 = static_cast<std::int64_t>(gcd128(uabs(n_), u128(o.d_)));
    std::int64_t g2 = static_cast<std::int64_t>(gcd128(uabs(o.n_), u128(d_)));
    i128 num = i128(n_ / g1) * (o.n_ / g2);
    i128 den = i128(d_ / g2) * (o.d_ / g1);
    if (fits(num) && fits(den)) {
      n_ = static_cast<std::int64_t>(num);
      d_ = static_cast<std::int64_t>(den);
      return *this;
    }
    set_big(mpq_class(to_mpz(num), to_mpz(den)));
    return *this;
  }
  set_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!o.big_) {
    Rational inv;
    inv.n_ = o.n_ < 0 ? -o.d_ : o.d_;
    inv.d_ = o.n_ < 0 ? -o.n_ : o.n_;
    return *this *= inv;
  }
  set_big(to_mpq() / o.to_mpq());
  return *this;
}

void Rational::add_mul(const Rational& a, const Rational& b) {
  if (!big_ && !a.big_ && !b.big_ && d_ == 1 && a.d_ == 1 && b.d_ == 1) {
    i128 s = i128(n_) + i128(a.n_) * b.n_;
    if (fits(s)) {
      n_ = static_cast<std::int64_t>(s);
      return;
    }
  }
  *this += a * b;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical form: big values never fit inline
}

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return i128(a.n_) * b.d_ < i128(b.n_) * a.d_;
  return a.to_mpq() < b.to_mpq();
}

std::size_t Rational::hash() const {
  if (!big_) return std::hash<std::int64_t>()(n_) * 31 + std::hash<std::int64_t>()(d_);
  return std::hash<std::string>()(big_->get_str());
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace gch
