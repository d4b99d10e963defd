#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polyvol {

/// Arbitrary-precision rational number. Thin wrapper around GMP's mpq_class
/// that keeps values canonical (reduced, positive denominator) after every
/// operation.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}          // NOLINT: implicit on purpose
  Rational(long n, long d) : v_(n, d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Exact value of a finite double. Throws on NaN or infinity.
  static Rational from_double(double x);
  /// Parses "n", "n/d" or a decimal like "1.25". Throws std::invalid_argument.
  static Rational from_string(const std::string& s);

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  double to_double() const { return v_.get_d(); }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  /// Integer power; e may be negative only for nonzero values.
  Rational pow(long e) const;

  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("rational division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  mpq_class v_;
};

inline Rational Rational::from_double(double x) {
  if (!(x == x) || x - x != 0.0) throw std::invalid_argument("from_double: non-finite value");
  mpq_class q(x);  // exact binary expansion
  q.canonicalize();
  return Rational(q);
}

inline Rational Rational::pow(long e) const {
  if (e == 0) return Rational(1);
  bool inv = e < 0;
  unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  if (inv && is_zero()) throw std::domain_error("zero to a negative power");
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), k);
  mpq_class r(n, d);
  r.canonicalize();
  Rational out(r);
  if (inv) out = Rational(1) / out;
  return out;
}

inline std::string Rational::str() const {
  std::string s = v_.get_num().get_str();
  if (v_.get_den() != 1) s += "/" + v_.get_den().get_str();
  return s;
}

inline Rational Rational::from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '-' || s[i] == '+') { neg = s[i] == '-'; ++i; }
  auto digits = [&](std::size_t& p) {
    std::string d;
    while (p < s.size() && s[p] >= '0' && s[p] <= '9') d += s[p++];
    return d;
  };
  std::string ip = digits(i);
  if (ip.empty()) throw std::invalid_argument("malformed rational literal: " + s);
  Rational r;
  if (i < s.size() && s[i] == '.') {
    ++i;
    std::string fp = digits(i);
    if (fp.empty()) throw std::invalid_argument("malformed decimal literal: " + s);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    mpq_class q(mpz_class(ip) * scale + mpz_class(fp), scale);
    q.canonicalize();
    r = Rational(q);
  } else if (i < s.size() && s[i] == '/') {
    ++i;
    std::string dp = digits(i);
    if (dp.empty()) throw std::invalid_argument("malformed rational literal: " + s);
    mpz_class den(dp);
    if (den == 0) throw std::domain_error("rational with zero denominator");
    mpq_class q(mpz_class(ip), den);
    q.canonicalize();
    r = Rational(q);
  } else {
    r = Rational(mpq_class(mpz_class(ip)));
  }
  if (i != s.size()) throw std::invalid_argument("trailing characters in rational literal: " + s);
  return neg ? -r : r;
}

}  // namespace polyvol
