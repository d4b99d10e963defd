#include "polyvol/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace polyvol {

std::string ExponentVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

SparsePolynomial::SparsePolynomial(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxDimension)
    throw std::invalid_argument("polynomial dimension must be between 0 and " + std::to_string(kMaxDimension));
}

SparsePolynomial SparsePolynomial::constant(int dim, const Rational& c) {
  SparsePolynomial p(dim);
  if (!c.is_zero()) p.terms_.emplace(ExponentVector(dim), c);
  return p;
}

SparsePolynomial SparsePolynomial::monomial(int dim, const ExponentVector& a, const Rational& c) {
  SparsePolynomial p(dim);
  p.set_coefficient(a, c);
  return p;
}

std::optional<int> SparsePolynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.total();  // grlex: last term has maximal total degree
}

Rational SparsePolynomial::coefficient(const ExponentVector& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SparsePolynomial::set_coefficient(const ExponentVector& a, const Rational& c) {
  if (a.dim() != dim_) throw std::invalid_argument("exponent vector dimension mismatch");
  for (int k : a.e)
    if (k < 0) throw std::invalid_argument("negative exponent");
  if (c.is_zero())
    terms_.erase(a);
  else
    terms_[a] = c;
}

SparsePolynomial SparsePolynomial::operator+(const SparsePolynomial& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch in addition");
  SparsePolynomial r = *this;
  for (const auto& [a, c] : o.terms_) {
    auto it = r.terms_.find(a);
    if (it == r.terms_.end()) {
      r.terms_.emplace(a, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) r.terms_.erase(it);
    }
  }
  return r;
}

SparsePolynomial SparsePolynomial::operator-() const {
  SparsePolynomial r(dim_);
  for (const auto& [a, c] : terms_) r.terms_.emplace(a, -c);
  return r;
}

SparsePolynomial SparsePolynomial::operator-(const SparsePolynomial& o) const { return *this + (-o); }

SparsePolynomial SparsePolynomial::scaled(const Rational& c) const {
  SparsePolynomial r(dim_);
  if (c.is_zero()) return r;
  for (const auto& [a, k] : terms_) r.terms_.emplace(a, k * c);
  return r;
}

SparsePolynomial SparsePolynomial::operator*(const SparsePolynomial& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch in multiplication");
  SparsePolynomial r(dim_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      ExponentVector s(dim_);
      for (int i = 0; i < dim_; ++i) s[i] = a[i] + b[i];
      auto it = r.terms_.find(s);
      if (it == r.terms_.end()) {
        Rational c = ca * cb;
        if (!c.is_zero()) r.terms_.emplace(s, c);
      } else {
        it->second += ca * cb;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  return r;
}

SparsePolynomial SparsePolynomial::partial_derivative(int axis) const {
  if (axis < 1 || axis > dim_) throw std::invalid_argument("derivative axis out of range");
  SparsePolynomial r(dim_);
  int i = axis - 1;
  for (const auto& [a, c] : terms_) {
    if (a[i] == 0) continue;
    ExponentVector b = a;
    b[i] -= 1;
    r.terms_.emplace(b, c * Rational(a[i]));
  }
  return r;
}

double SparsePolynomial::evaluate(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("evaluation point dimension mismatch");
  double s = 0.0;
  for (const auto& [a, c] : terms_) {
    double t = c.to_double();
    for (int i = 0; i < dim_; ++i) {
      double b = x[i];
      int k = a[i];
      while (k > 0) {  // exponent by squaring
        if (k & 1) t *= b;
        b *= b;
        k >>= 1;
      }
    }
    s += t;
  }
  return s;
}

Rational SparsePolynomial::evaluate_exact(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("evaluation point dimension mismatch");
  Rational s(0);
  for (const auto& [a, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < dim_; ++i)
      if (a[i] > 0) t *= x[i].pow(a[i]);
    s += t;
  }
  return s;
}

std::string SparsePolynomial::format() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [a, c] = *it;
    bool neg = c.sign() < 0;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    Rational mag = c.abs();
    std::string mono;
    for (int i = 0; i < dim_; ++i) {
      if (a[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (a[i] > 1) mono += "^" + std::to_string(a[i]);
    }
    if (mono.empty()) {
      out += mag.str();
    } else if (mag == Rational(1)) {
      out += mono;
    } else {
      out += mag.str() + "*" + mono;
    }
  }
  return out;
}

namespace {

// Recursive-descent parser over the raw string; positions are 1-based.
class Parser {
 public:
  Parser(const std::string& s, int dim) : s_(s), dim_(dim) {}

  SparsePolynomial run() {
    skip_ws();
    if (eof()) throw ParseError("empty polynomial", pos_1());
    SparsePolynomial acc(dim_);
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      advance();
      skip_ws();
    }
    acc = acc + term().scaled(Rational(neg ? -1 : 1));
    skip_ws();
    while (!eof()) {
      char c = peek();
      if (c != '+' && c != '-') throw ParseError(std::string("unexpected character '") + c + "'", pos_1());
      advance();
      skip_ws();
      SparsePolynomial t = term();
      acc = c == '+' ? acc + t : acc - t;
      skip_ws();
    }
    return acc;
  }

 private:
  SparsePolynomial term() {
    SparsePolynomial f = factor();
    skip_ws();
    while (!eof() && peek() == '*') {
      advance();
      skip_ws();
      f = f * factor();
      skip_ws();
    }
    return f;
  }

  SparsePolynomial factor() {
    if (eof()) throw ParseError("expected factor", pos_1());
    char c = peek();
    if (c == 'x') return variable_factor();
    if (std::isdigit(static_cast<unsigned char>(c))) return number_factor();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_1());
  }

  SparsePolynomial variable_factor() {
    int at = pos_1();
    advance();  // consume 'x'
    long idx = read_nat("variable index");
    if (idx < 1 || idx > dim_)
      throw ParseError("variable x" + std::to_string(idx) + " outside dimension " + std::to_string(dim_), at);
    int power = 1;
    skip_ws();
    if (!eof() && peek() == '^') {
      advance();
      skip_ws();
      int pat = pos_1();
      long e = read_nat("exponent");
      if (e > 1000) throw ParseError("exponent too large", pat);
      power = static_cast<int>(e);
    }
    ExponentVector a(dim_);
    a[static_cast<int>(idx) - 1] = power;
    return SparsePolynomial::monomial(dim_, a, Rational(1));
  }

  SparsePolynomial number_factor() {
    std::string ip = read_digits("number");
    if (!eof() && peek() == '.') {
      advance();
      int fat = pos_1();
      std::string fp = read_digits_opt();
      if (fp.empty()) throw ParseError("expected digits after decimal point", fat);
      return SparsePolynomial::constant(dim_, Rational::from_string(ip + "." + fp));
    }
    if (!eof() && peek() == '/') {
      advance();
      skip_ws();
      int dat = pos_1();
      std::string dp = read_digits("denominator");
      if (mpz_class(dp) == 0) throw ParseError("division by zero in rational literal", dat);
      return SparsePolynomial::constant(dim_, Rational::from_string(ip + "/" + dp));
    }
    return SparsePolynomial::constant(dim_, Rational::from_string(ip));
  }

  long read_nat(const char* what) {
    int at = pos_1();
    std::string d = read_digits_opt();
    if (d.empty()) throw ParseError(std::string("expected ") + what, at);
    if (d.size() > 9) throw ParseError(std::string(what) + " too large", at);
    return std::stol(d);
  }

  std::string read_digits(const char* what) {
    int at = pos_1();
    std::string d = read_digits_opt();
    if (d.empty()) throw ParseError(std::string("expected ") + what, at);
    return d;
  }

  std::string read_digits_opt() {
    std::string d;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      d += peek();
      advance();
    }
    return d;
  }

  bool eof() const { return i_ >= s_.size(); }
  char peek() const { return s_[i_]; }
  void advance() { ++i_; }
  int pos_1() const { return static_cast<int>(i_) + 1; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  const std::string& s_;
  int dim_;
  std::size_t i_ = 0;
};

}  // namespace

SparsePolynomial parse_polynomial(const std::string& text, int dim) {
  if (dim < 1 || dim > kMaxDimension)
    throw std::invalid_argument("dimension must be between 1 and " + std::to_string(kMaxDimension));
  return Parser(text, dim).run();
}

SparsePolynomial coefficient_slice(const SparsePolynomial& p, int axis, int power) {
  int n = p.dimension();
  if (axis < 1 || axis > n) throw std::invalid_argument("slice axis out of range");
  if (power < 0) throw std::invalid_argument("slice power must be nonnegative");
  SparsePolynomial r(n - 1);
  for (const auto& [a, c] : p.terms()) {
    if (a[axis - 1] != power) continue;
    ExponentVector b(n - 1);
    int j = 0;
    for (int i = 0; i < n; ++i) {
      if (i == axis - 1) continue;
      b[j++] = a[i];
    }
    r.set_coefficient(b, r.coefficient(b) + c);
  }
  return r;
}

namespace {

SparsePolynomial det_recursive(const std::vector<std::vector<SparsePolynomial>>& m, std::vector<int> cols,
                               int row) {
  int n = static_cast<int>(m.size());
  int dim = m[0][0].dimension();
  if (row == n) return SparsePolynomial::constant(dim, Rational(1));
  SparsePolynomial acc(dim);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const SparsePolynomial& entry = m[row][cols[k]];
    if (entry.is_zero()) continue;
    std::vector<int> rest;
    rest.reserve(cols.size() - 1);
    for (std::size_t t = 0; t < cols.size(); ++t)
      if (t != k) rest.push_back(cols[t]);
    SparsePolynomial sub = det_recursive(m, rest, row + 1);
    SparsePolynomial contrib = entry * sub;
    acc = (k % 2 == 0) ? acc + contrib : acc - contrib;
  }
  return acc;
}

}  // namespace

std::vector<SparsePolynomial> jacobian_chain(const SparsePolynomial& p, int levels) {
  int n = p.dimension();
  if (n < 1) throw std::invalid_argument("jacobian chain needs a positive dimension");
  if (levels < 1 || levels > n) throw std::invalid_argument("levels must lie in [1, dimension]");
  std::vector<SparsePolynomial> chain{p};
  for (int m = 1; m <= levels; ++m) {
    // next element: det of (d chain[i-1] / d x_j), i from 1..m, j from 1..m
    std::vector<std::vector<SparsePolynomial>> jac(m);
    for (int i = 0; i < m; ++i) {
      jac[i].reserve(m);
      for (int j = 1; j <= m; ++j) jac[i].push_back(chain[i].partial_derivative(j));
    }
    std::vector<int> cols(m);
    for (int j = 0; j < m; ++j) cols[j] = j;
    chain.push_back(det_recursive(jac, cols, 0));
  }
  return chain;
}

EvalPlan::EvalPlan(const SparsePolynomial& p) : dim_(p.dimension()) {
  terms_.reserve(p.term_count());
  for (const auto& [a, c] : p.terms()) {
    Term t{};
    t.c = c.to_double();
    for (int i = 0; i < dim_; ++i) {
      t.e[i] = a[i];
      if (a[i] > maxe_[i]) maxe_[i] = a[i];
    }
    terms_.push_back(t);
  }
  for (int i = 0; i < dim_; ++i)
    if (maxe_[i] > 127) throw std::invalid_argument("evaluation plan supports degree at most 127 per variable");
}

double EvalPlan::operator()(const double* x) const {
  double pw[kMaxDimension][128];
  for (int i = 0; i < dim_; ++i) {
    pw[i][0] = 1.0;
    for (int k = 1; k <= maxe_[i]; ++k) pw[i][k] = pw[i][k - 1] * x[i];
  }
  double s = 0.0;
  for (const Term& t : terms_) {
    double v = t.c;
    for (int i = 0; i < dim_; ++i) v *= pw[i][t.e[i]];
    s += v;
  }
  return s;
}

}  // namespace polyvol
