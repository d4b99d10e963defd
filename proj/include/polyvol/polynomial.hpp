#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyvol/rational.hpp"

namespace polyvol {

inline constexpr int kMaxDimension = 6;

/// Exponent multi-index. Length equals the ambient dimension (0 allowed for
/// constants-only polynomials produced by slicing).
struct ExponentVector {
  std::vector<int> e;

  ExponentVector() = default;
  explicit ExponentVector(int dim) : e(dim, 0) {}
  ExponentVector(std::initializer_list<int> init) : e(init) {}

  int dim() const { return static_cast<int>(e.size()); }
  int operator[](int i) const { return e[i]; }
  int& operator[](int i) { return e[i]; }
  int total() const {
    int s = 0;
    for (int k : e) s += k;
    return s;
  }
  bool operator==(const ExponentVector& o) const { return e == o.e; }
  std::string str() const;
};

/// Graded lexicographic order: lower total degree first, ties broken by
/// ordinary lexicographic comparison of the exponent vectors.
struct GrlexLess {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const {
    int ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return a.e < b.e;
  }
};

/// Error raised by the polynomial parser. `position` is 1-based and points at
/// the offending character in the input string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int position)
      : std::runtime_error(msg + " at position " + std::to_string(position)), position_(position) {}
  int position() const { return position_; }

 private:
  int position_;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept in a canonical graded-lex map; zero coefficients are never
/// stored, so equality is structural equality of the maps.
class SparsePolynomial {
 public:
  using TermMap = std::map<ExponentVector, Rational, GrlexLess>;

  SparsePolynomial() : dim_(0) {}
  explicit SparsePolynomial(int dim);

  static SparsePolynomial constant(int dim, const Rational& c);
  static SparsePolynomial monomial(int dim, const ExponentVector& a, const Rational& c);

  int dimension() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0); }
  /// Total degree; nullopt for the zero polynomial.
  std::optional<int> degree() const;
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Coefficient of the given exponent vector (zero if absent).
  Rational coefficient(const ExponentVector& a) const;
  void set_coefficient(const ExponentVector& a, const Rational& c);

  SparsePolynomial operator+(const SparsePolynomial& o) const;
  SparsePolynomial operator-(const SparsePolynomial& o) const;
  SparsePolynomial operator*(const SparsePolynomial& o) const;
  SparsePolynomial operator-() const;
  SparsePolynomial scaled(const Rational& c) const;
  bool operator==(const SparsePolynomial& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

  /// Partial derivative in the given 1-based variable.
  SparsePolynomial partial_derivative(int axis) const;

  double evaluate(const std::vector<double>& x) const;
  Rational evaluate_exact(const std::vector<Rational>& x) const;

  /// Canonical text form: descending graded-lex, explicit '*' and '^',
  /// coefficients as reduced fractions. Round-trips through the parser.
  std::string format() const;

private:
  int dim_;
  TermMap terms_;
};

/// Parses the textual grammar
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := rational | variable ['^' nat]
/// with variables x1..x<dim>. Throws ParseError with a 1-based position.
SparsePolynomial parse_polynomial(const std::string& text, int dim);

/// Extracts the coefficient of x_axis^power as a polynomial in the remaining
/// variables (their indices shift down past `axis`).
SparsePolynomial coefficient_slice(const SparsePolynomial& p, int axis, int power);

/// Iterated Jacobian-determinant sequence: Q_1 = p and Q_{m+1} is the
/// determinant of the matrix (d Q_i / d x_j) for i, j <= m. Returns
/// Q_1..Q_{levels+1}; levels must lie in [1, dimension].
std::vector<SparsePolynomial> jacobian_chain(const SparsePolynomial& p, int levels);

/// Fast repeated double evaluation of a fixed polynomial.
class EvalPlan {
 public:
  explicit EvalPlan(const SparsePolynomial& p);
  int dimension() const { return dim_; }
  double operator()(const double* x) const;
  double operator()(const std::vector<double>& x) const { return (*this)(x.data()); }

 private:
  struct Term {
    double c;
    std::array<int, kMaxDimension> e;
  };
  int dim_ = 0;
  std::array<int, kMaxDimension> maxe_{};
  std::vector<Term> terms_;
};

}  // namespace polyvol
