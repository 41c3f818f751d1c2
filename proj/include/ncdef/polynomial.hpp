#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncdef/rational.hpp"

namespace ncdef {

/// Exponent vector of a commutative monomial. Entries may be negative only in
/// raw (Laurent) expressions; Groebner routines require nonnegative entries.
using Exponents = std::vector<int>;

/// Weighted-degree order with a lexicographic tie-break following a variable
/// priority list (first entry is the most significant variable).
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(std::vector<int> weights, std::vector<std::size_t> priority);

  /// Degree-lexicographic order with x_0 > x_1 > ... .
  static MonomialOrder deglex(std::size_t nvars);

  std::size_t nvars() const noexcept { return weights_.size(); }
  long weight(const Exponents& e) const;
  /// Three-way comparison: >0 if a > b.
  int compare(const Exponents& a, const Exponents& b) const;
  bool greater(const Exponents& a, const Exponents& b) const { return compare(a, b) > 0; }

  const std::vector<int>& weights() const noexcept { return weights_; }
  const std::vector<std::size_t>& priority() const noexcept { return priority_; }

 private:
  std::vector<int> weights_;
  std::vector<std::size_t> priority_;
};

/// Sparse commutative polynomial over Q. Zero coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<Exponents, Scalar>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  Polynomial(std::size_t nvars, Terms terms);

  static Polynomial constant(std::size_t nvars, const Scalar& c);
  static Polynomial monomial(Exponents e, const Scalar& c = 1);
  static Polynomial variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Scalar coefficient(const Exponents& e) const;

  void add_term(const Exponents& e, const Scalar& c);

  /// Leading (exponents, coefficient) under `order`; precondition: nonzero.
  std::pair<Exponents, Scalar> leading(const MonomialOrder& order) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Scalar& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const { return *this * Scalar(-1); }
  /// Integer power; negative powers are allowed for single-term polynomials.
  Polynomial pow(int n) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

std::string format_monomial(const Exponents& e, const std::vector<std::string>& names);

/// Parses an expression over the named variables: integers and "p/q"
/// literals, + - * ^ (integer exponents, possibly negative), parentheses, and
/// division by a constant. Throws InvalidInput on syntax errors or unknown
/// variables.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names);

bool divides(const Exponents& a, const Exponents& b);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

/// Full reduction of p modulo g (every remaining term irreducible).
Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& g, const MonomialOrder& order);

/// Reduced monic Groebner basis (Buchberger with the coprime criterion).
std::vector<Polynomial> groebner_basis(std::vector<Polynomial> generators, const MonomialOrder& order);

}  // namespace ncdef
