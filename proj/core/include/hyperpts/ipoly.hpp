#pragma once

#include "hyperpts/arith.hpp"

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace hyperpts {

/// Dense univariate polynomial over Z. Coefficients are stored lowest degree
/// first and the leading coefficient is never zero (the zero polynomial has
/// no coefficients and degree -1).
class IPoly {
 public:
  IPoly() = default;
  explicit IPoly(std::vector<Int> low_to_high);
  IPoly(std::initializer_list<long> low_to_high);

  static IPoly constant(const Int& c);
  static IPoly monomial(const Int& c, int degree);
  /// The polynomial x - r.
  static IPoly linear_root(const Int& r);
  /// Builds from coefficients listed leading coefficient first.
  static IPoly from_leading_first(const std::vector<Int>& coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const Int& lc() const;
  /// Coefficient of x^i; zero past the degree.
  Int coeff(int i) const;
  const std::vector<Int>& coeffs() const { return coeffs_; }

  Int operator()(const Int& x) const;
  Rat operator()(const Rat& x) const;
  /// Homogeneous evaluation b^n f(a/b) for n >= degree.
  Int homogeneous(const Int& a, const Int& b, int n) const;

  IPoly derivative() const;
  Int content() const;
  IPoly primitive_part() const;
  /// x^n f(1/x) for n >= degree.
  IPoly reversed(int n) const;
  /// f(a + b*t) as a polynomial in t.
  IPoly compose_affine(const Int& a, const Int& b) const;
  IPoly negate_x() const;

  IPoly operator-() const;
  friend IPoly operator+(const IPoly& a, const IPoly& b);
  friend IPoly operator-(const IPoly& a, const IPoly& b);
  friend IPoly operator*(const IPoly& a, const IPoly& b);
  friend IPoly operator*(const Int& c, const IPoly& a);
  friend bool operator==(const IPoly& a, const IPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const IPoly& a, const IPoly& b) { return !(a == b); }

  /// Exact division over Z; returns false if b does not divide a in Z[x].
  static bool divides_exactly(const IPoly& a, const IPoly& b, IPoly* quotient);

  /// Coefficient list "f_d ... f_1 f_0".
  std::string to_coeff_list() const;
  /// Human-readable form, e.g. "x^6 - 3*x + 2".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Int> coeffs_;
};

/// Parses either a coefficient list (leading first) or an expression in x.
/// Throws ParseError carrying the failing character position.
IPoly parse_ipoly(std::string_view text);
IPoly parse_coeff_list(std::string_view text);
IPoly parse_expression(std::string_view text);

/// Determinant of the Sylvester matrix with the rows of g first.
Int resultant(const IPoly& g, const IPoly& h);
/// (-1)^{d(d-1)/2} Res(f, f') / lc(f); requires deg f >= 2.
Int discriminant(const IPoly& f);

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
Int determinant(std::vector<std::vector<Int>> m);

// Polynomials over Q, only as much as the real-root and gcd routines need.
using QPoly = std::vector<Rat>;
QPoly to_qpoly(const IPoly& f);
void qpoly_trim(QPoly& f);
Rat qpoly_eval(const QPoly& f, const Rat& x);
QPoly qpoly_rem(const QPoly& a, const QPoly& b);
QPoly qpoly_div(const QPoly& a, const QPoly& b);
QPoly qpoly_gcd(QPoly a, QPoly b);
QPoly qpoly_derivative(const QPoly& f);
/// Primitive integer polynomial with positive leading coefficient proportional to f.
IPoly qpoly_to_primitive(const QPoly& f);

}  // namespace hyperpts
