#pragma once

#include "hyperpts/arith.hpp"

#include <cstdint>
#include <string>

namespace hyperpts {

/// Default relative precision for p-adic work.
inline constexpr int kDefaultPadicPrecision = 8;

/// Element of Q_p known to finite precision: p^val * (unit + O(p^rel)).
///
/// An inexact zero O(p^val) has rel == 0 and unit == 0. The absolute
/// precision val + rel only shrinks under arithmetic: sums keep the smaller
/// absolute precision, products and quotients keep the smaller relative
/// precision, so dividing by an element of positive valuation lowers the
/// absolute precision of the result.
class PadicNum {
 public:
  PadicNum() = default;

  /// Exact rational t rounded to absolute precision abs_prec.
  static PadicNum from_rat(const Rat& t, std::uint64_t p, int abs_prec);
  static PadicNum from_int(const Int& t, std::uint64_t p, int abs_prec) { return from_rat(Rat(t), p, abs_prec); }
  static PadicNum zero(std::uint64_t p, int abs_prec);

  std::uint64_t prime() const { return p_; }
  int valuation() const { return val_; }
  int relative_precision() const { return rel_; }
  int absolute_precision() const { return val_ + rel_; }
  const Int& unit() const { return unit_; }
  bool is_zero() const { return rel_ == 0; }
  bool is_unit() const { return rel_ > 0 && val_ == 0; }

  /// Representative p^val * unit as a rational number.
  Rat lift() const;
  /// Residue of an integral element modulo p^k (k <= absolute precision).
  Int residue(int k) const;

  PadicNum operator-() const;
  friend PadicNum operator+(const PadicNum& a, const PadicNum& b);
  friend PadicNum operator-(const PadicNum& a, const PadicNum& b) { return a + (-b); }
  friend PadicNum operator*(const PadicNum& a, const PadicNum& b);
  friend PadicNum operator/(const PadicNum& a, const PadicNum& b) { return a * b.inverse(); }
  PadicNum& operator+=(const PadicNum& b) { return *this = *this + b; }
  PadicNum& operator-=(const PadicNum& b) { return *this = *this - b; }
  PadicNum& operator*=(const PadicNum& b) { return *this = *this * b; }

  /// Throws NonInvertibleDivision for an inexact zero.
  PadicNum inverse() const;

  /// Agreement to the common absolute precision.
  bool congruent(const PadicNum& other) const;

  std::string to_string() const;

 private:
  PadicNum(std::uint64_t p, int val, Int unit, int rel);
  void normalize();

  std::uint64_t p_ = 2;
  int val_ = 0;
  Int unit_ = 0;
  int rel_ = 0;
};

enum class SquareVerdict { Square, NonSquare, Zero };

const char* square_verdict_name(SquareVerdict v);

struct SquareClass {
  SquareVerdict verdict = SquareVerdict::Zero;
  /// When Square, a root r with r^2 = t to the root's precision.
  PadicNum witness;
};

/// Decides whether t is a square in Q_p: even valuation and a square unit
/// part (Euler criterion for odd p, unit = 1 mod 8 for p = 2).
SquareClass sqclass_qp(const Rat& t, std::uint64_t p, int precision = kDefaultPadicPrecision);
/// Verdict only, without computing a root.
SquareVerdict square_verdict(const Rat& t, std::uint64_t p);
bool is_square_qp(const Rat& t, std::uint64_t p);

/// Square root of a p-adic unit u modulo p^k; the unit must be a square.
Int sqrt_unit_mod_pk(const Int& u, std::uint64_t p, int k);

}  // namespace hyperpts
