#pragma once

#include "hyperpts/arith.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace hyperpts {

/// Element of F_p, p an odd prime below 2^62.
struct FpElem {
  std::uint64_t v = 0;
  std::uint64_t p = 3;

  FpElem() = default;
  FpElem(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}
  static FpElem from_int(const Int& n, std::uint64_t prime) { return FpElem(mod_of(n, prime), prime); }
  /// Reduction of a rational whose denominator is prime to p.
  static FpElem from_rat(const Rat& q, std::uint64_t prime);

  bool is_zero() const { return v == 0; }
  FpElem inverse() const;
  FpElem pow(std::uint64_t e) const { return FpElem(powmod(v, e, p), p); }

  friend FpElem operator+(FpElem a, FpElem b) { return FpElem(a.v + b.v >= a.p ? a.v + b.v - a.p : a.v + b.v, a.p); }
  friend FpElem operator-(FpElem a, FpElem b) { return FpElem(a.v >= b.v ? a.v - b.v : a.v + a.p - b.v, a.p); }
  FpElem operator-() const { return FpElem(v == 0 ? 0 : p - v, p); }
  friend FpElem operator*(FpElem a, FpElem b) { return FpElem(mulmod(a.v, b.v, a.p), a.p); }
  friend FpElem operator/(FpElem a, FpElem b) { return a * b.inverse(); }
  FpElem& operator+=(FpElem b) { return *this = *this + b; }
  FpElem& operator-=(FpElem b) { return *this = *this - b; }
  FpElem& operator*=(FpElem b) { return *this = *this * b; }
  friend bool operator==(FpElem a, FpElem b) { return a.v == b.v && a.p == b.p; }
  friend bool operator!=(FpElem a, FpElem b) { return !(a == b); }

  /// Quadratic character: 0, 1 or -1.
  int chi() const { return legendre(v, p); }
  /// Square root of a square (undefined result otherwise; check chi first).
  FpElem sqrt() const { return FpElem(v == 0 ? 0 : sqrt_mod_prime(v, p), p); }

  std::string to_string() const { return std::to_string(v); }
};

/// Element a + b*s of F_{p^2} = F_p[s]/(s^2 - nu), nu the least non-residue.
struct Fp2Elem {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t p = 3;
  std::uint64_t nu = 2;

  Fp2Elem() = default;
  Fp2Elem(std::uint64_t a_, std::uint64_t b_, std::uint64_t p_, std::uint64_t nu_) : a(a_ % p_), b(b_ % p_), p(p_), nu(nu_) {}
  static Fp2Elem embed(FpElem x, std::uint64_t nu) { return Fp2Elem(x.v, 0, x.p, nu); }

  bool is_zero() const { return a == 0 && b == 0; }
  bool in_base_field() const { return b == 0; }
  FpElem norm() const;
  Fp2Elem inverse() const;
  Fp2Elem pow(std::uint64_t e) const;
  Fp2Elem pow(const Int& e) const;
  Fp2Elem frobenius() const { return Fp2Elem(a, b == 0 ? 0 : p - b, p, nu); }

  friend Fp2Elem operator+(const Fp2Elem& x, const Fp2Elem& y) { return Fp2Elem(x.a + y.a, x.b + y.b, x.p, x.nu); }
  friend Fp2Elem operator-(const Fp2Elem& x, const Fp2Elem& y) {
    return Fp2Elem(x.a + x.p - y.a, x.b + x.p - y.b, x.p, x.nu);
  }
  Fp2Elem operator-() const { return Fp2Elem(a == 0 ? 0 : p - a, b == 0 ? 0 : p - b, p, nu); }
  friend Fp2Elem operator*(const Fp2Elem& x, const Fp2Elem& y);
  friend Fp2Elem operator/(const Fp2Elem& x, const Fp2Elem& y) { return x * y.inverse(); }
  Fp2Elem& operator+=(const Fp2Elem& y) { return *this = *this + y; }
  Fp2Elem& operator-=(const Fp2Elem& y) { return *this = *this - y; }
  Fp2Elem& operator*=(const Fp2Elem& y) { return *this = *this * y; }
  friend bool operator==(const Fp2Elem& x, const Fp2Elem& y) { return x.a == y.a && x.b == y.b && x.p == y.p; }
  friend bool operator!=(const Fp2Elem& x, const Fp2Elem& y) { return !(x == y); }

  /// Quadratic character of F_{p^2}: x is a square iff its norm is a square in F_p.
  int chi() const;
  /// Square root of a square (Tonelli-Shanks in the multiplicative group of order p^2 - 1).
  Fp2Elem sqrt() const;

  std::string to_string() const;
};

/// Uniform random element of F_p.
FpElem random_fp(std::uint64_t p, std::mt19937_64& rng);
Fp2Elem random_fp2(std::uint64_t p, std::uint64_t nu, std::mt19937_64& rng);

}  // namespace hyperpts
