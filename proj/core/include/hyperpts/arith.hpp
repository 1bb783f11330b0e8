#pragma once

// Integer and rational arithmetic shared by every module: error type,
// big-number aliases, word-size modular helpers and integer factorization.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperpts {

using Int = mpz_class;
using Rat = mpq_class;

enum class ErrorCode {
  PreconditionViolated,
  DegreeTooLarge,
  DegreeOutOfRange,
  NotSquarefree,
  BadPrime,
  DepthExceeded,
  FactoringFailed,
  NoRationalWeierstrass,
  NonInvertibleDivision,
  PrecisionLoss,
  BadReduction,
  CapExceeded,
  PDividesOrder,
  WeierstrassDisk,
  ZeroLog,
  UnusablePrime,
  NoSeparatingPrime,
  ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::PreconditionViolated, what);
}

// ---------------------------------------------------------------------------
// Big integers

std::string to_string(const Int& n);
std::string to_string(const Rat& q);
Int int_from_string(const std::string& s);
Rat rat_from_string(const std::string& s);

Int isqrt(const Int& n);
/// True iff n >= 0 is a perfect square; stores the root when requested.
bool is_square(const Int& n, Int* root = nullptr);
/// True iff q is the square of a rational.
bool is_square(const Rat& q, Rat* root = nullptr);

/// p-adic valuation of a nonzero integer.
int valuation(const Int& n, unsigned long p);
/// p-adic valuation of a nonzero rational.
int valuation(const Rat& q, unsigned long p);
/// Strips all factors p from n (n nonzero) and returns the exponent removed.
int remove_factor(Int& n, unsigned long p);

Int pow_int(const Int& base, unsigned long e);
Int mod_floor(const Int& a, const Int& m);

// ---------------------------------------------------------------------------
// Machine-word modular arithmetic; moduli below 2^62.

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
std::uint64_t mod_of(const Int& a, std::uint64_t m);
/// Legendre symbol (a / p) for an odd prime p, in {-1, 0, 1}.
int legendre(std::uint64_t a, std::uint64_t p);
/// A square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p);
std::uint64_t smallest_nonresidue(std::uint64_t p);

bool is_prime(std::uint64_t n);
bool is_prime(const Int& n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

// ---------------------------------------------------------------------------
// Factorization: trial division to 10^6, then Pollard rho (Brent).

struct PrimePower {
  Int prime;
  unsigned exponent;
};

/// Factorization of |n|, n nonzero. Throws FactoringFailed if a cofactor resists.
std::vector<PrimePower> factor_integer(const Int& n);
std::vector<Int> prime_divisors(const Int& n);
std::vector<std::uint64_t> small_prime_divisors(const Int& n);
/// Squarefree part with sign: n = s * m^2, s squarefree.
Int squarefree_part(const Int& n);

}  // namespace hyperpts
