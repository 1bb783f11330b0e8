#include "hyperpts/arith.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace hyperpts {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::PreconditionViolated: return "PRECONDITION_VIOLATED";
    case ErrorCode::DegreeTooLarge: return "DEGREE_TOO_LARGE";
    case ErrorCode::DegreeOutOfRange: return "DEGREE_OUT_OF_RANGE";
    case ErrorCode::NotSquarefree: return "NOT_SQUAREFREE";
    case ErrorCode::BadPrime: return "BAD_PRIME";
    case ErrorCode::DepthExceeded: return "DEPTH_EXCEEDED";
    case ErrorCode::FactoringFailed: return "FACTORING_FAILED";
    case ErrorCode::NoRationalWeierstrass: return "NO_RATIONAL_WEIERSTRASS";
    case ErrorCode::NonInvertibleDivision: return "NONINVERTIBLE_DIVISION";
    case ErrorCode::PrecisionLoss: return "PRECISION_LOSS";
    case ErrorCode::BadReduction: return "BAD_REDUCTION";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::PDividesOrder: return "P_DIVIDES_ORDER";
    case ErrorCode::WeierstrassDisk: return "WEIERSTRASS_DISK";
    case ErrorCode::ZeroLog: return "ZERO_LOG";
    case ErrorCode::UnusablePrime: return "UNUSABLE_PRIME";
    case ErrorCode::NoSeparatingPrime: return "NO_SEPARATING_PRIME";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& q) { return q.get_str(); }

Int int_from_string(const std::string& s) {
  Int n;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || n.set_str(t, 10) != 0) fail(ErrorCode::ParseError, "not an integer: '" + s + "'");
  return n;
}

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(int_from_string(s));
  Int num = int_from_string(s.substr(0, slash));
  Int den = int_from_string(s.substr(slash + 1));
  if (den == 0) fail(ErrorCode::ParseError, "zero denominator: '" + s + "'");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Int isqrt(const Int& n) {
  require(n >= 0, "isqrt of negative number");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Int& n, Int* root) {
  if (n < 0) return false;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  if (root) *root = isqrt(n);
  return true;
}

bool is_square(const Rat& q, Rat* root) {
  Int a, b;
  if (!is_square(Int(q.get_num()), &a) || !is_square(Int(q.get_den()), &b)) return false;
  if (root) *root = Rat(a, b);
  return true;
}

int remove_factor(Int& n, unsigned long p) {
  if (n == 0) return 0;
  Int pp(static_cast<unsigned long>(p));
  mp_bitcnt_t k = mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
  return static_cast<int>(k);
}

int valuation(const Int& n, unsigned long p) {
  require(n != 0, "valuation of zero");
  Int m = n;
  return remove_factor(m, p);
}

int valuation(const Rat& q, unsigned long p) {
  require(q != 0, "valuation of zero");
  return valuation(Int(q.get_num()), p) - valuation(Int(q.get_den()), p);
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, newt = 1;
  __int128 r = m, newr = a % m;
  while (newr != 0) {
    __int128 q = r / newr;
    __int128 tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) fail(ErrorCode::NonInvertibleDivision, "element not invertible modulo " + std::to_string(m));
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t mod_of(const Int& a, std::uint64_t m) {
  Int r;
  Int mm;
  mpz_set_ui(mm.get_mpz_t(), m);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), mm.get_mpz_t());
  return mpz_get_ui(r.get_mpz_t());
}

int legendre(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::uint64_t sqrt_mod_prime(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  require(legendre(a, p) == 1, "sqrt_mod_prime of a non-residue");
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = smallest_nonresidue(p);
  std::uint64_t m = s;
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t t = powmod(a, q, p);
  std::uint64_t r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

std::uint64_t smallest_nonresidue(std::uint64_t p) {
  require(p > 2, "non-residue requested for p = 2");
  for (std::uint64_t z = 2; z < p; ++z)
    if (legendre(z, p) == -1) return z;
  fail(ErrorCode::PreconditionViolated, "no non-residue found; modulus not prime");
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p()) return is_prime(static_cast<std::uint64_t>(n.get_ui()));
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

namespace {

constexpr unsigned long kTrialBound = 1000000;

Int pollard_brent(const Int& n, std::mt19937_64& rng) {
  if (mpz_even_p(n.get_mpz_t())) return Int(2);
  std::uniform_int_distribution<unsigned long> dist(1, 1ul << 40);
  for (int attempt = 0; attempt < 4; ++attempt) {
    Int y = Int(dist(rng)) % n, c = Int(dist(rng)) % n, g = 1, q = 1, x, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    unsigned long total = 0;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = (q * abs(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
      total += r;
      if (total > (1ul << 22)) break;
    }
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        Int diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  fail(ErrorCode::FactoringFailed, "Pollard rho could not split " + to_string(n));
}

void factor_cofactor(const Int& n, std::vector<Int>& primes, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  Int d = pollard_brent(n, rng);
  factor_cofactor(d, primes, rng);
  factor_cofactor(n / d, primes, rng);
}

}  // namespace

std::vector<PrimePower> factor_integer(const Int& n) {
  require(n != 0, "factor_integer of zero");
  Int m = abs(n);
  std::vector<PrimePower> out;
  for (unsigned long p = 2; p <= kTrialBound; p = (p == 2 ? 3 : p + 2)) {
    if (Int(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      int e = remove_factor(m, p);
      out.push_back({Int(p), static_cast<unsigned>(e)});
    }
  }
  if (m > 1) {
    std::mt19937_64 rng(0x5eed);
    std::vector<Int> primes;
    factor_cofactor(m, primes, rng);
    std::sort(primes.begin(), primes.end());
    for (const Int& p : primes) {
      if (!out.empty() && out.back().prime == p)
        ++out.back().exponent;
      else
        out.push_back({p, 1});
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

std::vector<Int> prime_divisors(const Int& n) {
  std::vector<Int> out;
  for (const auto& pp : factor_integer(n)) out.push_back(pp.prime);
  return out;
}

std::vector<std::uint64_t> small_prime_divisors(const Int& n) {
  std::vector<std::uint64_t> out;
  for (const auto& pp : factor_integer(n)) {
    if (!pp.prime.fits_ulong_p() || pp.prime > (Int(1) << 62))
      fail(ErrorCode::FactoringFailed, "prime factor exceeds machine word: " + to_string(pp.prime));
    out.push_back(pp.prime.get_ui());
  }
  return out;
}

Int squarefree_part(const Int& n) {
  require(n != 0, "squarefree_part of zero");
  Int s = n < 0 ? Int(-1) : Int(1);
  for (const auto& pp : factor_integer(n))
    if (pp.exponent % 2 == 1) s *= pp.prime;
  return s;
}

}  // namespace hyperpts
