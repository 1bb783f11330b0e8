#include <doctest.h>

#include "hyperpts/arith.hpp"

using namespace hyperpts;

TEST_SUITE("arith") {
  TEST_CASE("isqrt and squares") {
    CHECK(isqrt(Int(0)) == 0);
    CHECK(isqrt(Int("1000000000000000000000000")) == Int("1000000000000"));
    Int r;
    CHECK(is_square(Int(144), &r));
    CHECK(r == 12);
    CHECK_FALSE(is_square(Int(-4)));
    Rat q;
    CHECK(is_square(Rat(9, 49), &q));
    CHECK(q == Rat(3, 7));
    CHECK_FALSE(is_square(Rat(2, 9)));
  }

  TEST_CASE("valuations") {
    CHECK(valuation(Int(96), 2) == 5);
    CHECK(valuation(Rat(5, 72), 3) == -2);
    Int n = 3 * 3 * 3 * 7;
    CHECK(remove_factor(n, 3) == 3);
    CHECK(n == 7);
  }

  TEST_CASE("modular helpers agree with brute force") {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 101ull}) {
      for (std::uint64_t a = 0; a < p; ++a) {
        int brute = 0;
        for (std::uint64_t y = 1; y < p; ++y)
          if (y * y % p == a) brute = 1;
        if (a == 0) CHECK(legendre(a, p) == 0);
        else CHECK(legendre(a, p) == (brute ? 1 : -1));
        if (brute) {
          std::uint64_t s = sqrt_mod_prime(a, p);
          CHECK(s * s % p == a);
        }
        if (a > 0) CHECK(mulmod(a, invmod(a, p), p) == 1);
      }
      std::uint64_t nu = smallest_nonresidue(p);
      CHECK(legendre(nu, p) == -1);
      for (std::uint64_t b = 2; b < nu; ++b) CHECK(legendre(b, p) == 1);
    }
  }

  TEST_CASE("primality and factorization") {
    auto ps = primes_up_to(100);
    CHECK(ps.size() == 25);
    CHECK(is_prime(std::uint64_t(1000000007)));
    CHECK_FALSE(is_prime(std::uint64_t(1000000007ull * 998244353ull)));
    Int n = Int("1000000007") * Int("998244353") * 12;
    auto fac = factor_integer(-n);
    Int back = 1;
    for (auto& pp : fac) {
      CHECK(is_prime(pp.prime));
      back *= pow_int(pp.prime, pp.exponent);
    }
    CHECK(back == n);
    CHECK(squarefree_part(Int(-72)) == -2);
    CHECK(squarefree_part(Int(50)) == 2);
  }

  TEST_CASE("error codes carry names") {
    try {
      fail(ErrorCode::DepthExceeded, "x");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DepthExceeded);
      CHECK(std::string(e.what()).rfind("DEPTH_EXCEEDED", 0) == 0);
    }
  }
}
