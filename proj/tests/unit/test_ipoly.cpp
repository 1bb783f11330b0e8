#include <doctest.h>

#include "hyperpts/ipoly.hpp"
#include "oracles.hpp"

#include <random>

using namespace hyperpts;

TEST_SUITE("ipoly") {
  TEST_CASE("resultant sign convention and known values") {
    CHECK(resultant(IPoly{0, 1}, IPoly{-1, 1}) == -1);
    IPoly g{-1, 1, 1};
    IPoly h{2, 1, 1, 1, 1};
    CHECK(resultant(g, h) == 19);
    CHECK(discriminant(IPoly{1, 0, 0, 0, 0, 1}) == 3125);
  }

  TEST_CASE("resultant agrees with Euclidean oracle") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> c(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Int> a(1 + trial % 4 + 1), b(1 + trial % 5 + 1);
      for (auto& x : a) x = c(rng);
      for (auto& x : b) x = c(rng);
      a.back() = a.back() == 0 ? 1 : a.back();
      b.back() = b.back() == 0 ? -1 : b.back();
      IPoly g(a), h(b);
      CHECK(Rat(resultant(g, h)) == oracle::resultant_euclid(g, h));
    }
  }

  TEST_CASE("resultant is multiplicative in the first argument") {
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<long> c(-6, 6);
    std::uniform_int_distribution<int> deg(1, 4);
    auto random_poly = [&] {
      std::vector<Int> a(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : a) x = c(rng);
      if (a.back() == 0) a.back() = 2;
      return IPoly(a);
    };
    for (int trial = 0; trial < 300; ++trial) {
      const IPoly g1 = random_poly(), g2 = random_poly(), h = random_poly();
      CHECK(resultant(g1 * g2, h) == resultant(g1, h) * resultant(g2, h));
    }
  }

  TEST_CASE("small resultants and discriminants") {
    CHECK(resultant(IPoly{0, 1}, IPoly{-1, 1}) == -1);
    for (const IPoly& f : {IPoly{1, 1}, IPoly{-2, 0, 3}, IPoly{1, 2, 3, 4}}) CHECK(resultant(f, f) == 0);
    CHECK(discriminant(IPoly{-1, 0, 1}) == 4);
    CHECK(discriminant(IPoly{1, -2, 1}) == 0);
    // disc(x^n + a) = (-1)^(n(n-1)/2) n^n a^(n-1)
    for (long a : {1L, -2L, 3L})
      for (int n = 2; n <= 7; ++n) {
        const Int expect = ((n * (n - 1) / 2) % 2 ? -1 : 1) * pow_int(Int(n), static_cast<unsigned long>(n)) *
                           pow_int(Int(a), static_cast<unsigned long>(n - 1));
        CHECK(discriminant(IPoly::monomial(1, n) + IPoly::constant(a)) == expect);
      }
  }

  TEST_CASE("discriminant agrees with resultant definition") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> c(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Int> a(7);
      for (auto& x : a) x = c(rng);
      a.back() = 1 + trial % 3;
      IPoly f(a);
      const long d = f.degree();
      Rat expect = oracle::resultant_euclid(f, f.derivative()) / Rat(f.lc());
      if ((d * (d - 1) / 2) % 2) expect = -expect;
      CHECK(Rat(discriminant(f)) == expect);
    }
  }

  TEST_CASE("parsing") {
    IPoly f = parse_ipoly("1 0 -3 0 -6 0 8");
    CHECK(f == IPoly{8, 0, -6, 0, -3, 0, 1});
    CHECK(parse_ipoly("x^6 - 3x^4 - 6*x^2 + 8") == f);
    CHECK(parse_ipoly("(x^2-1)(x^2-4)(x^2+2)") == f);
    CHECK(parse_ipoly("-x^5 + 1") == IPoly{1, 0, 0, 0, 0, -1});
    CHECK(f.to_coeff_list() == "1 0 -3 0 -6 0 8");
    CHECK(parse_ipoly(f.to_string()) == f);
    CHECK_THROWS_AS(parse_ipoly("x^2 + * 3"), Error);
    try {
      parse_ipoly("x^2 + )");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }

  TEST_CASE("homogeneous evaluation and transforms") {
    IPoly f{1, 2, 3};  // 3x^2 + 2x + 1
    CHECK(f.homogeneous(2, 3, 2) == 3 * 4 + 2 * 2 * 3 + 9);
    CHECK(f.homogeneous(2, 3, 4) == 9 * (3 * 4 + 2 * 2 * 3 + 9));
    CHECK(f.reversed(2) == IPoly{3, 2, 1});
    CHECK(f.compose_affine(1, 2) == IPoly{6, 16, 12});
    CHECK(f.negate_x() == IPoly{1, -2, 3});
    IPoly q;
    CHECK(IPoly::divides_exactly(f * IPoly{-1, 1}, IPoly{-1, 1}, &q));
    CHECK(q == f);
    CHECK_FALSE(IPoly::divides_exactly(f, IPoly{0, 2}, &q));
  }
}
