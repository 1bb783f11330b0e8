#include <doctest.h>

#include "hyperpts/factor.hpp"

#include <random>

using namespace hyperpts;

namespace {

// Irreducibility of a primitive polynomial of degree <= 3 over Q by the
// rational root theorem.
bool has_rational_root(const IPoly& f) {
  Int a0 = f.coeff(0), ad = f.lc();
  if (a0 == 0) return true;
  std::vector<Int> num_divs, den_divs;
  for (Int d = 1; d <= abs(a0); ++d)
    if (a0 % d == 0) num_divs.push_back(d);
  for (Int d = 1; d <= abs(ad); ++d)
    if (ad % d == 0) den_divs.push_back(d);
  for (auto& n : num_divs)
    for (auto& d : den_divs)
      for (int s : {1, -1})
        if (f(Rat(s * n, d)) == 0) return true;
  return false;
}

/// Monic integer quadratic dividing f, by search over bounded coefficients.
bool has_quadratic_factor(const IPoly& f, long bound) {
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b) {
      IPoly q;
      if (IPoly::divides_exactly(f, IPoly{b, a, 1}, &q)) return true;
    }
  return false;
}

}  // namespace

TEST_SUITE("factor") {
  TEST_CASE("known factorizations") {
    auto fac = factor_ipoly(-(IPoly{-1, 1, 1} * IPoly{2, 1, 1, 1, 1}));
    CHECK(fac.content == -1);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0].poly == IPoly{-1, 1, 1});
    CHECK(fac.factors[1].poly == IPoly{2, 1, 1, 1, 1});

    auto f6 = factor_ipoly(IPoly{-1, 0, 0, 0, 0, 0, 1});
    CHECK(f6.factors.size() == 4);  // (x-1)(x+1)(x^2+x+1)(x^2-x+1)
    CHECK(factor_ipoly(IPoly{1, 0, 0, 0, 1}).factors.size() == 1);

    auto sq = factor_ipoly(IPoly{4, -4, 1} * IPoly{4, -4, 1} * IPoly{1, 0, 3});
    REQUIRE(sq.factors.size() == 2);
    CHECK(sq.factors[0].poly == IPoly{-2, 1});
    CHECK(sq.factors[0].multiplicity == 4);

    CHECK_THROWS_AS(factor_ipoly(IPoly::monomial(1, 11)), Error);
  }

  TEST_CASE("x^4 + 1 is irreducible") {
    const IPoly f{1, 0, 0, 0, 1};
    // roots have absolute value 1, so a monic quadratic factor has |coefficients| <= 2
    CHECK_FALSE(has_rational_root(f));
    CHECK_FALSE(has_quadratic_factor(f, 4));
    const auto fac = factor_ipoly(f);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].poly == f);
    CHECK(fac.factors[0].multiplicity == 1);
    // control: the oracle sees the factors of x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
    CHECK(has_quadratic_factor(IPoly{4, 0, 0, 0, 1}, 4));
    CHECK(factor_ipoly(IPoly{4, 0, 0, 0, 1}).factors.size() == 2);
  }

  TEST_CASE("round trip on random polynomials of degree at most 8") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> c(-9, 9);
    std::uniform_int_distribution<int> deg(1, 8);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<Int> co(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : co) x = c(rng);
      if (co.back() == 0) co.back() = -3;
      // every fourth input gets a repeated factor
      IPoly f(co);
      if (trial % 4 == 0 && f.degree() <= 6) f = f * IPoly{c(rng), 1};
      if (trial % 8 == 0 && f.degree() <= 7) f = f * IPoly{1, 1};
      const auto fac = factor_ipoly(f);
      CHECK(expand(fac) == f);
    }
  }

  TEST_CASE("round trip and irreducibility of random products") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> c(-4, 4);
    for (int trial = 0; trial < 300; ++trial) {
      IPoly f = IPoly::constant(c(rng) == 0 ? 3 : -2);
      int parts = 1 + trial % 3;
      for (int i = 0; i < parts; ++i) {
        std::vector<Int> co(2 + (trial + i) % 3);
        for (auto& x : co) x = c(rng);
        if (co.back() == 0) co.back() = 1;
        f = f * IPoly(co);
      }
      if (f.degree() > 10 || f.degree() < 1) continue;
      auto fac = factor_ipoly(f);
      CHECK(expand(fac) == f);
      for (auto& fc : fac.factors) {
        CHECK(fc.poly.content() == 1);
        CHECK(fc.poly.lc() > 0);
        if (fc.poly.degree() >= 2 && fc.poly.degree() <= 3) CHECK_FALSE(has_rational_root(fc.poly));
      }
    }
  }
}
