#include <doctest.h>

#include "hyperpts/padic.hpp"
#include "oracles.hpp"

#include <random>
#include <set>

using namespace hyperpts;

TEST_SUITE("padic") {
  TEST_CASE("square classes agree with residues modulo p^k") {
    // a unit is a square in Q_p iff it is a square mod p (odd p) or mod 8
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
      for (long n = -60; n <= 60; ++n) {
        if (n == 0) continue;
        Rat t(n);
        Int u(n);
        int v = remove_factor(u, p);
        bool expect = v % 2 == 0 && oracle::is_square_mod_pk(Rat(u), p, p == 2 ? 3 : 1);
        CHECK(is_square_qp(t, p) == expect);
        CHECK(is_square_qp(Rat(n, 49 * 25 * 9 * 4), p) == expect);
      }
    }
    CHECK(square_verdict(Rat(0), 5) == SquareVerdict::Zero);
    CHECK(is_square_qp(Rat(-7), 2));
    CHECK_FALSE(is_square_qp(Rat(-1), 3));
  }

  TEST_CASE("square classes agree with squares modulo p^6, exhaustively") {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
      const Int pk = pow_int(Int(static_cast<unsigned long>(p)), 6);
      const std::uint64_t m = pk.get_ui();
      std::set<std::uint64_t> squares;
      for (std::uint64_t y = 0; y < m; ++y) squares.insert(y * y % m);
      for (long num = -50; num <= 50; ++num) {
        if (num == 0) continue;
        for (long den = 1; den <= 50; ++den) {
          if (std::gcd(num, den) != 1) continue;
          // t den^2 = num den, with an even power of p removed
          Int n = Int(num) * den;
          int v = remove_factor(n, p);
          bool expect = false;
          if (v % 2 == 0) expect = squares.count(mod_floor(n, pk).get_ui()) > 0;
          INFO("p = " << p << ", t = " << num << "/" << den);
          CHECK((sqclass_qp(Rat(num, den), p).verdict == SquareVerdict::Square) == expect);
        }
      }
    }
  }

  TEST_CASE("reported precision never exceeds what the inputs support") {
    // Every lift of a and b within their precision must give the same result
    // up to the reported precision; checked over a full set of perturbations.
    std::mt19937_64 rng(31);
    for (std::uint64_t p : {3ull, 5ull}) {
      const Rat P(Int(static_cast<unsigned long>(p)));
      std::uniform_int_distribution<long> c(-400, 400);
      std::uniform_int_distribution<int> prec(1, 5), shift(-2, 3);
      for (int trial = 0; trial < 300; ++trial) {
        auto draw = [&] {
          long n = c(rng);
          if (n == 0) n = 1;
          Rat t(n);
          const int s = shift(rng);
          for (int i = 0; i < std::abs(s); ++i) t = s > 0 ? Rat(t * P) : Rat(t / P);
          return PadicNum::from_rat(t, p, valuation(t, p) + prec(rng));
        };
        const PadicNum a = draw(), b = draw();
        const PadicNum sum = a + b, prod = a * b, diff = a - b;
        const int ka = a.absolute_precision(), kb = b.absolute_precision();
        auto step = [&](int k) {
          Rat r(1);
          for (int i = 0; i < std::abs(k); ++i) r = k > 0 ? Rat(r * P) : Rat(r / P);
          return r;
        };
        for (std::uint64_t e = 0; e < p * p; ++e)
          for (std::uint64_t f = 0; f < p * p; ++f) {
            const Rat a2 = a.lift() + step(ka) * Rat(Int(static_cast<unsigned long>(e)));
            const Rat b2 = b.lift() + step(kb) * Rat(Int(static_cast<unsigned long>(f)));
            auto agrees = [&](const Rat& exact, const PadicNum& reported) {
              const Rat gap = exact - reported.lift();
              return gap == 0 || valuation(gap, p) >= reported.absolute_precision();
            };
            CHECK(agrees(a2 + b2, sum));
            CHECK(agrees(a2 - b2, diff));
            CHECK(agrees(a2 * b2, prod));
          }
      }
    }
  }

  TEST_CASE("witness roots square back") {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 13ull}) {
      for (long n : {1L, -7L, 17L, 4L * 17, 9L * 25, -15L, 41L, 33L}) {
        auto sc = sqclass_qp(Rat(n, 1), p, 10);
        if (sc.verdict != SquareVerdict::Square) continue;
        PadicNum r = sc.witness;
        PadicNum t = PadicNum::from_rat(Rat(n), p, 40);
        CHECK((r * r).congruent(t));
        CHECK((r * r).absolute_precision() >= valuation(Rat(n), p) + (p == 2 ? 9 : 10));
      }
    }
  }

  TEST_CASE("precision bookkeeping") {
    PadicNum a = PadicNum::from_rat(Rat(1, 3), 5, 6);
    PadicNum b = PadicNum::from_rat(Rat(25), 5, 10);
    CHECK(a.valuation() == 0);
    CHECK(a.relative_precision() == 6);
    CHECK(b.valuation() == 2);
    CHECK((a * b).relative_precision() == 6);
    CHECK((a + b).absolute_precision() == 6);
    PadicNum c = a / b;
    CHECK(c.valuation() == -2);
    CHECK(c.absolute_precision() == 4);
    PadicNum d = a - PadicNum::from_rat(Rat(1, 3) + 125, 5, 8);
    CHECK(d.valuation() == 3);
    CHECK(d.relative_precision() == 3);
    PadicNum z = a - a;
    CHECK(z.is_zero());
    CHECK_THROWS_AS(z.inverse(), Error);
    CHECK((a * a.inverse()).congruent(PadicNum::from_int(1, 5, 20)));
    CHECK(a.lift() * 3 - 1 == Rat(a.lift() * 3 - 1));
    CHECK(valuation(a.lift() * 3 - 1, 5) >= 6);
  }
}
