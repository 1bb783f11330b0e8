#include <doctest.h>

#include "hyperpts/finite_field.hpp"

using namespace hyperpts;

TEST_SUITE("finite_field") {
  TEST_CASE("F_p arithmetic") {
    FpElem a(5, 13), b(9, 13);
    CHECK((a + b).v == 1);
    CHECK((a - b).v == 9);
    CHECK((a * b).v == 6);
    CHECK((a / b * b) == a);
    CHECK(FpElem::from_rat(Rat(1, 2), 13).v == 7);
    CHECK_THROWS_AS(FpElem::from_rat(Rat(1, 13), 13), Error);
  }

  TEST_CASE("F_p^2 field axioms and square roots") {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 13ull, 17ull}) {
      std::uint64_t nu = smallest_nonresidue(p);
      std::size_t squares = 0;
      for (std::uint64_t a = 0; a < p; ++a) {
        for (std::uint64_t b = 0; b < p; ++b) {
          Fp2Elem x(a, b, p, nu);
          if (!x.is_zero()) CHECK((x * x.inverse()) == Fp2Elem(1, 0, p, nu));
          CHECK(x.pow(std::uint64_t(p * p)) == x);
          CHECK(x.pow(std::uint64_t(p)) == x.frobenius());
          if (x.chi() == 1) {
            ++squares;
            Fp2Elem r = x.sqrt();
            CHECK(r * r == x);
          }
          // every element of F_p is a square in F_p^2
          if (b == 0) CHECK(x.chi() != -1);
        }
      }
      CHECK(squares == (p * p - 1) / 2);
    }
  }
}
