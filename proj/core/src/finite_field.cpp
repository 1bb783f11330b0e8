#include "hyperpts/finite_field.hpp"

namespace hyperpts {

FpElem FpElem::from_rat(const Rat& q, std::uint64_t prime) {
  std::uint64_t den = mod_of(q.get_den(), prime);
  if (den == 0) fail(ErrorCode::BadReduction, "denominator divisible by " + std::to_string(prime));
  return FpElem::from_int(q.get_num(), prime) / FpElem(den, prime);
}

FpElem FpElem::inverse() const {
  if (v == 0) fail(ErrorCode::NonInvertibleDivision, "inverse of zero in F_" + std::to_string(p));
  return FpElem(invmod(v, p), p);
}

Fp2Elem operator*(const Fp2Elem& x, const Fp2Elem& y) {
  const std::uint64_t p = x.p;
  std::uint64_t re = (mulmod(x.a, y.a, p) + mulmod(mulmod(x.b, y.b, p), x.nu, p)) % p;
  std::uint64_t im = (mulmod(x.a, y.b, p) + mulmod(x.b, y.a, p)) % p;
  return Fp2Elem(re, im, p, x.nu);
}

FpElem Fp2Elem::norm() const {
  FpElem fa(a, p), fb(b, p), fnu(nu, p);
  return fa * fa - fnu * fb * fb;
}

Fp2Elem Fp2Elem::inverse() const {
  FpElem n = norm();
  if (n.is_zero()) fail(ErrorCode::NonInvertibleDivision, "inverse of zero in F_" + std::to_string(p) + "^2");
  FpElem ni = n.inverse();
  return Fp2Elem(mulmod(a, ni.v, p), mulmod(b == 0 ? 0 : p - b, ni.v, p), p, nu);
}

Fp2Elem Fp2Elem::pow(std::uint64_t e) const {
  Fp2Elem result(1, 0, p, nu), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Fp2Elem Fp2Elem::pow(const Int& e) const {
  Fp2Elem result(1, 0, p, nu), base = *this;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result *= result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result *= base;
  }
  return result;
}

int Fp2Elem::chi() const {
  if (is_zero()) return 0;
  return norm().chi();
}

Fp2Elem Fp2Elem::sqrt() const {
  if (is_zero()) return *this;
  // order of the multiplicative group q - 1 = 2^s * t, t odd
  Int q1 = Int(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p) - 1;
  Int t = q1;
  unsigned s = 0;
  while (mpz_even_p(t.get_mpz_t())) {
    t /= 2;
    ++s;
  }
  // any k + s with non-residue norm k^2 - nu is a non-square
  Fp2Elem z;
  for (std::uint64_t k = 1;; ++k) {
    z = Fp2Elem(k, 1, p, nu);
    if (z.chi() == -1) break;
  }
  Fp2Elem c = z.pow(t);
  Fp2Elem x = pow(Int((t + 1) / 2));
  Fp2Elem b = pow(t);
  unsigned m = s;
  const Fp2Elem one(1, 0, p, nu);
  while (b != one) {
    unsigned i = 0;
    Fp2Elem bb = b;
    while (bb != one) {
      bb *= bb;
      ++i;
    }
    require(i < m, "square root of a non-square in F_p^2");
    Fp2Elem g = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) g *= g;
    x *= g;
    c = g * g;
    b *= c;
    m = i;
  }
  return x;
}

std::string Fp2Elem::to_string() const {
  if (b == 0) return std::to_string(a);
  return std::to_string(a) + "+" + std::to_string(b) + "*s";
}

FpElem random_fp(std::uint64_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  return FpElem(dist(rng), p);
}

Fp2Elem random_fp2(std::uint64_t p, std::uint64_t nu, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  std::uint64_t a = dist(rng);
  return Fp2Elem(a, dist(rng), p, nu);
}

}  // namespace hyperpts
