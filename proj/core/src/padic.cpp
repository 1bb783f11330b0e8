#include "hyperpts/padic.hpp"

#include <algorithm>

namespace hyperpts {

namespace {

Int ppow(std::uint64_t p, int k) { return pow_int(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(std::max(k, 0))); }

}  // namespace

PadicNum::PadicNum(std::uint64_t p, int val, Int unit, int rel) : p_(p), val_(val), unit_(std::move(unit)), rel_(rel) {
  normalize();
}

void PadicNum::normalize() {
  if (rel_ <= 0) {
    rel_ = 0;
    unit_ = 0;
    return;
  }
  Int m = ppow(p_, rel_);
  unit_ = mod_floor(unit_, m);
  if (unit_ == 0) {
    val_ += rel_;
    rel_ = 0;
    return;
  }
  int k = remove_factor(unit_, p_);
  val_ += k;
  rel_ -= k;
  unit_ = mod_floor(unit_, ppow(p_, rel_));
}

PadicNum PadicNum::from_rat(const Rat& t, std::uint64_t p, int abs_prec) {
  if (t == 0) return zero(p, abs_prec);
  int v = hyperpts::valuation(t, p);
  if (v >= abs_prec) return zero(p, abs_prec);
  int rel = abs_prec - v;
  Int num = t.get_num(), den = t.get_den();
  remove_factor(num, p);
  remove_factor(den, p);
  Int m = ppow(p, rel), inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  return PadicNum(p, v, mod_floor(num * inv, m), rel);
}

PadicNum PadicNum::zero(std::uint64_t p, int abs_prec) {
  PadicNum z;
  z.p_ = p;
  z.val_ = abs_prec;
  z.rel_ = 0;
  z.unit_ = 0;
  return z;
}

Rat PadicNum::lift() const {
  if (is_zero()) return Rat(0);
  if (val_ >= 0) return Rat(unit_ * ppow(p_, val_));
  Rat r(unit_, ppow(p_, -val_));
  r.canonicalize();
  return r;
}

Int PadicNum::residue(int k) const {
  require(k <= absolute_precision(), "residue beyond known precision");
  require(val_ >= 0 || is_zero(), "residue of a non-integral element");
  if (is_zero()) return Int(0);
  return mod_floor(unit_ * ppow(p_, val_), ppow(p_, k));
}

PadicNum PadicNum::operator-() const {
  if (is_zero()) return *this;
  return PadicNum(p_, val_, -unit_, rel_);
}

PadicNum operator+(const PadicNum& a, const PadicNum& b) {
  require(a.p_ == b.p_, "p-adic numbers with different primes");
  const int abs_prec = std::min(a.absolute_precision(), b.absolute_precision());
  if (a.is_zero() && b.is_zero()) return PadicNum::zero(a.p_, abs_prec);
  const int vmin = std::min(a.is_zero() ? abs_prec : a.val_, b.is_zero() ? abs_prec : b.val_);
  if (vmin >= abs_prec) return PadicNum::zero(a.p_, abs_prec);
  Int s = 0;
  if (!a.is_zero()) s += a.unit_ * ppow(a.p_, a.val_ - vmin);
  if (!b.is_zero()) s += b.unit_ * ppow(b.p_, b.val_ - vmin);
  return PadicNum(a.p_, vmin, s, abs_prec - vmin);
}

PadicNum operator*(const PadicNum& a, const PadicNum& b) {
  require(a.p_ == b.p_, "p-adic numbers with different primes");
  if (a.is_zero() || b.is_zero()) return PadicNum::zero(a.p_, a.val_ + b.val_);
  return PadicNum(a.p_, a.val_ + b.val_, a.unit_ * b.unit_, std::min(a.rel_, b.rel_));
}

PadicNum PadicNum::inverse() const {
  if (is_zero()) fail(ErrorCode::NonInvertibleDivision, "inverse of p-adic zero O(p^" + std::to_string(val_) + ")");
  Int m = ppow(p_, rel_), inv;
  mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), m.get_mpz_t());
  return PadicNum(p_, -val_, inv, rel_);
}

bool PadicNum::congruent(const PadicNum& other) const { return (*this - other).is_zero(); }

std::string PadicNum::to_string() const {
  if (is_zero()) return "O(" + std::to_string(p_) + "^" + std::to_string(val_) + ")";
  return hyperpts::to_string(lift()) + " + O(" + std::to_string(p_) + "^" + std::to_string(absolute_precision()) + ")";
}

const char* square_verdict_name(SquareVerdict v) {
  switch (v) {
    case SquareVerdict::Square: return "SQUARE";
    case SquareVerdict::NonSquare: return "NONSQUARE";
    case SquareVerdict::Zero: return "ZERO";
  }
  return "?";
}

namespace {

bool unit_is_square(const Int& unit, std::uint64_t p) {
  if (p == 2) return mod_of(unit, 8) == 1;
  return legendre(mod_of(unit, p), p) == 1;
}

}  // namespace

SquareVerdict square_verdict(const Rat& t, std::uint64_t p) {
  if (t == 0) return SquareVerdict::Zero;
  Int num = t.get_num(), den = t.get_den();
  int v = remove_factor(num, p) - remove_factor(den, p);
  if (v % 2 != 0) return SquareVerdict::NonSquare;
  // num/den is a unit; it is a square iff num*den is
  return unit_is_square(num * den, p) ? SquareVerdict::Square : SquareVerdict::NonSquare;
}

bool is_square_qp(const Rat& t, std::uint64_t p) { return square_verdict(t, p) != SquareVerdict::NonSquare; }

Int sqrt_unit_mod_pk(const Int& u, std::uint64_t p, int k) {
  const Int m = ppow(p, k);
  if (p == 2) {
    require(mod_of(u, 8) == 1, "2-adic unit is not a square");
    Int r = 1;
    for (int i = 3; i < k; ++i) {
      Int mod = ppow(2, i + 1);
      if (mod_floor(r * r - u, mod) != 0) r += ppow(2, i - 1);
    }
    return mod_floor(r, m);
  }
  std::uint64_t r0 = sqrt_mod_prime(mod_of(u, p), p);
  require(r0 != 0, "square root of a non-unit");
  Int r = static_cast<unsigned long>(r0);
  Int pk = static_cast<unsigned long>(p);
  for (int i = 1; i < k; ++i) {
    pk *= static_cast<unsigned long>(p);
    // Newton step r <- r - (r^2 - u) / (2r)
    Int inv;
    Int two_r = 2 * r;
    mpz_invert(inv.get_mpz_t(), two_r.get_mpz_t(), pk.get_mpz_t());
    r = mod_floor(r - (r * r - u) * inv, pk);
  }
  return mod_floor(r, m);
}

SquareClass sqclass_qp(const Rat& t, std::uint64_t p, int precision) {
  SquareClass out;
  out.verdict = square_verdict(t, p);
  if (out.verdict != SquareVerdict::Square) return out;
  int v = valuation(t, p);
  PadicNum unit = PadicNum::from_rat(t, p, v + precision);
  // For p = 2 the root of a unit is determined modulo 2^(k-1) only.
  int root_prec = p == 2 ? precision - 1 : precision;
  Int r = sqrt_unit_mod_pk(unit.unit(), p, precision);
  out.witness = PadicNum::from_rat(Rat(r) * (v >= 0 ? Rat(ppow(p, v / 2)) : Rat(Int(1), ppow(p, -v / 2))), p, v / 2 + root_prec);
  return out;
}

}  // namespace hyperpts
