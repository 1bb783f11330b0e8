#include "hyperpts/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <tuple>

namespace hyperpts {

RatPoint RatPoint::affine(const Int& a, const Int& b, const Rat& y) {
  RatPoint pt;
  pt.kind = Kind::Affine;
  pt.a = a;
  pt.b = b;
  pt.y = y;
  return pt;
}

RatPoint RatPoint::infinity(Kind kind) {
  RatPoint pt;
  pt.kind = kind;
  return pt;
}

Rat RatPoint::x() const {
  require(is_affine(), "x-coordinate of a point at infinity");
  Rat x(a, b);
  x.canonicalize();
  return x;
}

const char* point_kind_name(RatPoint::Kind k) {
  switch (k) {
    case RatPoint::Kind::Affine: return "affine";
    case RatPoint::Kind::Infinity: return "infinity";
    case RatPoint::Kind::InfinityPlus: return "infinity+";
    case RatPoint::Kind::InfinityMinus: return "infinity-";
  }
  return "?";
}

std::string RatPoint::to_string() const {
  if (!is_affine()) return point_kind_name(kind);
  return "(" + hyperpts::to_string(x()) + ", " + hyperpts::to_string(y) + ")";
}

bool operator<(const RatPoint& l, const RatPoint& r) {
  if (l.kind != r.kind) return l.kind < r.kind;
  return std::tie(l.b, l.a, l.y) < std::tie(r.b, r.a, r.y);
}

bool verify_point(const HypCurve& curve, const RatPoint& pt) {
  if (!pt.is_affine()) {
    if (pt.kind == RatPoint::Kind::Infinity) return curve.degree() % 2 == 1;
    return curve.degree() % 2 == 0 && is_square(curve.f.lc());
  }
  if (pt.b <= 0 || gcd(pt.a, pt.b) != 1) return false;
  return pt.y * pt.y == curve.f(pt.x());
}

std::vector<RatPoint> points_at_infinity(const HypCurve& curve) {
  if (curve.degree() % 2 == 1) return {RatPoint::infinity(RatPoint::Kind::Infinity)};
  if (is_square(curve.f.lc()))
    return {RatPoint::infinity(RatPoint::Kind::InfinityPlus), RatPoint::infinity(RatPoint::Kind::InfinityMinus)};
  return {};
}

std::vector<std::uint64_t> default_sieve_moduli() { return {16, 9, 5, 7, 11, 13}; }

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

/// Points over x = a/b given the homogeneous value F(a, b) = s^2, D even.
void add_points(std::vector<RatPoint>& out, const Int& a, const Int& b, const Int& s, int D) {
  const Int den = pow_int(b, static_cast<unsigned long>(D / 2));
  Rat y(s, den);
  y.canonicalize();
  out.push_back(RatPoint::affine(a, b, y));
  if (s != 0) out.push_back(RatPoint::affine(a, b, -y));
}

/// Number of a in [-H, H] with gcd(a, b) = 1, by inclusion-exclusion over the
/// prime divisors of b.
std::uint64_t coprime_count(std::uint64_t b, std::uint64_t H) {
  std::vector<std::uint64_t> ps;
  std::uint64_t m = b;
  for (std::uint64_t q = 2; q * q <= m; ++q)
    if (m % q == 0) {
      ps.push_back(q);
      while (m % q == 0) m /= q;
    }
  if (m > 1) ps.push_back(m);
  std::int64_t total = 0;
  for (std::uint64_t mask = 0; mask < (1ull << ps.size()); ++mask) {
    std::uint64_t d = 1;
    int bits = 0;
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (mask >> i & 1) {
        d *= ps[i];
        ++bits;
      }
    std::int64_t c = 2 * static_cast<std::int64_t>(H / d) + 1;
    total += bits % 2 ? -c : c;
  }
  return static_cast<std::uint64_t>(total);
}

bool isqrt128(u128 n, u128& root) {
  if (n == 0) {
    root = 0;
    return true;
  }
  long double est = std::sqrt(static_cast<long double>(n));
  u128 r = static_cast<u128>(est);
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  root = r;
  return r * r == n;
}

/// Whether |F(a, b)| stays below 2^125 for |a|, |b| <= H, so that Horner
/// evaluation in 128-bit integers cannot overflow.
bool fits_int128(const IPoly& f, std::uint64_t H, int D) {
  Int sum = 0;
  for (const Int& c : f.coeffs()) sum += abs(c);
  Int bound = sum * pow_int(Int(static_cast<unsigned long>(H)), static_cast<unsigned long>(D));
  return mpz_sizeinbase(bound.get_mpz_t(), 2) < 120 && mpz_sizeinbase(sum.get_mpz_t(), 2) < 60;
}

class Scanner {
 public:
  Scanner(const HypCurve& curve, std::uint64_t H) : curve_(curve), D_(curve.even_degree()) {
    small_ = fits_int128(curve.f, H, D_);
    if (small_)
      for (const Int& c : curve.f.coeffs()) coeffs128_.push_back(static_cast<i128>(c.get_si()));
  }

  /// Exact test of one coprime pair.
  void test(std::int64_t a, std::uint64_t b, std::vector<RatPoint>& out) const {
    if (small_) {
      // F(a, b) = b^(D-d) * sum f_i a^i b^(d-i), Horner in a
      const int d = curve_.degree();
      i128 bpow[12];
      bpow[0] = 1;
      for (int k = 1; k <= D_; ++k) bpow[k] = bpow[k - 1] * static_cast<i128>(b);
      i128 acc = coeffs128_[static_cast<std::size_t>(d)];
      for (int i = d - 1; i >= 0; --i) acc = acc * a + coeffs128_[static_cast<std::size_t>(i)] * bpow[d - i];
      acc *= bpow[D_ - d];
      if (acc < 0) return;
      u128 r;
      if (!isqrt128(static_cast<u128>(acc), r)) return;
      add_points(out, Int(static_cast<long>(a)), Int(static_cast<unsigned long>(b)), u128_to_int(r), D_);
      return;
    }
    const Int A = static_cast<long>(a), B = static_cast<unsigned long>(b);
    const Int F = curve_.f.homogeneous(A, B, D_);
    Int s;
    if (is_square(F, &s)) add_points(out, A, B, s, D_);
  }

 private:
  static Int u128_to_int(u128 v) {
    Int hi = static_cast<unsigned long>(v >> 64), lo = static_cast<unsigned long>(v & ~std::uint64_t(0));
    return hi * pow_int(Int(2), 64) + lo;
  }

  const HypCurve& curve_;
  int D_;
  bool small_ = false;
  std::vector<i128> coeffs128_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void finish(SearchReport& rep, const HypCurve& curve) {
  for (const RatPoint& pt : points_at_infinity(curve)) rep.points.push_back(pt);
  std::sort(rep.points.begin(), rep.points.end());
}

}  // namespace

SearchReport search(const HypCurve& curve, std::uint64_t H, const std::vector<std::uint64_t>& moduli) {
  const auto t0 = std::chrono::steady_clock::now();
  SearchReport rep;
  rep.bound = H;
  rep.moduli = moduli;
  const int D = curve.even_degree();
  const std::size_t width = 2 * H + 1, words = (width + 63) / 64;

  // pattern[m][b mod m] = bitset over a in [-H, H] of admissible residues
  std::vector<std::vector<std::vector<std::uint64_t>>> pattern;
  for (std::uint64_t m : moduli) {
    require(m >= 2, "sieve modulus below 2");
    std::vector<char> square(m, 0);
    for (std::uint64_t y = 0; y < m; ++y) square[y * y % m] = 1;
    std::vector<std::vector<std::uint64_t>> per_b(m, std::vector<std::uint64_t>(words, 0));
    for (std::uint64_t rb = 0; rb < m; ++rb) {
      std::vector<char> ok(m, 0);
      for (std::uint64_t ra = 0; ra < m; ++ra)
        ok[ra] = square[mod_of(curve.f.homogeneous(Int(static_cast<unsigned long>(ra)), Int(static_cast<unsigned long>(rb)), D), m)];
      for (std::size_t i = 0; i < width; ++i) {
        const std::int64_t a = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(H);
        const std::uint64_t ra = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(m)) + static_cast<std::int64_t>(m)) % static_cast<std::int64_t>(m));
        if (ok[ra]) per_b[rb][i / 64] |= std::uint64_t(1) << (i % 64);
      }
    }
    pattern.push_back(std::move(per_b));
  }

  Scanner scan(curve, H);
  std::vector<std::uint64_t> row(words);
  for (std::uint64_t b = 1; b <= H; ++b) {
    rep.total_pairs += coprime_count(b, H);
    std::fill(row.begin(), row.end(), ~std::uint64_t(0));
    if (width % 64) row.back() = (std::uint64_t(1) << (width % 64)) - 1;
    for (std::size_t k = 0; k < moduli.size(); ++k) {
      const auto& bits = pattern[k][b % moduli[k]];
      for (std::size_t w = 0; w < words; ++w) row[w] &= bits[w];
    }
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bitsw = row[w];
      while (bitsw) {
        const int t = __builtin_ctzll(bitsw);
        bitsw &= bitsw - 1;
        const std::int64_t a = static_cast<std::int64_t>(w * 64 + t) - static_cast<std::int64_t>(H);
        if (std::gcd(static_cast<std::uint64_t>(a < 0 ? -a : a), b) != 1) continue;
        ++rep.tested;
        scan.test(a, b, rep.points);
      }
    }
  }
  rep.eliminated = rep.total_pairs - rep.tested;
  finish(rep, curve);
  rep.seconds = seconds_since(t0);
  return rep;
}

SearchReport brute_search(const HypCurve& curve, std::uint64_t H) {
  require(H <= 1000, "brute_search is limited to H <= 1000");
  const auto t0 = std::chrono::steady_clock::now();
  SearchReport rep;
  rep.bound = H;
  const int D = curve.even_degree();
  for (std::uint64_t b = 1; b <= H; ++b) {
    for (std::int64_t a = -static_cast<std::int64_t>(H); a <= static_cast<std::int64_t>(H); ++a) {
      const Int A = static_cast<long>(a), B = static_cast<unsigned long>(b);
      if (gcd(A, B) != 1) continue;
      ++rep.total_pairs;
      ++rep.tested;
      Int s;
      if (is_square(curve.f.homogeneous(A, B, D), &s)) add_points(rep.points, A, B, s, D);
    }
  }
  finish(rep, curve);
  rep.seconds = seconds_since(t0);
  return rep;
}

}  // namespace hyperpts
