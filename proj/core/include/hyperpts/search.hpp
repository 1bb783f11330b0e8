#pragma once

#include "hyperpts/curve.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hyperpts {

/// A rational point of the smooth model y^2 = f(x).
struct RatPoint {
  enum class Kind {
    Affine,
    /// The single point at infinity of an odd-degree model.
    Infinity,
    /// The points at infinity of an even-degree model, y/x^(g+1) = +-sqrt(lc).
    InfinityPlus,
    InfinityMinus,
  };

  Kind kind = Kind::Affine;
  /// x = a/b with b > 0 and gcd(a, b) = 1 (affine points only).
  Int a = 0;
  Int b = 1;
  Rat y = 0;

  static RatPoint affine(const Int& a, const Int& b, const Rat& y);
  static RatPoint infinity(Kind kind);

  bool is_affine() const { return kind == Kind::Affine; }
  Rat x() const;
  std::string to_string() const;

  friend bool operator==(const RatPoint& l, const RatPoint& r) {
    return l.kind == r.kind && l.a == r.a && l.b == r.b && l.y == r.y;
  }
  friend bool operator<(const RatPoint& l, const RatPoint& r);
};

const char* point_kind_name(RatPoint::Kind k);

/// Exact check that the point lies on the curve.
bool verify_point(const HypCurve& curve, const RatPoint& pt);

/// Rational points at infinity of the model.
std::vector<RatPoint> points_at_infinity(const HypCurve& curve);

struct SearchReport {
  std::uint64_t bound = 0;
  std::vector<std::uint64_t> moduli;
  std::vector<RatPoint> points;
  /// Coprime pairs (a, b) with |a| <= H, 1 <= b <= H.
  std::uint64_t total_pairs = 0;
  /// Coprime pairs that passed the sieve and were tested exactly.
  std::uint64_t tested = 0;
  /// Coprime pairs rejected by the sieve.
  std::uint64_t eliminated = 0;
  double seconds = 0;
};

inline constexpr std::uint64_t kQuickSearchBound = 80;
inline constexpr std::uint64_t kSearchBound = 1519;

/// Default moduli 16, 9, 5, 7, 11, 13.
std::vector<std::uint64_t> default_sieve_moduli();

/// All rational points with x = a/b, |a| <= H, 1 <= b <= H, plus those at
/// infinity, found with a residue sieve over the given moduli.
SearchReport search(const HypCurve& curve, std::uint64_t bound,
                    const std::vector<std::uint64_t>& moduli = default_sieve_moduli());

/// Same contract without sieving; bound at most 1000.
SearchReport brute_search(const HypCurve& curve, std::uint64_t bound);

}  // namespace hyperpts
