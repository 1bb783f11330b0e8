#pragma once

#include "hyperpts/ipoly.hpp"
#include "hyperpts/padic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperpts {

/// Place identifier: 0 is the real place, otherwise a prime.
inline constexpr std::uint64_t kRealPlace = 0;

/// Integral model y^2 = f(x) of a hyperelliptic curve.
struct HypCurve {
  IPoly f;
  int genus = 0;
  Int disc;
  /// Primes dividing 2 * lc(f) * disc(f), ascending.
  std::vector<Int> bad_primes;

  int degree() const { return f.degree(); }
  /// Degree 2*ceil(d/2) of the homogenized model.
  int even_degree() const { return 2 * ((f.degree() + 1) / 2); }
  bool is_bad(std::uint64_t p) const;
};

/// Validates f (3 <= deg f <= 10, squarefree) and computes disc and bad primes.
HypCurve make_curve(const IPoly& f);

/// #C(F_q), q = p^extension (extension 1 or 2), on the smooth projective model.
std::uint64_t count_points(const HypCurve& curve, std::uint64_t p, int extension = 1);

enum class Chart { Affine, Inverted };

enum class WitnessKind {
  /// Every value at the coordinate is a square or zero.
  SquareValue,
  /// One polynomial has a Hensel root in the disc around the coordinate, the
  /// others are squares throughout that disc.
  HenselRoot,
  /// Real place: every value at the coordinate is non-negative.
  SignSample,
};

const char* chart_name(Chart c);
const char* witness_kind_name(WitnessKind k);

struct LocalWitness {
  std::uint64_t place = kRealPlace;
  Chart chart = Chart::Affine;
  /// x on the affine chart, z = 1/x on the inverted chart.
  Rat coordinate;
  WitnessKind kind = WitnessKind::SquareValue;
  /// HenselRoot only: the disc is coordinate + p^level Z_p and poly is the
  /// index of the polynomial with the root.
  int level = 0;
  int poly = 0;
  /// Square class of each value at the coordinate.
  std::vector<SquareVerdict> evidence;
};

/// Leaf of an exhausted disc tree: no point with coordinate in center + p^level Z_p.
struct RefutedDisc {
  Chart chart;
  Int center;
  int level;
  /// Index of the polynomial whose square class is constant and non-square on the disc.
  int poly;
};

struct LocalVerdict {
  std::uint64_t place = kRealPlace;
  bool solvable = false;
  std::optional<LocalWitness> witness;
  std::size_t nodes = 0;
  int max_depth = 0;
  int depth_cap = 0;
  /// Refutation tree leaves (truncated beyond a fixed size).
  std::vector<RefutedDisc> refutation;
  bool refutation_truncated = false;
};

LocalVerdict solvable_R(const HypCurve& curve);
LocalVerdict solvable_Qp(const HypCurve& curve, std::uint64_t p);

/// Depth cap v_p(disc) + 2 v_p(4) + 3 for the disc search.
int local_depth_cap(const Int& disc, std::uint64_t p);

// Systems "P_i(x) is a square or zero for every i", the shape shared by the
// curve itself (one polynomial) and the twists d*g, d*h of a two-cover.
// Polynomials are homogenized to even degree at infinity.
LocalVerdict system_solvable_R(const std::vector<IPoly>& polys);
LocalVerdict system_solvable_Qp(const std::vector<IPoly>& polys, std::uint64_t p, int depth_cap);

/// Re-validates a witness independently of the search that produced it.
bool replay_witness(const std::vector<IPoly>& polys, const LocalWitness& w);

struct ElsReport {
  bool solvable = true;
  std::vector<LocalVerdict> places;
  /// First failing place when not solvable.
  std::optional<std::uint64_t> failed_place;
};

/// Primes to test: bad primes together with all p < 4 g^2.
std::vector<std::uint64_t> local_test_primes(const HypCurve& curve);
ElsReport everywhere_locally(const HypCurve& curve);

}  // namespace hyperpts
