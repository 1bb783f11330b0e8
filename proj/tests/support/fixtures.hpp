#pragma once

// Curves with fully known Mordell-Weil data, shared by several suites.

#include "hyperpts/jacobian.hpp"
#include "hyperpts/sieve.hpp"

#include <vector>

namespace fixture {

using namespace hyperpts;

/// Class of a known point in A = Z^r + sum Z/t_j, before reduction mod n.
struct KnownPoint {
  RatPoint point;  // on the original model
  std::vector<long> coords;
};

struct Fixture {
  HypCurve curve;
  OddModel odd;
  MWInput mw;
  std::vector<KnownPoint> points;
};

/// y^2 = (x^2 - 1)(x^4 - 4). J(Q) = Z D + Z/8 T8 + Z/2 T2 on the odd model
/// X^5 + 5X^4 - 96X^3 + 504X^2 - 1296X + 1296, with D = [(0, 36) - oo],
/// T8 = [(6, -72) - oo], T2 = [(3, 0) - oo].
inline Fixture rank_one_z8() {
  Fixture fx;
  fx.curve = make_curve(IPoly{4, 0, -4, 0, -1, 0, 1});
  fx.odd = to_odd_degree_model(fx.curve);
  const Jacobian<Rat> J = jacobian_q(fx.odd.model);
  fx.mw.curve = fx.odd.model;
  fx.mw.free = {J.point(0, 36)};
  fx.mw.torsion = {J.point(6, -72), J.point(3, 0)};
  fx.mw.torsion_orders = {8, 2};
  fx.mw.index_coprime = true;
  using K = RatPoint::Kind;
  fx.points = {
      {RatPoint::infinity(K::InfinityPlus), {1, 0, 0}},  {RatPoint::infinity(K::InfinityMinus), {-1, 0, 0}},
      {RatPoint::affine(2, 1, 6), {-1, 5, 1}},           {RatPoint::affine(-2, 1, -6), {-1, 3, 0}},
      {RatPoint::affine(-2, 1, 6), {1, 5, 0}},           {RatPoint::affine(0, 1, 2), {0, 1, 0}},
      {RatPoint::affine(0, 1, -2), {0, 7, 0}},           {RatPoint::affine(-1, 1, 0), {0, 0, 1}},
      {RatPoint::affine(1, 1, 0), {0, 0, 0}},
  };
  // (2, -6) is the negative of (2, 6)
  fx.points.push_back({RatPoint::affine(2, 1, -6), {1, 3, 1}});
  return fx;
}

inline std::vector<KnownPoint> plain(std::initializer_list<RatPoint> pts) {
  std::vector<KnownPoint> out;
  for (const RatPoint& p : pts) out.push_back({p, {}});
  return out;
}

/// y^2 = -(x^2 - 1)(x^2 + 1)(x^2 + 4). J is isogenous to E1 x E2 with
/// E1: Y^2 = -(X - 1)(X + 1)(X + 4) of rank 1 and E2: Y^2 = -(1 - X)(1 + X)(1 + 4X)
/// of rank 0, so dx/y kills J(Q). Odd model X^5 - 38X^4 + 720X^3 - 7600X^2 +
/// 48000X - 160000 = (X - 10)(X^2 - 8X + 80)(X^2 - 20X + 200); J(Q) = Z D + (Z/2)^2
/// with D = [(20, -800) - oo], torsion [(10, 0) - oo] and [X^2 - 8X + 80, 0].
inline Fixture rank_one() {
  Fixture fx;
  fx.curve = make_curve(IPoly{4, 0, 1, 0, -4, 0, -1});
  fx.odd = to_odd_degree_model(fx.curve);
  const Jacobian<Rat> J = jacobian_q(fx.odd.model);
  fx.mw.curve = fx.odd.model;
  fx.mw.free = {J.point(20, -800)};
  fx.mw.torsion = {J.point(10, 0), QDiv{{80, -8, 1}, {}}};
  fx.mw.torsion_orders = {2, 2};
  fx.mw.index_coprime = true;
  fx.points = plain({RatPoint::affine(1, 1, 0), RatPoint::affine(-1, 1, 0), RatPoint::affine(0, 1, 2),
                     RatPoint::affine(0, 1, -2)});
  return fx;
}

/// y^2 = (x^2 - 1)(x^2 - 4)(x^2 - 9), rank 0. Odd model X^5 - 20X^4 - 1728X^3 +
/// 2304X^2 + 663552X + 5308416 = (X - 48)(X - 24)(X + 12)(X + 16)(X + 24);
/// J(Q) = Z/6 + (Z/2)^3 generated by [(0, 2304) - oo] (the image of oo+) and
/// the Weierstrass classes at -12, -16, -24.
inline Fixture rank_zero() {
  Fixture fx;
  fx.curve = make_curve(IPoly{-36, 0, 49, 0, -14, 0, 1});
  fx.odd = to_odd_degree_model(fx.curve);
  const Jacobian<Rat> J = jacobian_q(fx.odd.model);
  fx.mw.curve = fx.odd.model;
  fx.mw.torsion = {J.point(0, 2304), J.point(-12, 0), J.point(-16, 0), J.point(-24, 0)};
  fx.mw.torsion_orders = {6, 2, 2, 2};
  fx.mw.index_coprime = true;
  using K = RatPoint::Kind;
  fx.points = plain({RatPoint::infinity(K::InfinityPlus), RatPoint::infinity(K::InfinityMinus)});
  for (long x = 1; x <= 3; ++x)
    for (long s : {1L, -1L}) fx.points.push_back({RatPoint::affine(s * x, 1, 0), {}});
  return fx;
}

/// Known points carried to the odd model.
inline std::vector<RatPoint> odd_points(const Fixture& fx) {
  std::vector<RatPoint> out;
  for (const KnownPoint& k : fx.points) out.push_back(to_odd_point(fx.odd, k.point));
  return out;
}

/// Coordinates of a known point reduced into A/nA.
inline std::vector<std::uint64_t> class_mod(const std::vector<long>& coords, const std::vector<std::uint64_t>& moduli) {
  std::vector<std::uint64_t> c;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const long m = static_cast<long>(moduli[i]);
    c.push_back(static_cast<std::uint64_t>(((coords[i] % m) + m) % m));
  }
  return c;
}

}  // namespace fixture
