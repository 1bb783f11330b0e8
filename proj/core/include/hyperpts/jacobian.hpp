#pragma once

#include "hyperpts/curve.hpp"
#include "hyperpts/mumford.hpp"
#include "hyperpts/search.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

namespace hyperpts {

using QDiv = MumfordDiv<Rat>;
using FpDiv = MumfordDiv<FpElem>;

/// Monic quintic model Y^2 = F(X) birational to a genus-2 curve.
///
/// Quintic f:  X = L x,           Y = L^2 y,            L = lc f.
/// Sextic f with rational root r, t = 1/(x - r), G(t) = t^6 f(r + 1/t):
///             X = L t,           Y = L^2 D y t^3,      D^2 G integral, L = lc(D^2 G).
struct OddModel {
  HypCurve original;
  HypCurve model;
  std::optional<Rat> root;
  Int scale = 1;  // L
  Int denom = 1;  // D
};

/// Throws NO_RATIONAL_WEIERSTRASS for a sextic without a rational root.
OddModel to_odd_degree_model(const HypCurve& curve);

RatPoint to_odd_point(const OddModel& m, const RatPoint& p);
RatPoint from_odd_point(const OddModel& m, const RatPoint& p);

Jacobian<Rat> jacobian_q(const HypCurve& odd);
Jacobian<FpElem> jacobian_fp(const HypCurve& odd, std::uint64_t p);
Jacobian<Fp2Elem> jacobian_fp2(const HypCurve& odd, std::uint64_t p);
Jacobian<PadicNum> jacobian_qp(const HypCurve& odd, std::uint64_t p, int precision);

/// [P - infinity] for a point of the odd model (identity for infinity).
QDiv embed_point(const RatPoint& p);

/// Coefficientwise reduction; BAD_REDUCTION when p divides a denominator.
FpDiv reduce_div(const QDiv& d, std::uint64_t p);

/// #J(F_p) = (N1^2 + N2)/2 - p for a genus-2 curve at a good odd prime.
Int jac_order_fp(const HypCurve& curve, std::uint64_t p);

/// Random element of J(F_p): u drawn uniformly among monic quadratics,
/// redrawn until f mod u has a square root.
FpDiv random_div_fp(const Jacobian<FpElem>& jac, std::mt19937_64& rng);

/// Elements of C(F_p) on the odd model as [P - infinity], infinity excluded.
std::vector<FpDiv> affine_point_divs(const Jacobian<FpElem>& jac);

struct DivKey {
  std::uint64_t w[5];
  friend bool operator==(const DivKey& a, const DivKey& b) {
    for (int i = 0; i < 5; ++i)
      if (a.w[i] != b.w[i]) return false;
    return true;
  }
};

struct DivKeyHash {
  std::size_t operator()(const DivKey& k) const;
};

DivKey div_key(const FpDiv& d);

/// Abelian group structure of J(F_p), Z/n_1 + ... + Z/n_k with n_1 | n_2 | ...
class JacGroupFp {
 public:
  std::uint64_t prime() const { return p_; }
  const Jacobian<FpElem>& jacobian() const { return jac_; }
  const Int& order() const { return order_; }
  const std::vector<std::uint64_t>& invariants() const { return invariants_; }
  const std::vector<FpDiv>& basis() const { return basis_; }

  /// Coordinates of d with respect to the basis, entry i reduced mod n_i.
  std::vector<std::uint64_t> dlog(const FpDiv& d) const;
  FpDiv element(const std::vector<std::uint64_t>& coords) const;
  std::uint64_t order_of(const FpDiv& d) const;

 private:
  friend JacGroupFp group_structure_fp(const HypCurve& odd, std::uint64_t p, std::uint64_t seed);

  /// Full table of one Sylow subgroup: element -> coordinates in its SNF basis.
  struct Sylow {
    std::uint64_t ell = 0;
    std::uint64_t size = 0;
    std::vector<std::uint64_t> invariants;  // ascending powers of ell
    std::unordered_map<DivKey, std::vector<std::uint64_t>, DivKeyHash> table;
  };

  explicit JacGroupFp(Jacobian<FpElem> jac) : jac_(std::move(jac)) {}

  std::uint64_t p_ = 0;
  Jacobian<FpElem> jac_;
  Int order_;
  std::vector<std::uint64_t> invariants_;
  std::vector<FpDiv> basis_;
  std::vector<Sylow> sylows_;
};

/// Deterministic given the seed. CAP_EXCEEDED above 4 * 10^6 elements.
JacGroupFp group_structure_fp(const HypCurve& odd, std::uint64_t p, std::uint64_t seed = 1);

}  // namespace hyperpts
