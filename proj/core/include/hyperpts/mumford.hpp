#pragma once

#include "hyperpts/arith.hpp"
#include "hyperpts/finite_field.hpp"
#include "hyperpts/padic.hpp"

#include <tuple>
#include <utility>
#include <vector>

namespace hyperpts {

namespace field {

inline bool is_zero(const Rat& x) { return x == 0; }
template <class K>
  requires requires(const K& x) { x.is_zero(); }
bool is_zero(const K& x) {
  return x.is_zero();
}

inline Rat inverse(const Rat& x) {
  if (x == 0) fail(ErrorCode::NonInvertibleDivision, "division by zero in Q");
  return 1 / x;
}
template <class K>
  requires requires(const K& x) { x.inverse(); }
K inverse(const K& x) {
  return x.inverse();
}

inline Rat from_int(const Rat&, const Int& n) { return Rat(n); }
inline FpElem from_int(const FpElem& one, const Int& n) { return FpElem::from_int(n, one.p); }
inline Fp2Elem from_int(const Fp2Elem& one, const Int& n) {
  return Fp2Elem::embed(FpElem::from_int(n, one.p), one.nu);
}
inline PadicNum from_int(const PadicNum& one, const Int& n) {
  return PadicNum::from_int(n, one.prime(), one.absolute_precision());
}

}  // namespace field

/// Dense polynomial over a field, low to high, without trailing zeros.
template <class K>
using KPoly = std::vector<K>;

/// Reduced divisor class (u, v) on y^2 = f(x), f monic of odd degree 2g + 1:
/// u monic, deg v < deg u <= g, u | f - v^2. The identity is (1, 0).
template <class K>
struct MumfordDiv {
  KPoly<K> u;
  KPoly<K> v;

  int degree() const { return static_cast<int>(u.size()) - 1; }
};

/// Jacobian of y^2 = f(x) over K with Cantor's group law. Elements of K carry
/// their field (prime, precision), so the curve keeps a copy of 1.
template <class K>
class Jacobian {
 public:
  Jacobian(KPoly<K> f, K one) : f_(std::move(f)), one_(std::move(one)), zero_(one_ - one_) {
    trim(f_);
    require(f_.size() % 2 == 0 && f_.size() >= 4, "Jacobian needs an odd-degree model");
    require(field::is_zero(f_.back() - one_), "Jacobian needs a monic model");
    genus_ = static_cast<int>(f_.size() - 2) / 2;
  }

  int genus() const { return genus_; }
  const K& one() const { return one_; }
  const K& zero() const { return zero_; }
  const KPoly<K>& f() const { return f_; }

  MumfordDiv<K> identity() const { return {{one_}, {}}; }
  bool is_identity(const MumfordDiv<K>& d) const { return d.u.size() == 1; }

  /// [P - infinity] for P = (x, y) on the curve.
  MumfordDiv<K> point(const K& x, const K& y) const {
    MumfordDiv<K> d{{-x, one_}, {y}};
    trim(d.v);
    return d;
  }

  bool contains(const MumfordDiv<K>& d) const {
    if (d.u.empty() || !field::is_zero(d.u.back() - one_) || d.degree() > genus_) return false;
    if (static_cast<int>(d.v.size()) > d.degree()) return false;
    return rem(sub(f_, mul(d.v, d.v)), d.u).empty();
  }

  MumfordDiv<K> negate(const MumfordDiv<K>& d) const {
    MumfordDiv<K> r = d;
    for (K& c : r.v) c = -c;
    return r;
  }

  MumfordDiv<K> add(const MumfordDiv<K>& d1, const MumfordDiv<K>& d2) const {
    if (is_identity(d1)) return d2;
    if (is_identity(d2)) return d1;
    auto [g1, e1, e2] = xgcd(d1.u, d2.u);
    KPoly<K> u, v;
    if (g1.size() == 1) {
      u = mul(d1.u, d2.u);
      v = add(mul(mul(e1, d1.u), d2.v), mul(mul(e2, d2.u), d1.v));
    } else {
      auto [d, c1, c2] = xgcd(g1, add(d1.v, d2.v));
      const KPoly<K> s1 = mul(c1, e1), s2 = mul(c1, e2);
      u = quo(mul(d1.u, d2.u), mul(d, d));
      v = add(add(mul(mul(s1, d1.u), d2.v), mul(mul(s2, d2.u), d1.v)), mul(c2, add(mul(d1.v, d2.v), f_)));
      v = quo(v, d);
    }
    v = rem(v, u);
    return reduce(std::move(u), std::move(v));
  }

  MumfordDiv<K> sub(const MumfordDiv<K>& d1, const MumfordDiv<K>& d2) const { return add(d1, negate(d2)); }
  MumfordDiv<K> dbl(const MumfordDiv<K>& d) const { return add(d, d); }

  MumfordDiv<K> mul(const Int& n, const MumfordDiv<K>& d) const {
    if (n < 0) return mul(Int(-n), negate(d));
    MumfordDiv<K> acc = identity();
    for (std::size_t i = mpz_sizeinbase(n.get_mpz_t(), 2); i-- > 0;) {
      acc = dbl(acc);
      if (mpz_tstbit(n.get_mpz_t(), i)) acc = add(acc, d);
    }
    return acc;
  }

  static bool equal(const MumfordDiv<K>& a, const MumfordDiv<K>& b) { return a.u == b.u && a.v == b.v; }

  // Polynomial helpers over K.

  static void trim(KPoly<K>& a) {
    while (!a.empty() && field::is_zero(a.back())) a.pop_back();
  }

  KPoly<K> add(const KPoly<K>& a, const KPoly<K>& b) const {
    KPoly<K> r(std::max(a.size(), b.size()), zero_);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    trim(r);
    return r;
  }

  KPoly<K> sub(const KPoly<K>& a, const KPoly<K>& b) const {
    KPoly<K> r(std::max(a.size(), b.size()), zero_);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    trim(r);
    return r;
  }

  KPoly<K> mul(const KPoly<K>& a, const KPoly<K>& b) const {
    if (a.empty() || b.empty()) return {};
    KPoly<K> r(a.size() + b.size() - 1, zero_);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    trim(r);
    return r;
  }

  KPoly<K> scale(const KPoly<K>& a, const K& c) const {
    KPoly<K> r = a;
    for (K& x : r) x = x * c;
    trim(r);
    return r;
  }

  std::pair<KPoly<K>, KPoly<K>> divmod(const KPoly<K>& a, const KPoly<K>& b) const {
    require(!b.empty(), "polynomial division by zero");
    KPoly<K> r = a;
    if (r.size() < b.size()) return {{}, r};
    const std::size_t n = b.size();
    KPoly<K> q(r.size() - n + 1, zero_);
    const K inv = field::inverse(b.back());
    for (std::size_t k = r.size(); k >= n; --k) {
      const K c = r[k - 1] * inv;
      q[k - n] = c;
      for (std::size_t j = 0; j < n; ++j) r[k - n + j] = r[k - n + j] - c * b[j];
      r.pop_back();
    }
    trim(q);
    trim(r);
    return {q, r};
  }

  KPoly<K> quo(const KPoly<K>& a, const KPoly<K>& b) const { return divmod(a, b).first; }
  KPoly<K> rem(const KPoly<K>& a, const KPoly<K>& b) const { return divmod(a, b).second; }

  /// (g, s, t) with g = s a + t b and g monic (g = 0 only when a = b = 0).
  std::tuple<KPoly<K>, KPoly<K>, KPoly<K>> xgcd(const KPoly<K>& a, const KPoly<K>& b) const {
    KPoly<K> r0 = a, r1 = b, s0{one_}, s1, t0, t1{one_};
    while (!r1.empty()) {
      auto [q, r] = divmod(r0, r1);
      KPoly<K> s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.empty()) return {r0, s0, t0};
    const K inv = field::inverse(r0.back());
    return {scale(r0, inv), scale(s0, inv), scale(t0, inv)};
  }

  K eval(const KPoly<K>& a, const K& x) const {
    K acc = zero_;
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
  }

 private:
  MumfordDiv<K> reduce(KPoly<K> u, KPoly<K> v) const {
    while (static_cast<int>(u.size()) - 1 > genus_) {
      u = quo(sub(f_, mul(v, v)), u);
      v = rem(scale(v, -one_), u);
    }
    require(!u.empty(), "Cantor reduction produced u = 0");
    const K inv = field::inverse(u.back());
    u = scale(u, inv);
    u.back() = one_;
    v = rem(v, u);
    return {std::move(u), std::move(v)};
  }

  KPoly<K> f_;
  K one_;
  K zero_;
  int genus_ = 0;
};

}  // namespace hyperpts
