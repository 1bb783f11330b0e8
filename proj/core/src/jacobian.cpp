#include "hyperpts/jacobian.hpp"

#include "hyperpts/factor.hpp"

#include <algorithm>
#include <numeric>

namespace hyperpts {

namespace {

constexpr std::uint64_t kMaxGroupOrder = 4000000;

RatPoint affine_point(const Rat& x, const Rat& y) { return RatPoint::affine(x.get_num(), x.get_den(), y); }

/// F_i = g_i L^(4-i) for a quintic g with leading coefficient L.
IPoly monicize_quintic(const IPoly& g) {
  const Int L = g.lc();
  std::vector<Int> c(6);
  for (int i = 0; i <= 4; ++i) c[static_cast<std::size_t>(i)] = g.coeff(i) * pow_int(L, static_cast<unsigned long>(4 - i));
  c[5] = 1;
  return IPoly(c);
}

std::vector<Rat> rational_roots(const IPoly& f) {
  std::vector<Rat> roots;
  for (const auto& fc : factor_ipoly(f).factors)
    if (fc.poly.degree() == 1) {
      Rat r(-fc.poly.coeff(0), fc.poly.coeff(1));
      r.canonicalize();
      roots.push_back(r);
    }
  std::sort(roots.begin(), roots.end(), [](const Rat& a, const Rat& b) {
    if (a.get_den() != b.get_den()) return a.get_den() < b.get_den();
    if (abs(a.get_num()) != abs(b.get_num())) return abs(a.get_num()) < abs(b.get_num());
    return a > b;
  });
  return roots;
}

template <class K, class Conv>
KPoly<K> convert(const IPoly& f, Conv conv) {
  KPoly<K> out;
  for (const Int& c : f.coeffs()) out.push_back(conv(c));
  return out;
}

Rat int_pow_rat(const Rat& x, int e) {
  Rat r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

OddModel to_odd_degree_model(const HypCurve& curve) {
  require(curve.genus == 2, "odd-degree models are built for genus 2 only");
  OddModel m;
  m.original = curve;
  if (curve.degree() == 5) {
    m.scale = curve.f.lc();
    m.model = make_curve(monicize_quintic(curve.f));
    return m;
  }
  const std::vector<Rat> roots = rational_roots(curve.f);
  if (roots.empty()) fail(ErrorCode::NoRationalWeierstrass, "sextic " + curve.f.to_string() + " has no rational root");
  const Rat r = roots.front();
  const Int a = r.get_num(), b = r.get_den();
  // b^6 t^6 f(a/b + 1/t) = sum f_i (a t + b)^i t^(6-i) b^(6-i)
  IPoly g;
  const IPoly lin(std::vector<Int>{b, a});
  IPoly lin_pow = IPoly::constant(1);
  for (int i = 0; i <= 6; ++i) {
    g = g + Int(curve.f.coeff(i) * pow_int(b, static_cast<unsigned long>(6 - i))) * (lin_pow * IPoly::monomial(1, 6 - i));
    lin_pow = lin_pow * lin;
  }
  require(g.degree() == 5, "root substitution did not give a quintic");
  m.root = r;
  m.denom = pow_int(b, 3);
  m.scale = g.lc();
  m.model = make_curve(monicize_quintic(g));
  return m;
}

RatPoint to_odd_point(const OddModel& m, const RatPoint& p) {
  const Rat L(m.scale), D(m.denom);
  if (!m.root) {
    if (!p.is_affine()) return p;
    return affine_point(L * p.x(), L * L * p.y);
  }
  if (!p.is_affine()) {
    // y ~ +-sqrt(lc) x^3 as x -> infinity, so Y -> +-L^2 D sqrt(lc) at X = 0
    Int s;
    require(is_square(m.original.f.lc(), &s), "point at infinity on a model without one");
    const Rat Y = L * L * D * Rat(s);
    return affine_point(0, p.kind == RatPoint::Kind::InfinityPlus ? Y : Rat(-Y));
  }
  if (p.x() == *m.root) return RatPoint::infinity(RatPoint::Kind::Infinity);
  const Rat t = 1 / (p.x() - *m.root);
  return affine_point(L * t, L * L * D * p.y * int_pow_rat(t, 3));
}

RatPoint from_odd_point(const OddModel& m, const RatPoint& p) {
  const Rat L(m.scale), D(m.denom);
  if (!m.root) {
    if (!p.is_affine()) return p;
    return affine_point(p.x() / L, p.y / (L * L));
  }
  if (!p.is_affine()) return affine_point(*m.root, 0);
  if (p.x() == 0) {
    const Rat s = p.y / (L * L * D);
    return RatPoint::infinity(s > 0 ? RatPoint::Kind::InfinityPlus : RatPoint::Kind::InfinityMinus);
  }
  const Rat t = p.x() / L;
  return affine_point(*m.root + 1 / t, p.y / (L * L * D * int_pow_rat(t, 3)));
}

Jacobian<Rat> jacobian_q(const HypCurve& odd) {
  return Jacobian<Rat>(convert<Rat>(odd.f, [](const Int& c) { return Rat(c); }), Rat(1));
}

Jacobian<FpElem> jacobian_fp(const HypCurve& odd, std::uint64_t p) {
  require(p > 2, "Jacobian over F_p needs p odd");
  return Jacobian<FpElem>(convert<FpElem>(odd.f, [p](const Int& c) { return FpElem::from_int(c, p); }), FpElem(1, p));
}

Jacobian<Fp2Elem> jacobian_fp2(const HypCurve& odd, std::uint64_t p) {
  require(p > 2, "Jacobian over F_p^2 needs p odd");
  const std::uint64_t nu = smallest_nonresidue(p);
  return Jacobian<Fp2Elem>(
      convert<Fp2Elem>(odd.f, [p, nu](const Int& c) { return Fp2Elem::embed(FpElem::from_int(c, p), nu); }),
      Fp2Elem(1, 0, p, nu));
}

Jacobian<PadicNum> jacobian_qp(const HypCurve& odd, std::uint64_t p, int precision) {
  return Jacobian<PadicNum>(
      convert<PadicNum>(odd.f, [p, precision](const Int& c) { return PadicNum::from_int(c, p, precision); }),
      PadicNum::from_int(1, p, precision));
}

QDiv embed_point(const RatPoint& p) {
  if (!p.is_affine()) return {{Rat(1)}, {}};
  QDiv d{{-p.x(), Rat(1)}, {p.y}};
  if (p.y == 0) d.v.clear();
  return d;
}

FpDiv reduce_div(const QDiv& d, std::uint64_t p) {
  FpDiv r;
  for (const Rat& c : d.u) r.u.push_back(FpElem::from_rat(c, p));
  for (const Rat& c : d.v) r.v.push_back(FpElem::from_rat(c, p));
  Jacobian<FpElem>::trim(r.v);
  return r;
}

Int jac_order_fp(const HypCurve& curve, std::uint64_t p) {
  require(curve.genus == 2, "jac_order_fp is for genus 2");
  const Int n1 = static_cast<unsigned long>(count_points(curve, p, 1));
  const Int n2 = static_cast<unsigned long>(count_points(curve, p, 2));
  return (n1 * n1 + n2) / 2 - Int(static_cast<unsigned long>(p));
}

FpDiv random_div_fp(const Jacobian<FpElem>& jac, std::mt19937_64& rng) {
  const std::uint64_t p = jac.one().p;
  const FpElem one = jac.one(), two = one + one;
  auto sign = [&](FpElem y) { return (rng() & 1) ? y : -y; };
  for (;;) {
    if (rng() % 4 == 0) {
      const FpElem x = random_fp(p, rng), fx = jac.eval(jac.f(), x);
      if (fx.chi() < 0) continue;
      return jac.point(x, sign(fx.sqrt()));
    }
    const FpElem c0 = random_fp(p, rng), c1 = random_fp(p, rng);
    const FpElem disc = c1 * c1 - FpElem(4, p) * c0;
    if (disc.is_zero()) continue;
    FpDiv d{{c0, c1, one}, {}};
    if (disc.chi() > 0) {
      const FpElem s = disc.sqrt();
      const FpElem r1 = (-c1 + s) / two, r2 = (-c1 - s) / two;
      const FpElem f1 = jac.eval(jac.f(), r1), f2 = jac.eval(jac.f(), r2);
      if (f1.chi() < 0 || f2.chi() < 0) continue;
      const FpElem y1 = sign(f1.sqrt()), y2 = sign(f2.sqrt());
      const FpElem slope = (y2 - y1) / (r2 - r1);
      d.v = {y1 - slope * r1, slope};
    } else {
      const std::uint64_t nu = smallest_nonresidue(p);
      const Fp2Elem theta = (Fp2Elem::embed(-c1, nu) + Fp2Elem::embed(disc, nu).sqrt()) / Fp2Elem::embed(two, nu);
      Fp2Elem ftheta = Fp2Elem::embed(FpElem(0, p), nu);
      for (std::size_t i = jac.f().size(); i-- > 0;) ftheta = ftheta * theta + Fp2Elem::embed(jac.f()[i], nu);
      if (ftheta.chi() < 0) continue;
      Fp2Elem w = ftheta.sqrt();
      if (rng() & 1) w = -w;
      // v = c x + e with v(theta) = w; theta has nonzero s-part
      const FpElem c = FpElem(w.b, p) / FpElem(theta.b, p);
      d.v = {FpElem(w.a, p) - c * FpElem(theta.a, p), c};
    }
    Jacobian<FpElem>::trim(d.v);
    return d;
  }
}

std::vector<FpDiv> affine_point_divs(const Jacobian<FpElem>& jac) {
  const std::uint64_t p = jac.one().p;
  std::vector<FpDiv> out;
  for (std::uint64_t x = 0; x < p; ++x) {
    const FpElem X(x, p), fx = jac.eval(jac.f(), X);
    if (fx.chi() < 0) continue;
    const FpElem y = fx.sqrt();
    out.push_back(jac.point(X, y));
    if (!y.is_zero()) out.push_back(jac.point(X, -y));
  }
  return out;
}

std::size_t DivKeyHash::operator()(const DivKey& k) const {
  std::size_t h = 1469598103934665603ull;
  for (std::uint64_t w : k.w) h = (h ^ w) * 1099511628211ull + (h >> 29);
  return h;
}

DivKey div_key(const FpDiv& d) {
  DivKey k{{static_cast<std::uint64_t>(d.degree()), 0, 0, 0, 0}};
  for (std::size_t i = 0; i + 1 < d.u.size() && i < 2; ++i) k.w[1 + i] = d.u[i].v;
  for (std::size_t i = 0; i < d.v.size() && i < 2; ++i) k.w[3 + i] = d.v[i].v;
  return k;
}

namespace {

using Matrix = std::vector<std::vector<Int>>;

/// Smith normal form of a square relation matrix: returns the diagonal and
/// the column transform V with its inverse (U R V = diag).
struct Smith {
  std::vector<Int> diag;
  Matrix V, Vinv;
};

Smith smith_form(Matrix a) {
  const std::size_t n = a.size();
  Smith s;
  s.V.assign(n, std::vector<Int>(n, 0));
  s.Vinv = s.V;
  for (std::size_t i = 0; i < n; ++i) s.V[i][i] = s.Vinv[i][i] = 1;
  auto col_sub = [&](std::size_t j, std::size_t t, const Int& q) {  // col_j -= q col_t
    for (std::size_t i = 0; i < n; ++i) {
      a[i][j] -= q * a[i][t];
      s.V[i][j] -= q * s.V[i][t];
    }
    for (std::size_t i = 0; i < n; ++i) s.Vinv[t][i] += q * s.Vinv[j][i];
  };
  auto col_swap = [&](std::size_t j, std::size_t t) {
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(a[i][j], a[i][t]);
      std::swap(s.V[i][j], s.V[i][t]);
    }
    std::swap(s.Vinv[j], s.Vinv[t]);
  };
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (pi == n || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == n) break;
      std::swap(a[t], a[pi]);
      if (pj != t) col_swap(pj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        const Int q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        col_sub(j, t, a[t][j] / a[t][t]);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = n;
      for (std::size_t i = t + 1; i < n && bad == n; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == n) break;
      for (std::size_t j = t; j < n; ++j) a[t][j] += a[bad][j];
    }
    if (a[t][t] < 0) {
      for (std::size_t i = 0; i < n; ++i) {
        a[i][t] = -a[i][t];
        s.V[i][t] = -s.V[i][t];
      }
      for (std::size_t i = 0; i < n; ++i) s.Vinv[t][i] = -s.Vinv[t][i];
    }
    s.diag.push_back(a[t][t]);
  }
  return s;
}

std::uint64_t mod_u64(const Int& x, std::uint64_t m) { return mod_of(x, m); }

}  // namespace

JacGroupFp group_structure_fp(const HypCurve& odd, std::uint64_t p, std::uint64_t seed) {
  JacGroupFp G(jacobian_fp(odd, p));
  const Jacobian<FpElem>& jac = G.jac_;
  G.p_ = p;
  G.order_ = jac_order_fp(odd, p);
  if (G.order_ > kMaxGroupOrder) fail(ErrorCode::CapExceeded, "#J(F_p) = " + to_string(G.order_));
  const std::uint64_t N = G.order_.get_ui();
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + p);

  std::vector<std::vector<FpDiv>> sylow_basis;
  for (const PrimePower& pp : factor_integer(G.order_)) {
    JacGroupFp::Sylow S;
    S.ell = pp.prime.get_ui();
    S.size = pow_int(pp.prime, pp.exponent).get_ui();
    const Int cof = Int(static_cast<unsigned long>(N / S.size));

    // generators with relative orders; members listed with coordinates
    std::vector<FpDiv> gens;
    std::vector<std::vector<std::uint64_t>> rel_rows;  // coords of r_i g_i in earlier generators
    std::vector<std::uint64_t> rel_orders;
    std::vector<std::pair<FpDiv, std::vector<std::uint64_t>>> members{{jac.identity(), {}}};
    std::unordered_map<DivKey, std::size_t, DivKeyHash> index{{div_key(jac.identity()), 0}};
    while (members.size() < S.size) {
      const FpDiv g = jac.mul(cof, random_div_fp(jac, rng));
      if (index.count(div_key(g))) continue;
      std::uint64_t r = 1;
      FpDiv cur = g;
      while (!index.count(div_key(cur))) {
        cur = jac.add(cur, g);
        ++r;
      }
      rel_rows.push_back(members[index.at(div_key(cur))].second);
      rel_orders.push_back(r);
      const std::size_t old = members.size();
      for (auto& mem : members) mem.second.push_back(0);
      FpDiv step = jac.identity();
      for (std::uint64_t a = 1; a < r; ++a) {
        step = jac.add(step, g);
        for (std::size_t i = 0; i < old; ++i) {
          FpDiv e = jac.add(members[i].first, step);
          std::vector<std::uint64_t> c = members[i].second;
          c.back() = a;
          index.emplace(div_key(e), members.size());
          members.emplace_back(std::move(e), std::move(c));
        }
      }
      gens.push_back(g);
    }

    const std::size_t k = gens.size();
    Matrix R(k, std::vector<Int>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < rel_rows[i].size(); ++j) R[i][j] = -Int(static_cast<unsigned long>(rel_rows[i][j]));
      R[i][i] = static_cast<unsigned long>(rel_orders[i]);
    }
    const Smith snf = smith_form(R);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < k; ++i)
      if (snf.diag[i] != 1) keep.push_back(i);
    for (std::size_t i : keep) S.invariants.push_back(snf.diag[i].get_ui());

    std::vector<FpDiv> basis;
    for (std::size_t i : keep) {
      FpDiv b = jac.identity();
      for (std::size_t j = 0; j < k; ++j) b = jac.add(b, jac.mul(snf.Vinv[i][j], gens[j]));
      basis.push_back(b);
    }
    for (auto& mem : members) {
      std::vector<std::uint64_t> y;
      for (std::size_t idx = 0; idx < keep.size(); ++idx) {
        Int acc = 0;
        for (std::size_t j = 0; j < k; ++j) acc += Int(static_cast<unsigned long>(mem.second[j])) * snf.V[j][keep[idx]];
        y.push_back(mod_u64(acc, S.invariants[idx]));
      }
      S.table.emplace(div_key(mem.first), std::move(y));
    }
    sylow_basis.push_back(std::move(basis));
    G.sylows_.push_back(std::move(S));
  }

  std::size_t width = 0;
  for (const auto& S : G.sylows_) width = std::max(width, S.invariants.size());
  G.invariants_.assign(width, 1);
  G.basis_.assign(width, jac.identity());
  for (std::size_t s = 0; s < G.sylows_.size(); ++s) {
    const auto& S = G.sylows_[s];
    const std::size_t shift = width - S.invariants.size();
    for (std::size_t i = 0; i < S.invariants.size(); ++i) {
      G.invariants_[shift + i] *= S.invariants[i];
      G.basis_[shift + i] = jac.add(G.basis_[shift + i], sylow_basis[s][i]);
    }
  }
  return G;
}

std::vector<std::uint64_t> JacGroupFp::dlog(const FpDiv& d) const {
  const std::size_t width = invariants_.size();
  std::vector<Int> coords(width, 0), moduli(width, 1);
  const std::uint64_t N = order_.get_ui();
  for (const Sylow& S : sylows_) {
    const std::uint64_t cof = N / S.size;
    const FpDiv part = jac_.mul(Int(static_cast<unsigned long>(cof)), d);
    auto it = S.table.find(div_key(part));
    require(it != S.table.end(), "element outside J(F_p)");
    const std::size_t shift = width - S.invariants.size();
    for (std::size_t i = 0; i < S.invariants.size(); ++i) {
      const std::uint64_t m = S.invariants[i];
      // part = cof * d, so divide its coordinate by cof (a unit mod ell^e)
      const std::uint64_t y = mulmod(it->second[i], invmod(cof % m, m), m);
      Int c = coords[shift + i], M = moduli[shift + i];
      // CRT: c mod M, y mod m with gcd(M, m) = 1
      Int inv;
      mpz_invert(inv.get_mpz_t(), Int(M % m).get_mpz_t(), Int(static_cast<unsigned long>(m)).get_mpz_t());
      Int t = mod_floor((Int(static_cast<unsigned long>(y)) - c) * inv, Int(static_cast<unsigned long>(m)));
      coords[shift + i] = c + M * t;
      moduli[shift + i] = M * m;
    }
  }
  std::vector<std::uint64_t> out;
  for (const Int& c : coords) out.push_back(c.get_ui());
  return out;
}

FpDiv JacGroupFp::element(const std::vector<std::uint64_t>& coords) const {
  require(coords.size() == basis_.size(), "coordinate vector of the wrong length");
  FpDiv acc = jac_.identity();
  for (std::size_t i = 0; i < coords.size(); ++i)
    acc = jac_.add(acc, jac_.mul(Int(static_cast<unsigned long>(coords[i] % invariants_[i])), basis_[i]));
  return acc;
}

std::uint64_t JacGroupFp::order_of(const FpDiv& d) const {
  const std::vector<std::uint64_t> c = dlog(d);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < c.size(); ++i) ord = std::lcm(ord, invariants_[i] / std::gcd(c[i], invariants_[i]));
  return ord;
}

}  // namespace hyperpts
