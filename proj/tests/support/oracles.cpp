#include "oracles.hpp"

namespace oracle {

using hyperpts::QPoly;

Rat resultant_euclid(const IPoly& g0, const IPoly& h0) {
  QPoly a = hyperpts::to_qpoly(g0), b = hyperpts::to_qpoly(h0);
  Rat result = 1;
  // Res(a, b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} Res(b, r), r = a mod b
  for (;;) {
    const long da = static_cast<long>(a.size()) - 1, db = static_cast<long>(b.size()) - 1;
    if (da < 0 || db < 0) return 0;
    if (db == 0) {
      Rat p = 1;
      for (long i = 0; i < da; ++i) p *= b.back();
      return result * p;
    }
    QPoly r = hyperpts::qpoly_rem(a, b);
    const long dr = static_cast<long>(r.size()) - 1;
    if (dr < 0) return 0;
    if ((da * db) % 2 == 1) result = -result;
    for (long i = 0; i < da - dr; ++i) result *= b.back();
    a = b;
    b = r;
  }
}

bool is_square_mod_pk(const Rat& t, std::uint64_t p, int k) {
  Int m = hyperpts::pow_int(Int(static_cast<unsigned long>(p)), k);
  Int den = t.get_den(), inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  Int target = hyperpts::mod_floor(t.get_num() * inv, m);
  for (Int x = 0; x < m; ++x)
    if (hyperpts::mod_floor(x * x - target, m) == 0) return true;
  return false;
}

std::uint64_t affine_count_fp(const IPoly& f, std::uint64_t p) {
  std::uint64_t n = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t fx = hyperpts::mod_of(f(Int(static_cast<unsigned long>(x))), p);
    for (std::uint64_t y = 0; y < p; ++y)
      if (y * y % p == fx) ++n;
  }
  return n;
}

}  // namespace oracle

namespace oracle {

hyperpts::HypCurve random_curve(std::mt19937_64& rng, int degree, long box) {
  std::uniform_int_distribution<long> c(-box, box);
  for (;;) {
    std::vector<Int> co(degree + 1);
    for (auto& x : co) x = c(rng);
    if (co.back() == 0) continue;
    IPoly f(co);
    if (hyperpts::discriminant(f) == 0) continue;
    return hyperpts::make_curve(f);
  }
}

bool qp_solvable_brute(const IPoly& f, std::uint64_t p, int n) {
  const Int m = hyperpts::pow_int(Int(static_cast<unsigned long>(p)), n);
  const unsigned long mm = m.get_ui();
  std::vector<char> is_sq(mm, 0);
  for (unsigned long y = 0; y < mm; ++y) is_sq[(y * y) % mm] = 1;
  auto good = [&](const Int& value) {
    if (value == 0) return true;
    if (hyperpts::valuation(value, p) >= n) return false;
    return is_sq[hyperpts::mod_floor(value, m).get_ui()] != 0;
  };
  for (unsigned long x = 0; x < mm; ++x)
    if (good(f(Int(x)))) return true;
  const int even = 2 * ((f.degree() + 1) / 2);
  IPoly r = f.reversed(even);
  for (unsigned long z = 0; z < mm; z += p)
    if (good(r(Int(z)))) return true;
  return false;
}

}  // namespace oracle

namespace oracle {

bool twist_solvable_brute(const IPoly& g, const IPoly& h, std::uint64_t p, int n) {
  const Int m = hyperpts::pow_int(Int(static_cast<unsigned long>(p)), n);
  const unsigned long mm = m.get_ui();
  std::vector<char> is_sq(mm, 0);
  for (unsigned long y = 0; y < mm; ++y) is_sq[(y * y) % mm] = 1;
  auto good = [&](const Int& value) {
    if (value == 0) return true;
    if (hyperpts::valuation(value, p) >= n - (p == 2 ? 2 : 0)) return false;
    return is_sq[hyperpts::mod_floor(value, m).get_ui()] != 0;
  };
  auto even = [](const IPoly& q) { return 2 * ((q.degree() + 1) / 2); };
  const IPoly rg = g.reversed(even(g)), rh = h.reversed(even(h));
  for (unsigned long x = 0; x < mm; ++x)
    if (good(g(Int(x))) && good(h(Int(x)))) return true;
  for (unsigned long z = 0; z < mm; z += p)
    if (good(rg(Int(z))) && good(rh(Int(z)))) return true;
  return false;
}

}  // namespace oracle

namespace oracle {

std::vector<hyperpts::FpDiv> jac_brute_divisors(const IPoly& F, std::uint64_t p) {
  using hyperpts::FpElem;
  std::vector<std::int64_t> f;
  for (const Int& c : F.coeffs()) f.push_back(static_cast<std::int64_t>(hyperpts::mod_of(c, p)));
  const auto P = static_cast<std::int64_t>(p);
  auto md = [P](std::int64_t x) { return ((x % P) + P) % P; };
  // remainder of F - v^2 modulo monic u, schoolbook
  auto divides = [&](std::vector<std::int64_t> u, std::int64_t v0, std::int64_t v1) {
    std::vector<std::int64_t> r = f;
    r[0] = md(r[0] - v0 * v0);
    r[1] = md(r[1] - 2 * v0 * v1);
    r[2] = md(r[2] - v1 * v1);
    const std::size_t n = u.size() - 1;
    for (std::size_t k = r.size() - 1; k >= n; --k) {
      const std::int64_t c = r[k];
      for (std::size_t j = 0; j <= n; ++j) r[k - n + j] = md(r[k - n + j] - c * u[j]);
      if (k == n) break;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (r[i] != 0) return false;
    return true;
  };
  std::vector<hyperpts::FpDiv> out;
  auto el = [p](std::int64_t x) { return FpElem(static_cast<std::uint64_t>(x), p); };
  auto trimmed = [](std::vector<FpElem> v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
    return v;
  };
  out.push_back({{el(1)}, {}});
  for (std::int64_t a = 0; a < P; ++a)
    for (std::int64_t b = 0; b < P; ++b)
      if (divides({md(-a), 1}, b, 0)) out.push_back({{el(md(-a)), el(1)}, trimmed({el(b)})});
  for (std::int64_t c0 = 0; c0 < P; ++c0)
    for (std::int64_t c1 = 0; c1 < P; ++c1)
      for (std::int64_t v0 = 0; v0 < P; ++v0)
        for (std::int64_t v1 = 0; v1 < P; ++v1)
          if (divides({c0, c1, 1}, v0, v1)) out.push_back({{el(c0), el(c1), el(1)}, trimmed({el(v0), el(v1)})});
  return out;
}

}  // namespace oracle

namespace oracle {

int ec_two_selmer_rank_bound(const Int& e1, const Int& e2, const Int& e3) {
  using namespace hyperpts;
  std::vector<Int> S{-1};
  const Int prod = (e1 - e2) * (e1 - e3) * (e2 - e3);
  for (const Int& p : prime_divisors(2 * prod)) S.push_back(p);
  const std::size_t n = S.size();
  std::vector<Int> group;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    Int d = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) d *= S[i];
    group.push_back(d);
  }
  std::vector<std::uint64_t> places{kRealPlace};
  for (std::size_t i = 1; i < n; ++i) places.push_back(S[i].get_ui());
  std::size_t count = 0;
  for (const Int& d1 : group)
    for (const Int& d2 : group) {
      const std::vector<IPoly> sys{Int(d2) * IPoly(std::vector<Int>{Int(e1 - e2), 0, d1}),
                                   Int(d1 * d2) * IPoly(std::vector<Int>{Int(e1 - e3), 0, d1})};
      bool ok = true;
      for (std::uint64_t p : places) {
        const LocalVerdict v = p == kRealPlace
                                   ? system_solvable_R(sys)
                                   : system_solvable_Qp(sys, p, local_depth_cap(discriminant(sys[0] * sys[1]), p));
        if (!v.solvable) {
          ok = false;
          break;
        }
      }
      count += ok;
    }
  int bits = 0;
  while ((std::size_t(1) << (bits + 1)) <= count) ++bits;
  return bits - 2;
}

bool ec_infinite_order(const Int& e1, const Int& e2, const Int& e3, const Rat& x, const Rat& y) {
  if (x.get_den() != 1 || y.get_den() != 1) return true;
  // y^2 = x^3 + a x^2 + b x + c
  const Rat a = -(e1 + e2 + e3), b = e1 * e2 + e1 * e3 + e2 * e3;
  struct Pt {
    bool inf;
    Rat x, y;
  };
  auto add = [&](const Pt& P, const Pt& Q) -> Pt {
    if (P.inf) return Q;
    if (Q.inf) return P;
    Rat lam;
    if (P.x == Q.x) {
      if (P.y + Q.y == 0) return {true, 0, 0};
      lam = (3 * P.x * P.x + 2 * a * P.x + b) / (2 * P.y);
    } else {
      lam = (Q.y - P.y) / (Q.x - P.x);
    }
    Rat x3 = lam * lam - a - P.x - Q.x;
    Rat y3 = lam * (P.x - x3) - P.y;
    return {false, x3, y3};
  };
  const Pt P{false, x, y};
  Pt acc = P;
  for (int k = 2; k <= 12; ++k) {
    acc = add(acc, P);
    if (acc.inf) return false;
  }
  return true;
}

}  // namespace oracle
