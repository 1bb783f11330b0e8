#include "hyperpts/factor.hpp"

#include "mpoly.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace hyperpts {

namespace {

using namespace detail;

// Integer polynomials reduced modulo m = p^k.
std::vector<Int> to_ints(const MPoly& a) {
  std::vector<Int> r;
  for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

IPoly reduce_mod(const IPoly& a, const Int& m) {
  std::vector<Int> v;
  for (const Int& c : a.coeffs()) v.push_back(mod_floor(c, m));
  return IPoly(std::move(v));
}

IPoly symmetric_mod(const IPoly& a, const Int& m) {
  std::vector<Int> v;
  Int half = m / 2;
  for (const Int& c : a.coeffs()) {
    Int r = mod_floor(c, m);
    if (r > half) r -= m;
    v.push_back(r);
  }
  return IPoly(std::move(v));
}

/// Lifts G = A*B (mod p), A monic, lc(B) = lc(G), to modulus p^k.
void hensel_two(const IPoly& G, IPoly& A, IPoly& B, std::uint64_t p, unsigned k) {
  MPoly a = mreduce(A, p), b = mreduce(B, p), g, s, t;
  mxgcd(a, b, p, g, s, t);
  require(g.size() == 1, "Hensel lifting of non-coprime factors");
  Int pj = static_cast<unsigned long>(p);
  for (unsigned j = 1; j < k; ++j) {
    IPoly diff = G - A * B;
    std::vector<Int> ev;
    for (const Int& c : diff.coeffs()) {
      require(mpz_divisible_p(c.get_mpz_t(), pj.get_mpz_t()), "Hensel step lost divisibility");
      ev.push_back(c / pj);
    }
    MPoly e = mreduce(IPoly(ev), p);
    MPoly te = mmul(t, e, p), q, r;
    mdivmod(te, a, p, &q, &r);
    MPoly db = madd(mmul(s, e, p), mmul(q, b, p), p);
    A = A + pj * IPoly(to_ints(r));
    B = B + pj * IPoly(to_ints(db));
    pj *= static_cast<unsigned long>(p);
    a = mreduce(A, p);
    b = mreduce(B, p);
  }
  A = reduce_mod(A, pj);
  B = reduce_mod(B, pj);
}

std::vector<IPoly> hensel_multi(const IPoly& G, const std::vector<MPoly>& factors, std::uint64_t p, unsigned k) {
  if (factors.size() == 1) {
    // G itself (mod p^k), made monic modulo p^k
    Int m = pow_int(Int(static_cast<unsigned long>(p)), k);
    Int inv;
    Int lc = mod_floor(G.lc(), m);
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), m.get_mpz_t());
    return {reduce_mod(inv * G, m)};
  }
  IPoly A(to_ints(factors[0]));
  MPoly rest{mod_of(G.lc(), p)};
  for (std::size_t i = 1; i < factors.size(); ++i) rest = mmul(rest, factors[i], p);
  IPoly B(to_ints(rest));
  hensel_two(G, A, B, p, k);
  std::vector<IPoly> out{A};
  std::vector<MPoly> tail(factors.begin() + 1, factors.end());
  auto lifted = hensel_multi(B, tail, p, k);
  out.insert(out.end(), lifted.begin(), lifted.end());
  return out;
}

std::vector<IPoly> factor_squarefree_primitive(const IPoly& g) {
  if (g.degree() <= 1) return {g};
  std::uint64_t p = 3;
  MPoly gm;
  for (;; p += 2) {
    if (!is_prime(p)) continue;
    if (mod_of(g.lc(), p) == 0) continue;
    gm = mreduce(g, p);
    if (mgcd(gm, mderivative(gm, p), p).size() == 1) break;
  }
  auto modular = factor_mod_p(mmonic(gm, p), p);
  if (modular.size() == 1) return {g};

  Int norm = 0;
  for (const Int& c : g.coeffs()) norm += abs(c);
  Int bound = 2 * abs(g.lc()) * pow_int(Int(2), static_cast<unsigned long>(g.degree())) * norm;
  unsigned k = 1;
  Int m = static_cast<unsigned long>(p);
  while (m <= bound) {
    m *= static_cast<unsigned long>(p);
    ++k;
  }
  std::vector<IPoly> lifted = hensel_multi(g, modular, p, k);

  std::vector<IPoly> result;
  IPoly G = g;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) -> bool {
      if (depth == s) {
        IPoly cand = IPoly::constant(G.lc());
        for (std::size_t i : idx) cand = reduce_mod(cand * lifted[i], m);
        cand = symmetric_mod(cand, m).primitive_part();
        IPoly q;
        if (cand.degree() >= 1 && IPoly::divides_exactly(G, cand, &q)) {
          result.push_back(cand);
          G = q;
          for (std::size_t j = idx.size(); j-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[j]));
          return true;
        }
        return false;
      }
      for (std::size_t i = start; i < lifted.size(); ++i) {
        idx[depth] = i;
        if (choose(i + 1, depth + 1)) return true;
      }
      return false;
    };
    found = choose(0, 0);
    if (!found) ++s;
  }
  if (G.degree() >= 1) result.push_back(G.primitive_part());
  return result;
}

std::vector<std::pair<IPoly, unsigned>> squarefree_decomposition(const IPoly& f) {
  std::vector<std::pair<IPoly, unsigned>> out;
  QPoly a = to_qpoly(f);
  QPoly da = qpoly_derivative(a);
  QPoly b = qpoly_gcd(a, da);
  QPoly c = qpoly_div(a, b);
  QPoly d = da;
  {
    QPoly t = qpoly_div(da, b);
    QPoly dc = qpoly_derivative(c);
    d = t;
    for (std::size_t i = 0; i < dc.size(); ++i) {
      if (i >= d.size()) d.resize(i + 1);
      d[i] -= dc[i];
    }
    qpoly_trim(d);
  }
  unsigned i = 1;
  while (c.size() > 1) {
    QPoly g = qpoly_gcd(c, d);
    if (g.size() > 1) out.emplace_back(qpoly_to_primitive(g), i);
    c = qpoly_div(c, g);
    QPoly t = qpoly_div(d, g);
    QPoly dc = qpoly_derivative(c);
    d = t;
    for (std::size_t j = 0; j < dc.size(); ++j) {
      if (j >= d.size()) d.resize(j + 1);
      d[j] -= dc[j];
    }
    qpoly_trim(d);
    ++i;
  }
  return out;
}

}  // namespace

IPolyFactorization factor_ipoly(const IPoly& f) {
  require(!f.is_zero(), "factor_ipoly of the zero polynomial");
  if (f.degree() > 10) fail(ErrorCode::DegreeTooLarge, "factor_ipoly supports degree <= 10, got " + std::to_string(f.degree()));
  IPolyFactorization out;
  out.content = f.content();
  if (f.lc() < 0) out.content = -out.content;
  if (f.degree() == 0) return out;
  for (auto& [part, mult] : squarefree_decomposition(f.primitive_part())) {
    for (IPoly& q : factor_squarefree_primitive(part)) out.factors.push_back({q.primitive_part(), mult});
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const IrreducibleFactor& a, const IrreducibleFactor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    return a.poly.coeffs() < b.poly.coeffs();
  });
  return out;
}

IPoly expand(const IPolyFactorization& fac) {
  IPoly r = IPoly::constant(fac.content);
  for (const auto& f : fac.factors)
    for (unsigned i = 0; i < f.multiplicity; ++i) r = r * f.poly;
  return r;
}

}  // namespace hyperpts
