#include "mpoly.hpp"

#include <algorithm>

namespace hyperpts::detail {

void mtrim(MPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

MPoly mreduce(const IPoly& f, std::uint64_t p) {
  MPoly r;
  for (const Int& c : f.coeffs()) r.push_back(mod_of(c, p));
  mtrim(r);
  return r;
}

MPoly msub(const MPoly& a, const MPoly& b, std::uint64_t p) {
  MPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  mtrim(r);
  return r;
}

MPoly madd(const MPoly& a, const MPoly& b, std::uint64_t p) {
  MPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  mtrim(r);
  return r;
}

MPoly mmul(const MPoly& a, const MPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  MPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  mtrim(r);
  return r;
}

void mdivmod(const MPoly& a, const MPoly& b, std::uint64_t p, MPoly* q, MPoly* r) {
  MPoly rem = a;
  mtrim(rem);
  require(!b.empty(), "division by zero polynomial mod p");
  std::uint64_t inv = invmod(b.back(), p);
  MPoly quo(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, 0);
  while (rem.size() >= b.size() && !rem.empty()) {
    std::size_t shift = rem.size() - b.size();
    std::uint64_t c = mulmod(rem.back(), inv, p);
    quo[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] = (rem[shift + i] + p - mulmod(c, b[i], p)) % p;
    mtrim(rem);
  }
  mtrim(quo);
  if (q) *q = quo;
  if (r) *r = rem;
}

MPoly mrem(const MPoly& a, const MPoly& b, std::uint64_t p) {
  MPoly r;
  mdivmod(a, b, p, nullptr, &r);
  return r;
}

MPoly mmonic(MPoly a, std::uint64_t p) {
  if (a.empty()) return a;
  std::uint64_t inv = invmod(a.back(), p);
  for (auto& c : a) c = mulmod(c, inv, p);
  return a;
}

MPoly mgcd(MPoly a, MPoly b, std::uint64_t p) {
  mtrim(a);
  mtrim(b);
  while (!b.empty()) {
    MPoly r = mrem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return mmonic(a, p);
}

/// Returns (g, s, t) with s*a + t*b = g monic.
void mxgcd(const MPoly& a, const MPoly& b, std::uint64_t p, MPoly& g, MPoly& s, MPoly& t) {
  MPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  mtrim(r0);
  mtrim(r1);
  while (!r1.empty()) {
    MPoly q, r;
    mdivmod(r0, r1, p, &q, &r);
    MPoly s2 = msub(s0, mmul(q, s1, p), p);
    MPoly t2 = msub(t0, mmul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  std::uint64_t inv = invmod(r0.back(), p);
  for (auto& c : r0) c = mulmod(c, inv, p);
  for (auto& c : s0) c = mulmod(c, inv, p);
  for (auto& c : t0) c = mulmod(c, inv, p);
  g = r0;
  s = s0;
  t = t0;
}

MPoly mderivative(const MPoly& a, std::uint64_t p) {
  MPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mulmod(a[i], i % p, p));
  mtrim(d);
  return d;
}

MPoly mpowmod(MPoly base, const Int& e, const MPoly& mod, std::uint64_t p) {
  MPoly r{1};
  base = mrem(base, mod, p);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mrem(mmul(r, r, p), mod, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mrem(mmul(r, base, p), mod, p);
  }
  return r;
}

void equal_degree_split(const MPoly& h, std::size_t d, std::uint64_t p, std::mt19937_64& rng, std::vector<MPoly>& out) {
  if (h.size() - 1 == d) {
    out.push_back(h);
    return;
  }
  const Int e = (pow_int(Int(static_cast<unsigned long>(p)), d) - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  for (;;) {
    MPoly a(h.size() - 1);
    for (auto& c : a) c = dist(rng);
    mtrim(a);
    if (a.size() < 2) continue;
    MPoly b = msub(mpowmod(a, e, h, p), MPoly{1}, p);
    MPoly g = mgcd(h, b, p);
    if (g.size() > 1 && g.size() < h.size()) {
      MPoly q;
      mdivmod(h, g, p, &q, nullptr);
      equal_degree_split(g, d, p, rng, out);
      equal_degree_split(mmonic(q, p), d, p, rng, out);
      return;
    }
  }
}

/// Monic irreducible factors of a monic squarefree polynomial over F_p, p odd.
std::vector<MPoly> factor_mod_p(const MPoly& f, std::uint64_t p) {
  std::mt19937_64 rng(p * 7919 + f.size());
  std::vector<MPoly> out;
  MPoly rest = f;
  MPoly x{0, 1};
  MPoly h = x;
  for (std::size_t d = 1; rest.size() > 1; ++d) {
    if (2 * d > rest.size() - 1) {
      out.push_back(rest);
      break;
    }
    h = mpowmod(h, Int(static_cast<unsigned long>(p)), rest, p);
    MPoly g = mgcd(rest, msub(h, x, p), p);
    if (g.size() > 1) {
      equal_degree_split(g, d, p, rng, out);
      MPoly q;
      mdivmod(rest, g, p, &q, nullptr);
      rest = mmonic(q, p);
      h = mrem(h, rest, p);
    }
  }
  return out;
}

std::vector<std::uint64_t> roots_mod_p(const MPoly& f, std::uint64_t p) {
  MPoly g = mmonic(f, p);
  mtrim(g);
  if (g.size() <= 1) return {};
  MPoly x{0, 1};
  MPoly h = msub(mpowmod(x, Int(static_cast<unsigned long>(p)), g, p), x, p);
  MPoly lin = mgcd(g, h, p);
  std::vector<std::uint64_t> roots;
  if (lin.size() <= 1) return roots;
  std::mt19937_64 rng(p);
  std::vector<MPoly> parts;
  equal_degree_split(lin, 1, p, rng, parts);
  for (const MPoly& q : parts) roots.push_back(q[0] == 0 ? 0 : p - q[0]);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace hyperpts::detail
