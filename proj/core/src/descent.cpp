#include "hyperpts/descent.hpp"

#include "hyperpts/factor.hpp"

#include <algorithm>

namespace hyperpts {

namespace {

constexpr std::uint64_t kTwistPrimeBound = 100;
constexpr std::size_t kMaxSupport = 16;

int even_degree(const IPoly& g) { return 2 * ((g.degree() + 1) / 2); }

void add_primes(std::vector<Int>& out, const Int& n) {
  if (n == 0 || abs(n) == 1) return;
  for (const Int& p : prime_divisors(n)) out.push_back(p);
}

}  // namespace

const char* descent_verdict_name(DescentVerdict v) {
  return v == DescentVerdict::EmptyProven ? "EMPTY_PROVEN" : "INCONCLUSIVE";
}

std::vector<Factorization> factorizations(const HypCurve& curve) {
  const IPolyFactorization fac = factor_ipoly(curve.f);
  std::vector<IPoly> parts;
  for (const auto& fc : fac.factors) {
    require(fc.multiplicity == 1, "factorizations of a non-squarefree polynomial");
    parts.push_back(fc.poly);
  }
  const std::size_t n = parts.size();
  std::vector<Factorization> out;
  // subsets containing factor 0 enumerate each unordered split once
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    if (n > 0 && (mask & 1) == 0) continue;
    IPoly a = IPoly::constant(1), b = IPoly::constant(1);
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? a : b) = (mask >> i & 1 ? a : b) * parts[i];
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) continue;
    // smaller degree on g; on a tie g holds factor 0, which a does
    Factorization f = a.degree() <= b.degree() ? Factorization{a, b} : Factorization{b, a};
    f.g = fac.content * f.g;
    out.push_back(f);
  }
  std::stable_sort(out.begin(), out.end(), [](const Factorization& l, const Factorization& r) {
    return l.g.degree() < r.g.degree();
  });
  return out;
}

std::vector<Int> twist_support(const Factorization& fact) {
  std::vector<Int> ps;
  add_primes(ps, resultant(fact.g, fact.h));
  // a form homogenized above its degree vanishes at infinity, where the
  // other form takes the value of its leading coefficient
  if (even_degree(fact.g) > fact.g.degree()) add_primes(ps, fact.h.lc());
  if (even_degree(fact.h) > fact.h.degree()) add_primes(ps, fact.g.lc());
  add_primes(ps, gcd(fact.g.lc(), fact.h.lc()));
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

std::vector<Int> candidate_twists(const std::vector<Int>& support) {
  if (support.size() > kMaxSupport)
    fail(ErrorCode::CapExceeded, "twist support of " + std::to_string(support.size()) + " primes");
  std::vector<Int> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << support.size()); ++mask) {
    Int d = 1;
    for (std::size_t i = 0; i < support.size(); ++i)
      if (mask >> i & 1) d *= support[i];
    out.push_back(d);
    out.push_back(-d);
  }
  std::sort(out.begin(), out.end(), [](const Int& l, const Int& r) {
    return abs(l) != abs(r) ? abs(l) < abs(r) : l > r;
  });
  return out;
}

LocalVerdict twist_solvable(const Factorization& fact, const Int& d, std::uint64_t place) {
  const std::vector<IPoly> polys{d * fact.g, d * fact.h};
  if (place == kRealPlace) return system_solvable_R(polys);
  const Int disc = discriminant(polys[0] * polys[1]);
  return system_solvable_Qp(polys, place, local_depth_cap(disc, place));
}

std::vector<std::uint64_t> twist_test_primes(const HypCurve& curve, const std::vector<Int>& support) {
  std::vector<std::uint64_t> ps = primes_up_to(kTwistPrimeBound - 1);
  auto add = [&](const Int& p) {
    if (!p.fits_ulong_p() || p.get_ui() >= (1ul << 62)) fail(ErrorCode::BadPrime, "prime " + to_string(p) + " too large");
    ps.push_back(p.get_ui());
  };
  for (const Int& p : support) add(p);
  for (const Int& p : curve.bad_primes) add(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

DescentResult selmer_set(const HypCurve& curve) {
  DescentResult res;
  for (const Factorization& fact : factorizations(curve)) {
    SelmerReport rep;
    rep.fact = fact;
    rep.support = twist_support(fact);
    rep.test_primes = twist_test_primes(curve, rep.support);
    for (const Int& d : candidate_twists(rep.support)) {
      TwistResult tr;
      tr.d = d;
      LocalVerdict real = twist_solvable(fact, d, kRealPlace);
      tr.places.push_back(real);
      if (!real.solvable) {
        tr.survives = false;
        tr.failed_place = kRealPlace;
      }
      for (std::size_t i = 0; tr.survives && i < rep.test_primes.size(); ++i) {
        LocalVerdict v = twist_solvable(fact, d, rep.test_primes[i]);
        tr.places.push_back(v);
        if (!v.solvable) {
          tr.survives = false;
          tr.failed_place = rep.test_primes[i];
        }
      }
      if (tr.survives) rep.survivors.push_back(d);
      rep.twists.push_back(std::move(tr));
    }
    res.reports.push_back(std::move(rep));
    if (res.reports.back().survivors.empty() && !res.empty_factorization) {
      res.empty_factorization = res.reports.size() - 1;
      res.verdict = DescentVerdict::EmptyProven;
    }
  }
  return res;
}

}  // namespace hyperpts
