#include "hyperpts/curve.hpp"

#include "hyperpts/finite_field.hpp"

#include <algorithm>

namespace hyperpts {

bool HypCurve::is_bad(std::uint64_t p) const {
  const Int pp = static_cast<unsigned long>(p);
  return std::find(bad_primes.begin(), bad_primes.end(), pp) != bad_primes.end();
}

HypCurve make_curve(const IPoly& f) {
  const int d = f.degree();
  if (d < 3 || d > 10) fail(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(d) + " outside [3, 10]");
  HypCurve c;
  c.f = f;
  c.genus = (d - 1) / 2;
  c.disc = discriminant(f);
  if (c.disc == 0) fail(ErrorCode::NotSquarefree, "f = " + f.to_string() + " has a repeated factor");
  c.bad_primes = prime_divisors(2 * f.lc() * c.disc);
  return c;
}

const char* chart_name(Chart c) { return c == Chart::Affine ? "affine" : "inverted"; }

const char* witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::SquareValue: return "square_value";
    case WitnessKind::HenselRoot: return "hensel_root";
    case WitnessKind::SignSample: return "sign_sample";
  }
  return "?";
}

std::uint64_t count_points(const HypCurve& curve, std::uint64_t p, int extension) {
  require(extension == 1 || extension == 2, "count_points supports F_p and F_p^2");
  if (p == 2 || curve.is_bad(p)) fail(ErrorCode::BadPrime, "p = " + std::to_string(p) + " is bad for this curve");
  std::vector<FpElem> co;
  for (const Int& c : curve.f.coeffs()) co.push_back(FpElem::from_int(c, p));
  std::uint64_t n = 0;
  if (extension == 1) {
    for (std::uint64_t x = 0; x < p; ++x) {
      FpElem acc(0, p), xx(x, p);
      for (std::size_t i = co.size(); i-- > 0;) acc = acc * xx + co[i];
      n += static_cast<std::uint64_t>(1 + acc.chi());
    }
    if (curve.degree() % 2 == 1) n += 1;
    else if (co.back().chi() == 1) n += 2;
    return n;
  }
  const std::uint64_t nu = smallest_nonresidue(p);
  std::vector<Fp2Elem> co2;
  for (const FpElem& c : co) co2.push_back(Fp2Elem::embed(c, nu));
  for (std::uint64_t a = 0; a < p; ++a) {
    for (std::uint64_t b = 0; b < p; ++b) {
      Fp2Elem acc(0, 0, p, nu), xx(a, b, p, nu);
      for (std::size_t i = co2.size(); i-- > 0;) acc = acc * xx + co2[i];
      n += static_cast<std::uint64_t>(1 + acc.chi());
    }
  }
  // every element of F_p is a square in F_p^2
  n += curve.degree() % 2 == 1 ? 1 : 2;
  return n;
}

// ---------------------------------------------------------------------------
// Real place

namespace {

std::vector<QPoly> sturm_sequence(const QPoly& f) {
  std::vector<QPoly> seq{f, qpoly_derivative(f)};
  while (seq.back().size() > 1) {
    QPoly r = qpoly_rem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(r);
  }
  return seq;
}

int sign_changes(const std::vector<QPoly>& seq, const Rat& x) {
  int changes = 0, last = 0;
  for (const QPoly& q : seq) {
    int s = sgn(qpoly_eval(q, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Rational points strictly separating the distinct real roots of f, with
/// one point below the smallest and one above the largest root.
std::vector<Rat> separating_samples(const QPoly& f) {
  if (f.size() <= 1) return {Rat(0)};
  Rat bound = 1;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) bound = std::max(bound, Rat(abs(f[i] / f.back())));
  bound += 1;
  const auto seq = sturm_sequence(f);
  std::vector<std::pair<Rat, Rat>> work{{-bound, bound}}, isolated;
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    const int n = sign_changes(seq, a) - sign_changes(seq, b);
    if (n == 0) continue;
    if (n == 1) {
      isolated.emplace_back(a, b);
      continue;
    }
    Rat mid = (a + b) / 2;
    // keep endpoints off the roots so that every interval is half-open and clean
    while (qpoly_eval(f, mid) == 0) mid = (mid + b) / 2;
    work.emplace_back(a, mid);
    work.emplace_back(mid, b);
  }
  std::sort(isolated.begin(), isolated.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<Rat> samples{-bound};
  for (const auto& iv : isolated) samples.push_back(iv.second);
  return samples;
}

}  // namespace

LocalVerdict system_solvable_R(const std::vector<IPoly>& polys) {
  LocalVerdict out;
  out.place = kRealPlace;
  auto all_nonneg = [&](const Rat& x) {
    for (const IPoly& q : polys)
      if (q(x) < 0) return false;
    return true;
  };
  auto accept = [&](const Rat& x) {
    out.solvable = true;
    LocalWitness w;
    w.place = kRealPlace;
    w.coordinate = x;
    w.kind = WitnessKind::SignSample;
    for (const IPoly& q : polys) {
      int s = sgn(q(x));
      w.evidence.push_back(s > 0 ? SquareVerdict::Square : s == 0 ? SquareVerdict::Zero : SquareVerdict::NonSquare);
    }
    out.witness = w;
    return out;
  };
  // small integers first: they give the most readable witnesses
  for (long x : {0L, 1L, -1L, 2L, -2L, 3L, -3L}) {
    ++out.nodes;
    if (all_nonneg(Rat(x))) return accept(Rat(x));
  }
  IPoly prod = IPoly::constant(1);
  for (const IPoly& q : polys) prod = prod * q;
  QPoly pq = to_qpoly(prod);
  QPoly g = qpoly_gcd(pq, qpoly_derivative(pq));
  if (g.size() > 1) pq = qpoly_div(pq, g);
  for (const Rat& x : separating_samples(pq)) {
    ++out.nodes;
    if (all_nonneg(x)) return accept(x);
  }
  return out;
}

LocalVerdict solvable_R(const HypCurve& curve) { return system_solvable_R({curve.f}); }

}  // namespace hyperpts
