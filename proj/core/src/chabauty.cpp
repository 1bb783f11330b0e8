#include "hyperpts/chabauty.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace hyperpts {

namespace {

std::uint64_t mod_p(const Int& c, std::uint64_t p) { return mod_of(c, p); }

std::uint64_t eval_mod(const IPoly& f, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = (mulmod(acc, x, p) + mod_p(f.coeffs()[i], p)) % p;
  return acc;
}

/// Order of d in J(F_p), whose order divides N.
std::uint64_t order_in(const Jacobian<FpElem>& J, const FpDiv& d, const Int& N) {
  Int ord = N;
  for (const PrimePower& pp : factor_integer(N)) {
    for (unsigned e = 0; e < pp.exponent; ++e) {
      const Int smaller = ord / pp.prime;
      if (!J.is_identity(J.mul(smaller, d))) break;
      ord = smaller;
    }
  }
  return ord.get_ui();
}

struct Aux {
  std::uint64_t x1, x2;
  bool flip1, flip2;
};

/// One attempt at log(multiple * D) with the auxiliary divisor T = Q1 + Q2 - 2 oo.
std::pair<std::uint64_t, std::uint64_t> log_attempt(const HypCurve& odd, const QDiv& d, std::uint64_t p,
                                                    std::uint64_t multiple, const Aux& aux, int prec) {
  const Jacobian<PadicNum> J = jacobian_qp(odd, p, prec);
  const Int pk = pow_int(Int(static_cast<unsigned long>(p)), static_cast<unsigned>(prec));
  auto num = [&](const Rat& q) { return PadicNum::from_rat(q, p, prec); };

  const Int x1(static_cast<unsigned long>(aux.x1)), x2(static_cast<unsigned long>(aux.x2));
  Int y1 = sqrt_unit_mod_pk(mod_floor(odd.f(x1), pk), p, prec), y2 = sqrt_unit_mod_pk(mod_floor(odd.f(x2), pk), p, prec);
  if (aux.flip1) y1 = pk - y1;
  if (aux.flip2) y2 = pk - y2;
  const PadicNum X1 = num(Rat(x1)), X2 = num(Rat(x2)), Y1 = num(Rat(y1)), Y2 = num(Rat(y2));
  const PadicNum s = (Y2 - Y1) / (X2 - X1);
  const MumfordDiv<PadicNum> T{{X1 * X2, -(X1 + X2), J.one()}, {Y1 - s * X1, s}};

  MumfordDiv<PadicNum> D;
  for (const Rat& c : d.u) D.u.push_back(num(c));
  for (const Rat& c : d.v) D.v.push_back(num(c));
  Jacobian<PadicNum>::trim(D.v);

  // left to right over the bits of the multiple, keeping acc = T + k D
  const Int mult(static_cast<unsigned long>(multiple));
  MumfordDiv<PadicNum> acc = T;
  for (std::size_t i = mpz_sizeinbase(mult.get_mpz_t(), 2); i-- > 0;) {
    acc = J.sub(J.dbl(acc), T);
    if (mpz_tstbit(mult.get_mpz_t(), i)) acc = J.add(acc, D);
  }
  if (acc.degree() != 2) fail(ErrorCode::WeierstrassDisk, "shifted divisor lost a point");
  for (const auto* poly : {&acc.u, &acc.v})
    for (const PadicNum& c : *poly)
      if (c.absolute_precision() < 2) fail(ErrorCode::PrecisionLoss, "shifted divisor known below p^2");
  for (std::size_t i = 0; i < 3; ++i) {
    const PadicNum diff = acc.u[i] - T.u[i];
    if (diff.absolute_precision() < 2 || (!diff.is_zero() && diff.valuation() < 1)) fail(ErrorCode::PrecisionLoss, "shifted divisor left the residue disks");
  }

  PadicNum l0 = J.zero(), l1 = J.zero();
  const std::pair<const PadicNum*, std::uint64_t> centres[2] = {{&X1, aux.x1}, {&X2, aux.x2}};
  const Int yb[2] = {y1, y2};
  for (int j = 0; j < 2; ++j) {
    const KPoly<PadicNum> du = {acc.u[1], acc.u[2] + acc.u[2]};
    PadicNum a = *centres[j].first;
    // an inexact zero step still caps the precision of a
    for (int it = 0; it < prec + 2; ++it) a = a - J.eval(acc.u, a) / J.eval(du, a);
    const PadicNum delta = a - *centres[j].first;
    if (delta.absolute_precision() < 2 || (!delta.is_zero() && delta.valuation() < 1)) fail(ErrorCode::PrecisionLoss, "root left its disk");
    // y(A_j) must lie in the disk of Q_j
    const PadicNum dy = J.eval(acc.v, a) - num(Rat(yb[j]));
    if (dy.absolute_precision() < 1) fail(ErrorCode::PrecisionLoss, "y of the shifted divisor unknown mod p");
    if (!dy.is_zero() && dy.valuation() < 1) fail(ErrorCode::WeierstrassDisk, "points paired across disks");
    const std::uint64_t ybar = mod_p(yb[j], p);
    const PadicNum w = delta / num(Rat(Int(static_cast<unsigned long>((2 * ybar) % p))));
    l0 += w;
    l1 += w * num(Rat(Int(static_cast<unsigned long>(centres[j].second))));
  }
  const std::uint64_t p2 = p * p;
  auto res = [&](const PadicNum& x) -> std::uint64_t {
    if (x.is_zero() && x.absolute_precision() >= 2) return 0;
    if (x.absolute_precision() < 2 || x.valuation() < 0) fail(ErrorCode::PrecisionLoss, "log known below p^2");
    return mod_of(x.residue(2), p2);
  };
  const std::uint64_t inv = invmod(multiple % p2, p2);
  return {mulmod(res(l0), inv, p2), mulmod(res(l1), inv, p2)};
}

}  // namespace

std::uint64_t LogVector::residue0() const { return l0.is_zero() ? 0 : l0.residue(2).get_ui(); }
std::uint64_t LogVector::residue1() const { return l1.is_zero() ? 0 : l1.residue(2).get_ui(); }

LogVector jac_log_mod_p2(const HypCurve& odd, const QDiv& d, std::uint64_t p, const LogOptions& opt) {
  require(odd.degree() == 5 && odd.f.lc() == 1, "logs are computed on a monic quintic model");
  require(opt.multiplier >= 1 && opt.precision >= 2, "bad log options");
  if (p <= 2 || odd.is_bad(p)) fail(ErrorCode::BadPrime, "prime " + std::to_string(p) + " is not good and odd");
  const Jacobian<FpElem> Jp = jacobian_fp(odd, p);
  const FpDiv db = reduce_div(d, p);
  const std::uint64_t m = order_in(Jp, db, jac_order_fp(odd, p));
  const std::uint64_t multiple = m * opt.multiplier;
  if (multiple % p == 0) fail(ErrorCode::PDividesOrder, "p divides " + std::to_string(multiple));

  std::vector<std::uint64_t> xs;
  for (std::uint64_t x = 0; x < p; ++x)
    if (legendre(eval_mod(odd.f, x, p), p) == 1) xs.push_back(x);
  if (xs.size() < 2) fail(ErrorCode::WeierstrassDisk, "fewer than two non-Weierstrass x-coordinates mod p");

  std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ull + p);
  int prec = opt.precision;
  // Cantor steps decide degree drops on inexact zeros, which can slip past the
  // precision checks; a value counts once two different auxiliary divisors agree.
  const bool one_pair = xs.size() == 2;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::set<std::pair<std::uint64_t, int>>> seen;
  Error last(ErrorCode::PrecisionLoss, "no attempt made");
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    if (attempt > 0 && attempt % 4 == 0) prec += 4;
    Aux aux{xs[rng() % xs.size()], 0, (rng() & 1) != 0, (rng() & 1) != 0};
    do aux.x2 = xs[rng() % xs.size()];
    while (aux.x2 == aux.x1);
    try {
      const auto r = log_attempt(odd, d, p, multiple, aux, prec);
      const std::uint64_t key = std::min(aux.x1, aux.x2) * p + std::max(aux.x1, aux.x2);
      auto& who = seen[r];
      who.insert({key, one_pair ? prec : 0});
      if (who.size() < 2) {
        last = Error(ErrorCode::PrecisionLoss, "log not confirmed by a second auxiliary divisor");
        continue;
      }
      LogVector out;
      out.p = p;
      out.l0 = PadicNum::from_int(Int(static_cast<unsigned long>(r.first)), p, 2);
      out.l1 = PadicNum::from_int(Int(static_cast<unsigned long>(r.second)), p, 2);
      out.order_mod_p = m;
      out.multiple = multiple;
      out.aux_x = {aux.x1, aux.x2};
      out.attempts = attempt + 1;
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonInvertibleDivision && e.code() != ErrorCode::PrecisionLoss &&
          e.code() != ErrorCode::WeierstrassDisk)
        throw;
      last = e;
    }
  }
  throw last;
}

DiffModP annihilator_from_log(const LogVector& log) {
  const std::uint64_t p = log.p;
  const std::uint64_t r0 = log.residue0(), r1 = log.residue1();
  if (r0 % p != 0 || r1 % p != 0) fail(ErrorCode::PrecisionLoss, "log of a kernel point is not divisible by p");
  const std::uint64_t l0 = r0 / p, l1 = r1 / p;
  if (l0 == 0 && l1 == 0) fail(ErrorCode::ZeroLog, "log vanishes mod p^2");
  DiffModP w{p, l1, (p - l0) % p};
  if (w.a1 != 0) {
    const std::uint64_t inv = invmod(w.a1, p);
    w.a0 = mulmod(w.a0, inv, p);
    w.a1 = 1;
  } else {
    w.a0 = 1;
  }
  return w;
}

DiffModP annihilator_mod_p(const HypCurve& odd, const QDiv& d, std::uint64_t p, const LogOptions& opt) {
  return annihilator_from_log(jac_log_mod_p2(odd, d, p, opt));
}

CriterionResult criterion(const HypCurve& odd, const DiffModP& omega, std::uint64_t p) {
  require(p > 2 && !odd.is_bad(p), "criterion needs a good odd prime");
  CriterionResult r;
  if (omega.a1 == 0) {
    r.reason = "infinity";
    return r;
  }
  const std::uint64_t x = (p - mulmod(omega.a0, invmod(omega.a1, p), p)) % p;
  const std::uint64_t fx = eval_mod(odd.f, x, p);
  if (fx == 0) {
    r.reason = "weierstrass";
    return r;
  }
  if (legendre(fx, p) == 1) {
    r.reason = "two points";
    return r;
  }
  r.pass = true;
  SeparatingCert c;
  c.p = p;
  c.N = jac_order_fp(odd, p);
  c.omega = omega;
  c.x_star = x;
  c.f_at_x_star = fx;
  r.cert = c;
  return r;
}

bool check_cert(const HypCurve& odd, const SeparatingCert& c) {
  const std::uint64_t p = c.p;
  if (p <= 2 || odd.is_bad(p) || c.omega.a1 != 1 || c.omega.a0 >= p) return false;
  const std::uint64_t x = (p - c.omega.a0) % p;
  return x == c.x_star && eval_mod(odd.f, x, p) == c.f_at_x_star && legendre(c.f_at_x_star, p) == -1 &&
         c.N == jac_order_fp(odd, p);
}

SeparatingSearch find_separating_prime(const MWInput& in, std::uint64_t pmax, const LogOptions& opt) {
  require(in.rank() == 1, "the criterion here is for rank 1");
  SeparatingSearch s;
  for (std::uint64_t p : primes_up_to(pmax)) {
    if (p == 2) continue;
    if (in.curve.is_bad(p)) {
      s.attempts.push_back({p, "BAD_PRIME"});
      continue;
    }
    try {
      const LogVector log = jac_log_mod_p2(in.curve, in.free[0], p, opt);
      const CriterionResult r = criterion(in.curve, annihilator_from_log(log), p);
      if (!r.pass) {
        s.attempts.push_back({p, r.reason});
        continue;
      }
      s.attempts.push_back({p, "PASS"});
      s.cert = *r.cert;
      s.cert->log = log;
      return s;
    } catch (const Error& e) {
      s.attempts.push_back({p, error_code_name(e.code())});
    }
  }
  return s;
}

const char* determination_status_name(DeterminationStatus s) {
  switch (s) {
    case DeterminationStatus::ProvenComplete: return "PROVEN_COMPLETE";
    case DeterminationStatus::CompleteUnassumed: return "COMPLETE_UNASSUMED";
    case DeterminationStatus::Undecided: return "UNDECIDED";
  }
  return "?";
}

namespace {

DeterminationStatus complete(const MWInput& in) {
  return in.index_coprime ? DeterminationStatus::ProvenComplete : DeterminationStatus::CompleteUnassumed;
}

Determination rank_zero(const MWInput& in, const std::vector<RatPoint>& known, const DeterminationOptions& opt) {
  Determination out;
  const Jacobian<Rat> J = jacobian_q(in.curve);
  const AbstractGroup A = AbstractGroup::of(in);
  std::uint64_t size = 1;
  for (std::uint64_t t : A.torsion) {
    size *= t;
    if (size > opt.cap) fail(ErrorCode::CapExceeded, "torsion subgroup larger than the cap");
  }
  std::vector<std::vector<QDiv>> multiples;
  for (std::size_t j = 0; j < in.torsion.size(); ++j) {
    std::vector<QDiv> m{J.identity()};
    for (std::uint64_t c = 1; c < in.torsion_orders[j]; ++c) m.push_back(J.add(m.back(), in.torsion[j]));
    multiples.push_back(std::move(m));
  }
  std::set<RatPoint> found;
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    const auto c = decode_class(idx, A.torsion);
    QDiv e = J.identity();
    for (std::size_t j = 0; j < c.size(); ++j) e = J.add(e, multiples[j][c[j]]);
    if (e.degree() == 0) {
      found.insert(RatPoint::infinity(RatPoint::Kind::Infinity));
    } else if (e.degree() == 1) {
      const Rat x = -e.u[0];
      found.insert(RatPoint::affine(x.get_num(), x.get_den(), e.v.empty() ? Rat(0) : e.v[0]));
    }
  }
  out.points.assign(found.begin(), found.end());
  out.occupied_bound = out.points.size();
  for (const RatPoint& k : known) {
    if (!found.count(k)) {
      out.status = DeterminationStatus::Undecided;
      out.note = "known point " + k.to_string() + " is not in the torsion subgroup; rank 0 input is inconsistent";
      return out;
    }
  }
  out.status = complete(in);
  return out;
}

}  // namespace

Determination determine_rational_points(const MWInput& in, const std::vector<RatPoint>& known,
                                        const DeterminationOptions& opt) {
  validate(in);
  std::set<RatPoint> pts(known.begin(), known.end());
  pts.insert(RatPoint::infinity(RatPoint::Kind::Infinity));
  for (const RatPoint& k : pts)
    require(verify_point(in.curve, k), "known point " + k.to_string() + " is not on the odd model");
  const std::vector<RatPoint> known_pts(pts.begin(), pts.end());

  if (in.rank() == 0) return rank_zero(in, known_pts, opt);
  require(in.rank() == 1, "determination handles rank 0 and 1");

  Determination out;
  const SeparatingSearch sep = find_separating_prime(in, opt.pmax, LogOptions{kDefaultPadicPrecision, opt.seed});
  out.attempts = sep.attempts;
  if (!sep.cert) fail(ErrorCode::NoSeparatingPrime, "no prime up to " + std::to_string(opt.pmax) + " passes the criterion");
  out.cert = sep.cert;
  const std::uint64_t N = sep.cert->N.get_ui();

  std::vector<std::uint64_t> primes;
  for (std::uint64_t p : primes_up_to(std::max(opt.sieve_pmax, sep.cert->p)))
    if (p > 2 && !in.curve.is_bad(p)) primes.push_back(p);
  SieveCache cache(in, opt.seed);
  SieveOptions so;
  so.cap = opt.cap;
  so.seed = opt.seed;
  so.cache = &cache;
  out.global = run_sieve(in, N, primes, so);

  std::size_t occupied = out.global->survivors.size();
  if (occupied > known_pts.size()) {
    CosetStrategy st;
    st.multipliers = opt.multipliers;
    st.primes = primes;
    st.sieve = so;
    occupied = 0;
    for (std::uint64_t cls : out.global->survivors) {
      const CosetResult r = coset_eliminate(in, decode_class(cls, out.global->class_moduli), N, st);
      ClassLedgerEntry e{r.c0, r.outcome, r.n, {}};
      for (const PrimeRecord& rec : r.last.primes) e.primes.push_back(rec.p);
      if (r.outcome != CosetOutcome::Eliminated) ++occupied;
      out.ledger.push_back(std::move(e));
    }
  }
  out.occupied_bound = occupied;
  out.points = known_pts;
  if (occupied < known_pts.size())
    fail(ErrorCode::PreconditionViolated, "more known points than classes left; the index assertion must be false");
  if (occupied == known_pts.size()) {
    out.status = complete(in);
  } else {
    out.status = DeterminationStatus::Undecided;
    out.note = std::to_string(occupied - known_pts.size()) + " class(es) of A/NA not eliminated";
  }
  return out;
}

}  // namespace hyperpts
