#include "hyperpts/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace hyperpts {

namespace {

std::string trim_ws(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<Rat> parse_rats(const std::string& field, int line) {
  std::istringstream in(field);
  std::vector<Rat> out;
  std::string tok;
  while (in >> tok) {
    Rat q;
    if (q.set_str(tok, 10) != 0 || q.get_den() == 0)
      fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": bad rational '" + tok + "'");
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

/// Leading-first list to a trimmed low-to-high polynomial.
KPoly<Rat> to_poly(std::vector<Rat> leading_first) {
  std::reverse(leading_first.begin(), leading_first.end());
  Jacobian<Rat>::trim(leading_first);
  return leading_first;
}

std::string poly_field(const KPoly<Rat>& p) {
  if (p.empty()) return "0";
  std::string s;
  for (std::size_t i = p.size(); i-- > 0;) {
    s += to_string(p[i]);
    if (i) s += ' ';
  }
  return s;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 15];
  return s;
}

std::vector<std::uint64_t> reduce_coords(const std::vector<std::uint64_t>& c, const std::vector<std::uint64_t>& m) {
  std::vector<std::uint64_t> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] % m[i];
  return out;
}

/// Keeps the classes whose image lies in the curve image.
void filter(std::vector<std::uint64_t>& survivors, const std::vector<std::uint64_t>& moduli, const PrimeData& d) {
  std::vector<std::uint64_t> kept;
  for (std::uint64_t cls : survivors)
    if (d.in_curve_image(d.map_class(decode_class(cls, moduli)))) kept.push_back(cls);
  survivors.swap(kept);
}

std::vector<std::uint64_t> all_classes(const AbstractGroup& A, std::uint64_t n, std::size_t cap) {
  const auto size = A.quotient_size(n);
  if (!size || *size > cap)
    fail(ErrorCode::CapExceeded, "#A/nA exceeds the cap of " + std::to_string(cap) + " classes");
  std::vector<std::uint64_t> out(*size);
  std::iota(out.begin(), out.end(), std::uint64_t(0));
  return out;
}

}  // namespace

void validate(const MWInput& in) {
  require(in.curve.degree() == 5 && in.curve.f.lc() == 1, "generators live on a monic quintic model");
  require(in.torsion.size() == in.torsion_orders.size(), "one order per torsion generator");
  const Jacobian<Rat> J = jacobian_q(in.curve);
  for (const QDiv& d : in.free) require(J.contains(d), "free generator not on J: " + div_to_string(d));
  for (std::size_t i = 0; i < in.torsion.size(); ++i) {
    const QDiv& d = in.torsion[i];
    const std::uint64_t t = in.torsion_orders[i];
    require(J.contains(d), "torsion generator not on J: " + div_to_string(d));
    require(t >= 1 && J.is_identity(J.mul(Int(static_cast<unsigned long>(t)), d)),
            "torsion generator " + div_to_string(d) + " is not killed by " + std::to_string(t));
    for (std::uint64_t q : small_prime_divisors(Int(static_cast<unsigned long>(t))))
      require(!J.is_identity(J.mul(Int(static_cast<unsigned long>(t / q)), d)),
              "torsion generator " + div_to_string(d) + " has order below " + std::to_string(t));
  }
}

std::string div_to_string(const QDiv& d) {
  return poly_field(d.u) + " | " + poly_field(d.v);
}

MWInput read_generators(const HypCurve& curve, std::istream& in) {
  MWInput out;
  out.curve = curve;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim_ws(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream parts(s);
    std::string f;
    while (std::getline(parts, f, '|')) fields.push_back(trim_ws(f));
    if (fields.size() != 3) fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": expected 3 fields");
    std::istringstream head(fields[0]);
    std::string kind;
    head >> kind;
    QDiv d{to_poly(parse_rats(fields[1], line)), to_poly(parse_rats(fields[2], line))};
    if (d.u.empty() || d.u.back() != 1)
      fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": u must be monic");
    if (kind == "free") {
      out.free.push_back(d);
    } else if (kind == "torsion") {
      std::uint64_t order = 0;
      if (!(head >> order) || order == 0)
        fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": torsion needs a positive order");
      out.torsion.push_back(d);
      out.torsion_orders.push_back(order);
    } else {
      fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": unknown kind '" + kind + "'");
    }
  }
  return out;
}

void write_generators(const MWInput& in, std::ostream& out) {
  for (const QDiv& d : in.free) out << "free | " << div_to_string(d) << "\n";
  for (std::size_t i = 0; i < in.torsion.size(); ++i)
    out << "torsion " << in.torsion_orders[i] << " | " << div_to_string(in.torsion[i]) << "\n";
}

AbstractGroup AbstractGroup::of(const MWInput& in) {
  AbstractGroup A;
  A.rank = in.rank();
  A.torsion = in.torsion_orders;
  return A;
}

std::vector<std::uint64_t> AbstractGroup::moduli(std::uint64_t n) const {
  std::vector<std::uint64_t> m(static_cast<std::size_t>(rank), n);
  for (std::uint64_t t : torsion) m.push_back(std::gcd(n, t));
  return m;
}

std::optional<std::uint64_t> AbstractGroup::quotient_size(std::uint64_t n) const {
  unsigned __int128 size = 1;
  for (std::uint64_t m : moduli(n)) {
    size *= m;
    if (size > (static_cast<unsigned __int128>(1) << 63)) return std::nullopt;
  }
  return static_cast<std::uint64_t>(size);
}

std::uint64_t encode_class(const std::vector<std::uint64_t>& coords, const std::vector<std::uint64_t>& moduli) {
  std::uint64_t idx = 0;
  for (std::size_t i = coords.size(); i-- > 0;) idx = idx * moduli[i] + coords[i] % moduli[i];
  return idx;
}

std::vector<std::uint64_t> decode_class(std::uint64_t index, const std::vector<std::uint64_t>& moduli) {
  std::vector<std::uint64_t> c(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    c[i] = index % moduli[i];
    index /= moduli[i];
  }
  return c;
}

std::uint64_t PrimeData::map_class(const std::vector<std::uint64_t>& coords) const {
  std::vector<std::uint64_t> img(target_moduli.size(), 0);
  for (std::size_t g = 0; g < coords.size(); ++g) {
    if (coords[g] == 0) continue;
    for (std::size_t j = 0; j < img.size(); ++j)
      img[j] = (img[j] + mulmod(coords[g] % target_moduli[j], gen_images[g][j], target_moduli[j])) % target_moduli[j];
  }
  return encode_class(img, target_moduli);
}

bool PrimeData::in_curve_image(std::uint64_t encoded) const {
  return std::binary_search(curve_image.begin(), curve_image.end(), encoded);
}

const SieveCache::Full& SieveCache::full(std::uint64_t p) {
  if (auto it = full_.find(p); it != full_.end()) return *it->second;
  if (auto it = failed_.find(p); it != failed_.end()) throw it->second;
  try {
    if (p <= 2 || in_.curve.is_bad(p)) fail(ErrorCode::BadPrime, "prime " + std::to_string(p) + " is not good and odd");
    const JacGroupFp G = group_structure_fp(in_.curve, p, seed_);
    auto f = std::make_shared<Full>();
    f->order = G.order();
    f->invariants = G.invariants();
    for (const QDiv& g : in_.free) f->gen_coords.push_back(G.dlog(reduce_div(g, p)));
    for (const QDiv& g : in_.torsion) f->gen_coords.push_back(G.dlog(reduce_div(g, p)));
    const auto& J = G.jacobian();
    f->point_coords.push_back(G.dlog(J.identity()));
    for (const FpDiv& pt : affine_point_divs(J)) f->point_coords.push_back(G.dlog(pt));
    return *full_.emplace(p, std::move(f)).first->second;
  } catch (const Error& e) {
    failed_.emplace(p, e);
    throw;
  }
}

const PrimeData& SieveCache::data(std::uint64_t p, std::uint64_t n) {
  require(n >= 1, "sieve modulus must be positive");
  if (auto it = data_.find({p, n}); it != data_.end()) return it->second;
  const Full& f = full(p);
  PrimeData d;
  d.p = p;
  d.n = n;
  d.group_order = f.order;
  d.invariants = f.invariants;
  for (std::uint64_t nj : d.invariants) d.target_moduli.push_back(std::gcd(n, nj));
  for (const auto& g : f.gen_coords) d.gen_images.push_back(reduce_coords(g, d.target_moduli));
  for (const auto& pt : f.point_coords) d.curve_image.push_back(encode_class(reduce_coords(pt, d.target_moduli), d.target_moduli));
  d.curve_points = f.point_coords.size();
  std::sort(d.curve_image.begin(), d.curve_image.end());
  d.curve_image.erase(std::unique(d.curve_image.begin(), d.curve_image.end()), d.curve_image.end());

  std::ostringstream canon;
  canon << p << ';' << n << ';';
  for (std::uint64_t m : d.invariants) canon << m << ',';
  canon << ';';
  for (const auto& gi : d.gen_images) {
    for (std::uint64_t c : gi) canon << c << ',';
    canon << '/';
  }
  canon << ';';
  for (std::uint64_t w : d.curve_image) canon << w << ',';
  d.digest = hex64(fnv1a(canon.str()));
  return data_.emplace(std::make_pair(p, n), std::move(d)).first->second;
}

PrimeData prime_data(const MWInput& in, std::uint64_t p, std::uint64_t n, std::uint64_t seed) {
  SieveCache cache(in, seed);
  return cache.data(p, n);
}

const char* sieve_verdict_name(SieveVerdict v) {
  switch (v) {
    case SieveVerdict::EmptyProven: return "EMPTY_PROVEN";
    case SieveVerdict::EmptyUnassumed: return "EMPTY_UNASSUMED";
    case SieveVerdict::Survivors: return "SURVIVORS";
  }
  return "?";
}

namespace {

void finish(SieveResult& res) {
  if (!res.survivors.empty())
    res.verdict = SieveVerdict::Survivors;
  else
    res.verdict = res.index_assumed ? SieveVerdict::EmptyProven : SieveVerdict::EmptyUnassumed;
}

}  // namespace

SieveResult sieve_with_data(const AbstractGroup& A, std::uint64_t n, const std::vector<PrimeData>& data,
                            bool index_assumed, const std::optional<std::vector<std::uint64_t>>& classes) {
  SieveResult res;
  res.n = n;
  res.group = A;
  res.class_moduli = A.moduli(n);
  res.index_assumed = index_assumed;
  res.survivors = classes ? *classes : all_classes(A, n, std::numeric_limits<std::size_t>::max());
  std::sort(res.survivors.begin(), res.survivors.end());
  for (const PrimeData& d : data) {
    require(d.n == n, "prime data computed for another modulus");
    require(d.gen_images.size() == res.class_moduli.size(), "prime data for another group");
    filter(res.survivors, res.class_moduli, d);
    res.primes.push_back({d.p, d.group_order, std::gcd(n, d.group_order.get_ui()), d.digest, res.survivors.size()});
  }
  finish(res);
  return res;
}

SieveResult run_sieve(const MWInput& in, std::uint64_t n, const std::vector<std::uint64_t>& primes,
                      const SieveOptions& opt, const std::optional<std::vector<std::uint64_t>>& classes) {
  SieveResult res;
  res.n = n;
  res.group = AbstractGroup::of(in);
  res.class_moduli = res.group.moduli(n);
  res.index_assumed = in.index_coprime;
  if (classes) {
    if (classes->size() > opt.cap) fail(ErrorCode::CapExceeded, "class list exceeds the cap");
    res.survivors = *classes;
    std::sort(res.survivors.begin(), res.survivors.end());
  } else {
    res.survivors = all_classes(res.group, n, opt.cap);
  }

  struct Candidate {
    std::uint64_t p;
    Int order;
    double score;
  };
  std::vector<Candidate> order;
  for (std::uint64_t p : primes) {
    try {
      if (p <= 2 || in.curve.is_bad(p)) fail(ErrorCode::BadPrime, "bad prime");
      const Int N = jac_order_fp(in.curve, p);
      const double shared = static_cast<double>(std::gcd(n, N.get_ui()));
      order.push_back({p, N, std::log(shared) / std::log(static_cast<double>(p))});
    } catch (const Error& e) {
      res.skipped.push_back({p, error_code_name(e.code())});
    }
  }
  if (opt.schedule)
    std::stable_sort(order.begin(), order.end(), [](const Candidate& a, const Candidate& b) { return a.score > b.score; });

  for (const Candidate& c : order) {
    if (res.survivors.empty()) break;
    try {
      std::optional<PrimeData> own;
      if (!opt.cache) own = prime_data(in, c.p, n, opt.seed);
      const PrimeData& d = opt.cache ? opt.cache->data(c.p, n) : *own;
      filter(res.survivors, res.class_moduli, d);
      res.primes.push_back({c.p, d.group_order, std::gcd(n, d.group_order.get_ui()), d.digest, res.survivors.size()});
    } catch (const Error& e) {
      res.skipped.push_back({c.p, error_code_name(e.code())});
    }
  }
  finish(res);
  return res;
}

std::vector<std::uint64_t> classes_over(const AbstractGroup& A, const std::vector<std::uint64_t>& c0,
                                        std::uint64_t N, std::uint64_t n) {
  require(N >= 1 && n % N == 0, "classes_over needs N | n");
  const auto mN = A.moduli(N), mn = A.moduli(n);
  require(c0.size() == mN.size(), "class of the wrong length");
  std::vector<std::uint64_t> out{0};
  std::uint64_t radix = 1;
  // mixed-radix digits, lowest coordinate first
  for (std::size_t i = 0; i < mn.size(); ++i) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t x = c0[i] % mN[i]; x < mn[i]; x += mN[i])
      for (std::uint64_t base : out) next.push_back(base + x * radix);
    out.swap(next);
    radix *= mn[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> smallest_representative(const std::vector<std::uint64_t>& coords,
                                                  const std::vector<std::uint64_t>& moduli) {
  std::vector<std::int64_t> r;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto c = static_cast<std::int64_t>(coords[i] % moduli[i]), m = static_cast<std::int64_t>(moduli[i]);
    r.push_back(2 * c > m ? c - m : c);
  }
  return r;
}

const char* coset_outcome_name(CosetOutcome o) {
  switch (o) {
    case CosetOutcome::Eliminated: return "ELIMINATED";
    case CosetOutcome::Survived: return "SURVIVED";
    case CosetOutcome::CapReached: return "CAP_REACHED";
  }
  return "?";
}

CosetResult coset_eliminate(const MWInput& in, const std::vector<std::uint64_t>& c0, std::uint64_t N,
                            const CosetStrategy& strategy) {
  require(N >= 2, "coset modulus must be at least 2");
  CosetResult res;
  res.c0 = c0;
  res.N = N;
  const AbstractGroup A = AbstractGroup::of(in);
  SieveOptions opt = strategy.sieve;
  std::optional<SieveCache> local;
  if (!opt.cache) opt.cache = &local.emplace(in, opt.seed);
  for (std::uint64_t k : strategy.multipliers) {
    const std::uint64_t n = k * N;
    const auto size = A.quotient_size(n);
    if (!size || *size / std::max<std::uint64_t>(*A.quotient_size(N), 1) > strategy.sieve.cap) {
      res.outcome = CosetOutcome::CapReached;
      return res;
    }
    res.n = n;
    res.last = run_sieve(in, n, strategy.primes, opt, classes_over(A, c0, N, n));
    if (res.last.survivors.empty()) {
      res.outcome = CosetOutcome::Eliminated;
      return res;
    }
  }
  res.outcome = CosetOutcome::Survived;
  for (std::uint64_t cls : res.last.survivors)
    res.representatives.push_back(smallest_representative(decode_class(cls, res.last.class_moduli), res.last.class_moduli));
  return res;
}

std::optional<std::uint64_t> free_part_not_divisible(const MWInput& in, std::uint64_t ell,
                                                     const std::vector<std::uint64_t>& primes) {
  require(in.rank() == 1, "divisibility check is for rank 1");
  for (std::uint64_t p : primes) {
    if (p <= 2 || in.curve.is_bad(p)) continue;
    try {
      const JacGroupFp G = group_structure_fp(in.curve, p);
      const auto& inv = G.invariants();
      const std::vector<std::uint64_t> D = G.dlog(reduce_div(in.free[0], p));
      std::vector<std::vector<std::uint64_t>> tors;
      for (const QDiv& t : in.torsion) tors.push_back(G.dlog(reduce_div(t, p)));
      // every combination of torsion generators
      std::uint64_t combos = 1;
      for (std::uint64_t t : in.torsion_orders) combos *= t;
      bool all_outside = true;
      for (std::uint64_t idx = 0; idx < combos && all_outside; ++idx) {
        std::vector<std::uint64_t> x = D;
        std::uint64_t rest = idx;
        for (std::size_t g = 0; g < tors.size(); ++g) {
          const std::uint64_t c = rest % in.torsion_orders[g];
          rest /= in.torsion_orders[g];
          for (std::size_t j = 0; j < x.size(); ++j)
            x[j] = (x[j] + inv[j] - mulmod(c % inv[j], tors[g][j], inv[j])) % inv[j];
        }
        bool inside = true;
        for (std::size_t j = 0; j < x.size(); ++j)
          if (x[j] % std::gcd(ell, inv[j]) != 0) inside = false;
        if (inside) all_outside = false;
      }
      if (all_outside) return p;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

}  // namespace hyperpts
