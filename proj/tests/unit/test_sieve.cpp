#include <doctest.h>

#include "fixtures.hpp"
#include "hyperpts/sieve.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace hyperpts;

namespace {

const std::vector<std::uint64_t> kPrimes = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61};

QDiv combine(const Jacobian<Rat>& J, const MWInput& mw, const std::vector<long>& c) {
  QDiv acc = J.identity();
  for (std::size_t i = 0; i < mw.free.size(); ++i) acc = J.add(acc, J.mul(Int(c[i]), mw.free[i]));
  for (std::size_t j = 0; j < mw.torsion.size(); ++j) acc = J.add(acc, J.mul(Int(c[mw.free.size() + j]), mw.torsion[j]));
  return acc;
}

/// Element of J(F_p) with the given coordinates in A, by direct arithmetic.
FpDiv combine_fp(const JacGroupFp& G, const MWInput& mw, const std::vector<std::uint64_t>& c) {
  const auto& J = G.jacobian();
  FpDiv acc = J.identity();
  std::size_t i = 0;
  for (const QDiv& g : mw.free) acc = J.add(acc, J.mul(Int(static_cast<unsigned long>(c[i++])), reduce_div(g, G.prime())));
  for (const QDiv& g : mw.torsion) acc = J.add(acc, J.mul(Int(static_cast<unsigned long>(c[i++])), reduce_div(g, G.prime())));
  return acc;
}

/// Independent survivor computation: class c survives when for every prime
/// the image of c equals the image of some point of C(F_p).
std::vector<std::uint64_t> brute_survivors(const AbstractGroup& A, std::uint64_t n, const std::vector<PrimeData>& data) {
  const auto moduli = A.moduli(n);
  std::vector<std::uint64_t> out;
  for (std::uint64_t cls = 0; cls < *A.quotient_size(n); ++cls) {
    const auto c = decode_class(cls, moduli);
    bool ok = true;
    for (const PrimeData& d : data) {
      std::vector<std::uint64_t> img(d.target_moduli.size(), 0);
      for (std::size_t g = 0; g < c.size(); ++g)
        for (std::size_t j = 0; j < img.size(); ++j) img[j] = (img[j] + c[g] * d.gen_images[g][j]) % d.target_moduli[j];
      const std::uint64_t e = encode_class(img, d.target_moduli);
      if (std::find(d.curve_image.begin(), d.curve_image.end(), e) == d.curve_image.end()) ok = false;
    }
    if (ok) out.push_back(cls);
  }
  return out;
}

}  // namespace

TEST_SUITE("sieve") {
  TEST_CASE("fixture generators and known point classes are exact") {
    const auto fx = fixture::rank_one_z8();
    CHECK_NOTHROW(validate(fx.mw));
    const Jacobian<Rat> J = jacobian_q(fx.mw.curve);
    for (const auto& kp : fx.points) {
      INFO(kp.point.to_string());
      const QDiv P = embed_point(to_odd_point(fx.odd, kp.point));
      CHECK(Jacobian<Rat>::equal(P, combine(J, fx.mw, kp.coords)));
    }
    // T8 generates a subgroup not containing T2
    CHECK_FALSE(Jacobian<Rat>::equal(J.mul(4, fx.mw.torsion[0]), fx.mw.torsion[1]));
  }

  TEST_CASE("validate rejects wrong torsion orders") {
    auto fx = fixture::rank_one_z8();
    fx.mw.torsion_orders = {4, 2};
    CHECK_THROWS_AS(validate(fx.mw), Error);
    fx.mw.torsion_orders = {16, 2};
    CHECK_THROWS_AS(validate(fx.mw), Error);
    fx.mw.torsion_orders = {8, 2};
    fx.mw.free[0].v[0] = 35;
    CHECK_THROWS_AS(validate(fx.mw), Error);
  }

  TEST_CASE("generator file round trip") {
    const auto fx = fixture::rank_one_z8();
    std::ostringstream out;
    write_generators(fx.mw, out);
    std::istringstream in("# comment line\n" + out.str() + "\n");
    const MWInput back = read_generators(fx.mw.curve, in);
    REQUIRE(back.free.size() == 1);
    REQUIRE(back.torsion.size() == 2);
    CHECK(back.torsion_orders == fx.mw.torsion_orders);
    CHECK(Jacobian<Rat>::equal(back.free[0], fx.mw.free[0]));
    CHECK(Jacobian<Rat>::equal(back.torsion[1], fx.mw.torsion[1]));

    std::istringstream half("free | 1 1/2 | 3/4\n");
    const MWInput h = read_generators(fx.mw.curve, half);
    CHECK(h.free[0].u == KPoly<Rat>{Rat(1, 2), 1});
    std::istringstream bad1("free | 2 0 | 1\n"), bad2("torsion | 1 0 | 1\n"), bad3("free | 1 x | 1\n"), bad4("free | 1 0\n");
    for (auto* s : {&bad1, &bad2, &bad3, &bad4}) {
      try {
        read_generators(fx.mw.curve, *s);
        FAIL("accepted a malformed line");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
      }
    }
  }

  TEST_CASE("class encoding and cosets partition A/nA") {
    AbstractGroup A{1, {8, 2}};
    const auto m = A.moduli(12);
    CHECK(m == std::vector<std::uint64_t>{12, 4, 2});
    CHECK(*A.quotient_size(12) == 96);
    for (std::uint64_t i = 0; i < 96; ++i) CHECK(encode_class(decode_class(i, m), m) == i);
    std::multiset<std::uint64_t> seen;
    const auto m3 = A.moduli(3);
    for (std::uint64_t c = 0; c < *A.quotient_size(3); ++c) {
      const auto over = classes_over(A, decode_class(c, m3), 3, 12);
      CHECK(over.size() == 96 / *A.quotient_size(3));
      for (std::uint64_t x : over) {
        CHECK(decode_class(x, m)[0] % 3 == decode_class(c, m3)[0]);
        seen.insert(x);
      }
    }
    CHECK(seen.size() == 96);
    CHECK(std::set<std::uint64_t>(seen.begin(), seen.end()).size() == 96);
    CHECK(smallest_representative({11, 3, 1}, m) == std::vector<std::int64_t>{-1, -1, 1});
    CHECK(smallest_representative({6, 2, 0}, m) == std::vector<std::int64_t>{6, 2, 0});
  }

  TEST_CASE("prime data is a homomorphism and the curve image is small") {
    const auto fx = fixture::rank_one_z8();
    std::mt19937_64 rng(5);
    for (std::uint64_t p : {5, 7, 11, 13}) {
      for (std::uint64_t n : {4, 6, 24}) {
        const PrimeData d = prime_data(fx.mw, p, n);
        const JacGroupFp G = group_structure_fp(fx.mw.curve, p);
        CHECK(d.curve_image.size() <= d.curve_points);
        CHECK(d.curve_points == count_points(fx.mw.curve, p));
        const auto moduli = AbstractGroup::of(fx.mw).moduli(n);
        for (int t = 0; t < 20; ++t) {
          std::vector<std::uint64_t> c;
          for (std::uint64_t mm : moduli) c.push_back(rng() % mm);
          auto direct = G.dlog(combine_fp(G, fx.mw, c));
          for (std::size_t j = 0; j < direct.size(); ++j) direct[j] %= d.target_moduli[j];
          CHECK(d.map_class(c) == encode_class(direct, d.target_moduli));
        }
      }
    }
    CHECK_THROWS_AS(prime_data(fx.mw, 3, 4), Error);
  }

  TEST_CASE("classes of known points always survive") {
    const auto fx = fixture::rank_one_z8();
    for (std::uint64_t n : {2, 3, 4, 6, 8, 12, 24}) {
      const SieveResult r = run_sieve(fx.mw, n, kPrimes);
      CHECK(r.verdict == SieveVerdict::Survivors);
      for (const auto& kp : fx.points) {
        INFO("n = " << n << ", point " << kp.point.to_string());
        const auto cls = encode_class(fixture::class_mod(kp.coords, r.class_moduli), r.class_moduli);
        CHECK(std::binary_search(r.survivors.begin(), r.survivors.end(), cls));
      }
    }
  }

  TEST_CASE("survivors shrink monotonically and do not depend on prime order") {
    const auto fx = fixture::rank_one_z8();
    SieveOptions plain;
    plain.schedule = false;
    const SieveResult r = run_sieve(fx.mw, 24, kPrimes, plain);
    std::size_t prev = *AbstractGroup::of(fx.mw).quotient_size(24);
    for (const auto& rec : r.primes) {
      CHECK(rec.survivors_after <= prev);
      prev = rec.survivors_after;
    }
    std::vector<std::uint64_t> shuffled = kPrimes;
    std::mt19937_64 rng(11);
    for (int t = 0; t < 4; ++t) {
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK(run_sieve(fx.mw, 24, shuffled, plain).survivors == r.survivors);
    }
    CHECK(run_sieve(fx.mw, 24, kPrimes).survivors == r.survivors);
    // more primes never add survivors
    const SieveResult few = run_sieve(fx.mw, 24, {5, 7, 11}, plain);
    CHECK(std::includes(few.survivors.begin(), few.survivors.end(), r.survivors.begin(), r.survivors.end()));
  }

  TEST_CASE("bad primes are skipped and recorded") {
    const auto fx = fixture::rank_one_z8();
    const SieveResult r = run_sieve(fx.mw, 4, {2, 3, 5, 7});
    REQUIRE(r.skipped.size() == 2);
    CHECK(r.skipped[0].reason == "BAD_PRIME");
    CHECK(r.primes.size() == 2);
  }

  TEST_CASE("certificate replay reproduces digests and survivors") {
    const auto fx = fixture::rank_one_z8();
    const SieveResult r = run_sieve(fx.mw, 12, kPrimes);
    std::vector<PrimeData> data;
    for (const auto& rec : r.primes) {
      data.push_back(prime_data(fx.mw, rec.p, 12));
      CHECK(data.back().digest == rec.digest);
      CHECK(data.back().group_order == rec.group_order);
    }
    const SieveResult replay = sieve_with_data(r.group, 12, data, true);
    CHECK(replay.survivors == r.survivors);
    CHECK(replay.survivors == brute_survivors(r.group, 12, data));
    SieveCache cache(fx.mw);
    for (const auto& rec : r.primes) CHECK(cache.data(rec.p, 12).digest == rec.digest);
    SieveOptions cached;
    cached.cache = &cache;
    CHECK(run_sieve(fx.mw, 12, kPrimes, cached).survivors == r.survivors);
    CHECK_THROWS_AS(cache.data(3, 12), Error);
    CHECK_THROWS_AS(cache.data(3, 12), Error);
    // a different seed yields the same group, and so the same survivors
    SieveOptions other;
    other.seed = 99;
    CHECK(run_sieve(fx.mw, 12, kPrimes, other).survivors == r.survivors);
  }

  TEST_CASE("cap on the number of classes") {
    const auto fx = fixture::rank_one_z8();
    SieveOptions tiny;
    tiny.cap = 10;
    try {
      run_sieve(fx.mw, 12, kPrimes, tiny);
      FAIL("cap not enforced");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CapExceeded);
    }
  }

  TEST_CASE("synthetic sieve is sound against a planted point set") {
    // A = Z, n = 6. Each trial plants a set S of true classes, builds random
    // targets Z/a + Z/b whose curve images contain the images of S plus noise,
    // and checks S survives and the survivors match the exhaustive count.
    std::mt19937_64 rng(2024);
    const AbstractGroup A{1, {}};
    const std::uint64_t n = 6;
    int emptied = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      std::vector<std::uint64_t> planted;
      for (std::uint64_t c = 0; c < n; ++c)
        if (rng() % 4 == 0) planted.push_back(c);
      std::vector<PrimeData> data;
      const int primes = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < primes; ++k) {
        PrimeData d;
        d.p = 101 + 2 * static_cast<std::uint64_t>(k);
        d.n = n;
        const std::uint64_t a = 1 + rng() % 6, b = a * (1 + rng() % 4);
        d.invariants = {a, b};
        d.group_order = Int(static_cast<unsigned long>(a * b));
        d.target_moduli = {std::gcd(n, a), std::gcd(n, b)};
        d.gen_images = {{rng() % d.target_moduli[0], rng() % d.target_moduli[1]}};
        for (std::uint64_t c : planted) d.curve_image.push_back(d.map_class({c}));
        for (int e = static_cast<int>(rng() % 3); e > 0; --e)
          d.curve_image.push_back(encode_class({rng() % d.target_moduli[0], rng() % d.target_moduli[1]}, d.target_moduli));
        std::sort(d.curve_image.begin(), d.curve_image.end());
        d.curve_image.erase(std::unique(d.curve_image.begin(), d.curve_image.end()), d.curve_image.end());
        data.push_back(d);
      }
      const bool assumed = rng() & 1;
      const SieveResult r = sieve_with_data(A, n, data, assumed);
      for (std::uint64_t c : planted) CHECK(std::binary_search(r.survivors.begin(), r.survivors.end(), c));
      CHECK(r.survivors == brute_survivors(A, n, data));
      if (r.survivors.empty()) {
        ++emptied;
        CHECK(r.verdict == (assumed ? SieveVerdict::EmptyProven : SieveVerdict::EmptyUnassumed));
      } else {
        CHECK(r.verdict == SieveVerdict::Survivors);
      }
    }
    CHECK(emptied > 0);
  }

  TEST_CASE("coset elimination") {
    const auto fx = fixture::rank_one_z8();
    CosetStrategy st;
    st.primes = kPrimes;
    const AbstractGroup A = AbstractGroup::of(fx.mw);
    const auto m4 = A.moduli(4);
    int eliminated = 0;
    for (std::uint64_t cls = 0; cls < *A.quotient_size(4); ++cls) {
      const auto c0 = decode_class(cls, m4);
      bool holds_point = false;
      for (const auto& kp : fx.points) holds_point |= fixture::class_mod(kp.coords, m4) == c0;
      const CosetResult r = coset_eliminate(fx.mw, c0, 4, st);
      INFO("class " << cls << " " << coset_outcome_name(r.outcome));
      if (holds_point) {
        CHECK(r.outcome != CosetOutcome::Eliminated);
      } else if (r.outcome == CosetOutcome::Eliminated) {
        ++eliminated;
        CHECK(r.last.survivors.empty());
      }
      if (r.outcome == CosetOutcome::Survived) CHECK(!r.representatives.empty());
    }
    CHECK(eliminated > 0);
  }

  TEST_CASE("index certificate for the free generator") {
    const auto fx = fixture::rank_one_z8();
    for (std::uint64_t ell : {2, 3, 5, 7}) {
      INFO("ell = " << ell);
      CHECK(free_part_not_divisible(fx.mw, ell, kPrimes).has_value());
    }
    // 2D is divisible by 2, so no prime can witness otherwise
    auto doubled = fx.mw;
    doubled.free[0] = jacobian_q(fx.mw.curve).mul(2, fx.mw.free[0]);
    CHECK_FALSE(free_part_not_divisible(doubled, 2, kPrimes).has_value());
    CHECK(free_part_not_divisible(doubled, 3, kPrimes).has_value());
  }
}
