#include <doctest.h>

#include "fixtures.hpp"
#include "hyperpts/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include <unistd.h>

using namespace hyperpts;
namespace fs = std::filesystem;

namespace {

/// Fresh scratch directory under the system temp dir.
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hyperpts_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

bool no_json_numbers(const Json& j) {
  if (j.is_number()) return false;
  if (j.is_structured())
    for (const Json& c : j)
      if (!no_json_numbers(c)) return false;
  return true;
}

std::vector<RatPoint> sorted(std::vector<RatPoint> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

const char* kDescentExample = "-(x^2+x-1)*(x^4+x^3+x^2+x+2)";

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("parse and normalize") {
    // leading zero dropped, coefficient order leading first
    const HypCurve c = parse_and_normalize("0 -3 1 -2 0 -2 2 3");
    CHECK(c.f == IPoly{3, 2, -2, 0, -2, 1, -3});
    CHECK(curve_key(c) == "-3 1 -2 0 -2 2 3");
    CHECK(parse_and_normalize("x^5+1").f == IPoly{1, 0, 0, 0, 0, 1});
    // odd degree: x -> -x makes lc positive
    CHECK(parse_and_normalize("-x^5 + x^2 + 1").f == IPoly{1, 0, 1, 0, 0, 1});
    CHECK(parse_and_normalize("  -1 0 0 1 0 1  ").f == IPoly{1, 0, 1, 0, 0, 1});
    // the two spellings of the descent example agree
    CHECK(parse_and_normalize(kDescentExample).f == parse_and_normalize("-1 -2 -1 -1 -2 -1 2").f);
    try {
      parse_and_normalize("x^2");
      FAIL("degree 2 accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegreeOutOfRange);
    }
    CHECK_THROWS_AS(parse_and_normalize("x^6 - 2*x^3 + 1"), Error);  // (x^3 - 1)^2
    try {
      parse_and_normalize("x^5 + $");
      FAIL("bad character accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find('5') != std::string::npos);  // position of '$'
    }
  }

  TEST_CASE("normalization is idempotent and respects isomorphism") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> c(-5, 5);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<Int> co(6);
      for (Int& x : co) x = c(rng);
      if (co[5] == 0) co[5] = 1;
      const IPoly f(co);
      const IPoly n = normalize_poly(f);
      CHECK(normalize_poly(n) == n);
      CHECK(normalize_poly(f.negate_x()) == n);
      CHECK(n.lc() > 0);
    }
  }

  TEST_CASE("decide: descent example") {
    const DecisionRecord r = decide(parse_and_normalize(kDescentExample));
    CHECK(r.status == DecisionStatus::EmptyDescent);
    CHECK(r.points.empty());
    CHECK(r.completeness == "PROVEN");
    CHECK(r.els == "true");
    CHECK(r.errors.empty());
    const Json& d = r.certificates.at("descent");
    CHECK(d.at("verdict") == "EMPTY_PROVEN");
    const Json& rep = d.at("reports").at(d.at("empty_factorization").get<std::string>() == "0" ? 0 : 1);
    CHECK(rep.at("support") == Json::array({"19"}));
    CHECK(rep.at("survivors").empty());
    CHECK(r.certificates.at("local").at("solvable") == true);
  }

  TEST_CASE("decide: points found, no generators") {
    const HypCurve C = parse_and_normalize("x^5+1");
    const DecisionRecord r = decide(C);
    CHECK(r.status == DecisionStatus::HasPoints);
    CHECK(r.completeness == "UNDECIDED");
    CHECK(r.found_at == kQuickSearchBound);
    // oracle: unsieved search over the same box
    CHECK(r.points == sorted(brute_search(C, kQuickSearchBound).points));
    for (const RatPoint& p : r.points) CHECK(verify_point(C, p));
  }

  TEST_CASE("decide: empty at the real place") {
    const DecisionRecord r = decide(parse_and_normalize("-x^6-1"));
    CHECK(r.status == DecisionStatus::EmptyLocal);
    CHECK(r.points.empty());
    CHECK(r.els == "false");
    CHECK(r.certificates.at("local").at("failed_place") == "inf");
    CHECK_FALSE(r.certificates.contains("descent"));
  }

  TEST_CASE("records serialize without JSON numbers and round trip") {
    for (const char* s : {kDescentExample, "x^5+1", "-x^6-1", "0 -3 1 -2 0 -2 2 3"}) {
      const DecisionRecord r = decide(parse_and_normalize(s));
      const Json j = to_json(r);
      CHECK(no_json_numbers(j));
      const DecisionRecord back = record_from_json(Json::parse(j.dump()));
      CHECK(to_json(back) == j);
    }
    CHECK_THROWS_AS(record_from_json(Json::parse(R"({"key": "1"})")), Error);
  }

  TEST_CASE("cache coherence") {
    const fs::path dir = scratch("cache");
    const HypCurve C = parse_and_normalize(kDescentExample);
    {
      DecisionCache cache(dir);
      const DecisionRecord first = decide(C, {}, &cache);
      CHECK_FALSE(first.from_cache);
      const DecisionRecord second = decide(C, {}, &cache);
      CHECK(second.from_cache);
      CHECK(to_json(second, false) == to_json(first, false));
      // other options, other entry
      DecideOptions quick;
      quick.last_stage = Stage::Local;
      CHECK_FALSE(decide(C, quick, &cache).from_cache);
      CHECK(cache.size() == 2);
    }
    // a torn final line is ignored on reload
    {
      std::ofstream out(dir / "decisions.jsonl", std::ios::app);
      out << "{\"key\": \"-1 2";
    }
    DecisionCache reloaded(dir);
    CHECK(reloaded.size() == 2);
    const DecisionRecord third = decide(C, {}, &reloaded);
    CHECK(third.from_cache);
    CHECK(third.status == DecisionStatus::EmptyDescent);
    fs::remove_all(dir);
  }

  TEST_CASE("cache directory from the environment, flag wins") {
    const fs::path env_dir = scratch("env"), flag_dir = scratch("flag");
    ::setenv("HYPERPTS_CACHE_DIR", env_dir.c_str(), 1);
    CHECK(DecisionCache::from_env().file() == env_dir / "decisions.jsonl");
    CHECK(DecisionCache::from_env(flag_dir.string()).file() == flag_dir / "decisions.jsonl");
    ::unsetenv("HYPERPTS_CACHE_DIR");
    CHECK_FALSE(DecisionCache::from_env().enabled());
    fs::remove_all(env_dir);
    fs::remove_all(flag_dir);
  }

  TEST_CASE("batch isolation") {
    const std::vector<std::string> lines = {"x^5+1", "x^5 + $", kDescentExample, "x^2", "-x^6-1"};
    std::vector<std::string> alone;
    for (const std::string& l : lines) {
      try {
        alone.push_back(decision_status_name(decide(parse_and_normalize(l)).status));
      } catch (const Error& e) {
        alone.push_back(error_code_name(e.code()));
      }
    }
    CHECK(alone == std::vector<std::string>{"HAS_POINTS", "PARSE_ERROR", "EMPTY_DESCENT", "DEGREE_OUT_OF_RANGE",
                                            "EMPTY_LOCAL"});
    // the same lines with the poisoned ones removed decide identically
    CHECK(decision_status_name(decide(parse_and_normalize(lines[2])).status) == alone[2]);
  }

  TEST_CASE("status invariants over a sample") {
    CensusConfig cfg;
    cfg.samples = 150;
    cfg.seed = 11;
    for (const IPoly& f : census_curves(cfg)) {
      const HypCurve C = make_curve(normalize_poly(f));
      DecideOptions opt;
      opt.search_details = false;
      const DecisionRecord r = decide(C, opt);
      INFO(r.key);
      const bool empty = r.status == DecisionStatus::EmptyLocal || r.status == DecisionStatus::EmptyDescent ||
                         r.status == DecisionStatus::EmptySieve;
      if (empty) CHECK(r.points.empty());
      if (r.status == DecisionStatus::HasPoints) CHECK_FALSE(r.points.empty());
      // chain order: a local failure never reaches the descent
      if (r.status == DecisionStatus::EmptyLocal) CHECK_FALSE(r.certificates.contains("descent"));
      if (r.status == DecisionStatus::EmptyDescent) CHECK(r.els == "true");
      for (const RatPoint& p : r.points) CHECK(verify_point(C, p));
      CHECK(r.errors.empty());
    }
  }

  TEST_CASE("decide with generators: rank one") {
    const auto fx = fixture::rank_one();
    DecideOptions opt;
    opt.generators = fx.mw;
    const DecisionRecord r = decide(fx.curve, opt);
    CHECK(r.status == DecisionStatus::DeterminedComplete);
    CHECK(r.completeness == "PROVEN");
    std::vector<RatPoint> expected;
    for (const auto& k : fx.points) expected.push_back(k.point);
    CHECK(r.points == sorted(expected));
    const Json& d = r.certificates.at("determination");
    CHECK(d.at("status") == "PROVEN_COMPLETE");
    CHECK(d.contains("cert"));
    CHECK(d.at("cert").at("p") == "11");
    CHECK(d.contains("ledger"));
    CHECK(replay(r, opt));

    // without the index assertion the record keeps its points but not completeness
    DecideOptions weak = opt;
    weak.generators->index_coprime = false;
    const DecisionRecord w = decide(fx.curve, weak);
    CHECK(w.status == DecisionStatus::HasPoints);
    CHECK(w.completeness == "UNDECIDED");
    CHECK(w.certificates.at("determination").at("status") == "COMPLETE_UNASSUMED");
  }

  TEST_CASE("decide with generators: rank zero") {
    const auto fx = fixture::rank_zero();
    DecideOptions opt;
    opt.generators = fx.mw;
    const DecisionRecord r = decide(fx.curve, opt);
    CHECK(r.status == DecisionStatus::DeterminedComplete);
    std::vector<RatPoint> expected;
    for (const auto& k : fx.points) expected.push_back(k.point);
    CHECK(r.points == sorted(expected));
  }

  TEST_CASE("generators for another model downgrade to a diagnostic") {
    DecideOptions opt;
    opt.generators = fixture::rank_one().mw;
    const DecisionRecord r = decide(fixture::rank_zero().curve, opt);
    CHECK(r.status == DecisionStatus::HasPoints);
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].stage == "determination");
    CHECK(r.errors[0].code == "PRECONDITION_VIOLATED");
  }

  TEST_CASE("census: partition, replay, shards and resume") {
    CensusConfig cfg;
    cfg.samples = 300;
    cfg.seed = 5;
    const CensusReport a = census(cfg);
    std::size_t total = 0;
    for (const auto& [o, n] : a.counts) total += n;
    CHECK(total == a.curves);
    CHECK(a.curves == 300);
    CHECK(a.failures.empty());
    CHECK(no_json_numbers(to_json(a)));

    cfg.threads = 3;
    CHECK(to_json(census(cfg)) == to_json(a));

    cfg.shard_count = 3;
    std::map<CensusOutcome, std::size_t> merged;
    for (std::size_t s = 0; s < 3; ++s) {
      cfg.shard_index = s;
      for (const auto& [o, n] : census(cfg).counts) merged[o] += n;
    }
    CHECK(merged == a.counts);

    const fs::path dir = scratch("census");
    cfg.shard_count = 1;
    cfg.shard_index = 0;
    {
      DecisionCache cache(dir);
      CHECK(to_json(census(cfg, &cache)) == to_json(a));
      CHECK(cache.size() > 250);  // repeated tuples share a record
    }
    DecisionCache again(dir);
    const std::size_t before = again.size();
    CHECK(to_json(census(cfg, &again)) == to_json(a));
    CHECK(again.size() == before);
    fs::remove_all(dir);

    CensusConfig other = cfg;
    other.seed = 6;
    CHECK(census_curves(other) != census_curves(cfg));
  }

  TEST_CASE("census enumeration keeps one curve per key") {
    CensusConfig cfg;
    cfg.box = 1;
    cfg.samples = 0;
    const auto curves = census_curves(cfg);
    std::set<std::string> keys;
    for (const IPoly& f : curves) {
      CHECK((f.degree() == 5 || f.degree() == 6));
      CHECK(discriminant(f) != 0);
      keys.insert(normalize_poly(f).to_coeff_list());
    }
    CHECK(keys.size() == curves.size());
    // independent count: squarefree degree-5/6 tuples in {-1,0,1}^7, odd degree paired by x -> -x
    std::size_t sixes = 0, fives = 0;
    for (long idx = 0; idx < 2187; ++idx) {
      std::vector<Int> c(7);
      long r = idx;
      for (int i = 0; i < 7; ++i, r /= 3) c[static_cast<std::size_t>(i)] = r % 3 - 1;
      const IPoly f(c);
      if (f.degree() < 5 || discriminant(f) == 0) continue;
      if (f.degree() == 6) ++sixes;
      if (f.degree() == 5) ++fives;
    }
    CHECK(curves.size() == sixes + fives / 2);
  }
}
