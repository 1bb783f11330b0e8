#include "hyperpts/serialize.hpp"

namespace hyperpts {

namespace {

std::string str(const Int& n) { return to_string(n); }
std::string str(const Rat& q) { return to_string(q); }
std::string str(std::uint64_t n) { return std::to_string(n); }

std::string place_name(std::uint64_t place) { return place == kRealPlace ? "inf" : std::to_string(place); }

template <class T>
Json strings(const std::vector<T>& v) {
  Json a = Json::array();
  for (const T& x : v) a.push_back(str(x));
  return a;
}

}  // namespace

Json to_json(const IPoly& f) { return f.to_coeff_list(); }

Json to_json(const RatPoint& pt) {
  Json j{{"kind", point_kind_name(pt.kind)}};
  if (pt.is_affine()) {
    j["x"] = str(pt.x());
    j["y"] = str(pt.y);
  }
  return j;
}

RatPoint point_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  for (auto k : {RatPoint::Kind::Infinity, RatPoint::Kind::InfinityPlus, RatPoint::Kind::InfinityMinus})
    if (kind == point_kind_name(k)) return RatPoint::infinity(k);
  if (kind != "affine") fail(ErrorCode::ParseError, "unknown point kind " + kind);
  const Rat x = rat_from_string(j.at("x").get<std::string>());
  return RatPoint::affine(x.get_num(), x.get_den(), rat_from_string(j.at("y").get<std::string>()));
}

Json to_json(const LocalVerdict& v) {
  Json j{{"place", place_name(v.place)}, {"solvable", v.solvable}, {"nodes", str(v.nodes)},
         {"max_depth", std::to_string(v.max_depth)}};
  if (v.witness) {
    const LocalWitness& w = *v.witness;
    Json ev = Json::array();
    for (SquareVerdict s : w.evidence) ev.push_back(square_verdict_name(s));
    j["witness"] = {{"chart", chart_name(w.chart)},
                    {"coordinate", str(w.coordinate)},
                    {"kind", witness_kind_name(w.kind)},
                    {"level", std::to_string(w.level)},
                    {"poly", std::to_string(w.poly)},
                    {"evidence", ev}};
  }
  if (!v.solvable) {
    Json leaves = Json::array();
    for (const RefutedDisc& r : v.refutation)
      leaves.push_back({{"chart", chart_name(r.chart)},
                        {"center", str(r.center)},
                        {"level", std::to_string(r.level)},
                        {"poly", std::to_string(r.poly)}});
    j["refutation"] = leaves;
    j["refutation_truncated"] = v.refutation_truncated;
  }
  return j;
}

Json to_json(const ElsReport& r) {
  Json places = Json::array();
  for (const LocalVerdict& v : r.places) places.push_back(to_json(v));
  Json j{{"solvable", r.solvable}, {"places", places}};
  if (r.failed_place) j["failed_place"] = place_name(*r.failed_place);
  return j;
}

Json to_json(const SearchReport& r, bool with_points) {
  Json j{{"bound", str(r.bound)},
         {"moduli", strings(r.moduli)},
         {"total_pairs", str(r.total_pairs)},
         {"tested", str(r.tested)},
         {"eliminated", str(r.eliminated)}};
  if (with_points) {
    Json pts = Json::array();
    for (const RatPoint& p : r.points) pts.push_back(to_json(p));
    j["points"] = pts;
  }
  return j;
}

Json to_json(const SelmerReport& r) {
  Json twists = Json::array();
  for (const TwistResult& t : r.twists) {
    Json jt{{"d", str(t.d)}, {"survives", t.survives}};
    if (t.failed_place) {
      jt["failed_place"] = place_name(*t.failed_place);
      // the failing place's refutation is the certificate; passing places only list witnesses
      for (const LocalVerdict& v : t.places)
        if (v.place == *t.failed_place) jt["refutation"] = to_json(v);
    } else {
      Json ws = Json::array();
      for (const LocalVerdict& v : t.places) ws.push_back(to_json(v));
      jt["places"] = ws;
    }
    twists.push_back(jt);
  }
  return {{"g", to_json(r.fact.g)},
          {"h", to_json(r.fact.h)},
          {"support", strings(r.support)},
          {"test_primes", strings(r.test_primes)},
          {"twists", twists},
          {"survivors", strings(r.survivors)}};
}

Json to_json(const DescentResult& r) {
  Json reports = Json::array();
  for (const SelmerReport& s : r.reports) reports.push_back(to_json(s));
  Json j{{"verdict", descent_verdict_name(r.verdict)}, {"reports", reports}};
  if (r.empty_factorization) j["empty_factorization"] = str(static_cast<std::uint64_t>(*r.empty_factorization));
  return j;
}

Json to_json(const QDiv& d) { return div_to_string(d); }

Json to_json(const SieveResult& r) {
  Json primes = Json::array();
  for (const PrimeRecord& p : r.primes)
    primes.push_back({{"p", str(p.p)},
                      {"group_order", str(p.group_order)},
                      {"shared", str(p.shared)},
                      {"digest", p.digest},
                      {"survivors_after", str(static_cast<std::uint64_t>(p.survivors_after))}});
  Json skipped = Json::array();
  for (const SkippedPrime& s : r.skipped) skipped.push_back({{"p", str(s.p)}, {"reason", s.reason}});
  return {{"n", str(r.n)},
          {"rank", std::to_string(r.group.rank)},
          {"torsion", strings(r.group.torsion)},
          {"class_moduli", strings(r.class_moduli)},
          {"survivors", strings(r.survivors)},
          {"primes", primes},
          {"skipped", skipped},
          {"verdict", sieve_verdict_name(r.verdict)},
          {"index_assumed", r.index_assumed}};
}

Json to_json(const SeparatingCert& c) {
  return {{"p", str(c.p)},
          {"N", str(c.N)},
          {"omega", {{"a0", str(c.omega.a0)}, {"a1", str(c.omega.a1)}}},
          {"x_star", str(c.x_star)},
          {"f_at_x_star", str(c.f_at_x_star)},
          {"log",
           {{"l0", str(c.log.residue0())},
            {"l1", str(c.log.residue1())},
            {"order_mod_p", str(c.log.order_mod_p)},
            {"multiple", str(c.log.multiple)},
            {"aux_x", strings(c.log.aux_x)}}}};
}

Json to_json(const Determination& d) {
  Json pts = Json::array();
  for (const RatPoint& p : d.points) pts.push_back(to_json(p));
  Json attempts = Json::array();
  for (const PrimeAttempt& a : d.attempts) attempts.push_back({{"p", str(a.p)}, {"outcome", a.outcome}});
  Json ledger = Json::array();
  for (const ClassLedgerEntry& e : d.ledger)
    ledger.push_back({{"c0", strings(e.c0)},
                      {"outcome", coset_outcome_name(e.outcome)},
                      {"last_n", str(e.last_n)},
                      {"primes", strings(e.primes)}});
  Json j{{"status", determination_status_name(d.status)},
         {"points", pts},
         {"attempts", attempts},
         {"ledger", ledger},
         {"occupied_bound", str(static_cast<std::uint64_t>(d.occupied_bound))},
         {"note", d.note}};
  if (d.cert) j["cert"] = to_json(*d.cert);
  if (d.global) j["global_sieve"] = to_json(*d.global);
  return j;
}

}  // namespace hyperpts
