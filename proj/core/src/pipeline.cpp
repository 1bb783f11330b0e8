#include "hyperpts/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#ifndef HYPERPTS_VERSION
#define HYPERPTS_VERSION "0.0.0"
#endif

namespace hyperpts {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string seconds_string(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<RatPoint> sorted_unique(std::vector<RatPoint> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void run_determination(const HypCurve& curve, const DecideOptions& opt, DecisionRecord& rec) {
  const OddModel om = to_odd_degree_model(curve);
  const MWInput& gens = *opt.generators;
  if (gens.curve.f != om.model.f)
    fail(ErrorCode::PreconditionViolated, "generators are given on " + gens.curve.f.to_coeff_list() +
                                              ", the odd model is " + om.model.f.to_coeff_list());
  std::vector<RatPoint> known;
  for (const RatPoint& p : rec.points) known.push_back(to_odd_point(om, p));
  for (const RatPoint& p : search(om.model, opt.quick_bound).points) known.push_back(p);
  known = sorted_unique(known);

  DeterminationOptions dopt = opt.determination;
  dopt.seed = opt.seed;
  const Determination d = determine_rational_points(gens, known, dopt);
  Json cert = to_json(d);
  cert["odd_model"] = to_json(om.model.f);
  if (om.root) cert["odd_model_root"] = to_string(*om.root);
  cert["odd_model_scale"] = to_string(om.scale);
  cert["odd_model_denom"] = to_string(om.denom);
  rec.certificates["determination"] = cert;
  if (d.status != DeterminationStatus::ProvenComplete) return;

  std::vector<RatPoint> pts;
  for (const RatPoint& p : d.points) pts.push_back(from_odd_point(om, p));
  rec.points = sorted_unique(pts);
  rec.completeness = "PROVEN";
  rec.status = rec.points.empty() ? DecisionStatus::EmptySieve : DecisionStatus::DeterminedComplete;
}

}  // namespace

const char* toolkit_version() { return HYPERPTS_VERSION; }

IPoly normalize_poly(const IPoly& f) {
  if (f.is_zero()) return f;
  return f.degree() % 2 == 1 && f.lc() < 0 ? f.negate_x() : f;
}

HypCurve parse_and_normalize(std::string_view line) {
  const std::string text = trim(line);
  if (text.empty()) fail(ErrorCode::ParseError, "empty curve at position 0");
  const IPoly f = normalize_poly(parse_ipoly(text));
  if (f.degree() != 5 && f.degree() != 6)
    fail(ErrorCode::DegreeOutOfRange, "genus 2 needs degree 5 or 6, got " + std::to_string(f.degree()));
  return make_curve(f);
}

std::string curve_key(const HypCurve& curve) { return curve.f.to_coeff_list(); }

const char* decision_status_name(DecisionStatus s) {
  switch (s) {
    case DecisionStatus::HasPoints: return "HAS_POINTS";
    case DecisionStatus::EmptyLocal: return "EMPTY_LOCAL";
    case DecisionStatus::EmptyDescent: return "EMPTY_DESCENT";
    case DecisionStatus::EmptySieve: return "EMPTY_SIEVE";
    case DecisionStatus::DeterminedComplete: return "DETERMINED_COMPLETE";
    case DecisionStatus::Undecided: return "UNDECIDED";
  }
  return "?";
}

DecisionStatus decision_status_from_name(const std::string& name) {
  for (auto s : {DecisionStatus::HasPoints, DecisionStatus::EmptyLocal, DecisionStatus::EmptyDescent,
                 DecisionStatus::EmptySieve, DecisionStatus::DeterminedComplete, DecisionStatus::Undecided})
    if (name == decision_status_name(s)) return s;
  fail(ErrorCode::ParseError, "unknown status " + name);
}

Json to_json(const DecisionRecord& r, bool with_timings) {
  Json pts = Json::array();
  for (const RatPoint& p : r.points) pts.push_back(to_json(p));
  Json errs = Json::array();
  for (const StageError& e : r.errors) errs.push_back({{"stage", e.stage}, {"code", e.code}, {"message", e.message}});
  Json j{{"key", r.key},
         {"curve", r.curve},
         {"status", decision_status_name(r.status)},
         {"points", pts},
         {"completeness", r.completeness},
         {"found_at", std::to_string(r.found_at)},
         {"els", r.els},
         {"certificates", r.certificates},
         {"errors", errs},
         {"version", r.version},
         {"seed", std::to_string(r.seed)},
         {"options_digest", r.options_digest}};
  if (with_timings) {
    Json t = Json::object();
    for (const auto& [stage, s] : r.timings) t[stage] = seconds_string(s);
    j["timings"] = t;
  }
  return j;
}

DecisionRecord record_from_json(const Json& j) {
  try {
    DecisionRecord r;
    r.key = j.at("key").get<std::string>();
    r.curve = j.at("curve").get<std::string>();
    r.status = decision_status_from_name(j.at("status").get<std::string>());
    for (const Json& p : j.at("points")) r.points.push_back(point_from_json(p));
    r.completeness = j.at("completeness").get<std::string>();
    r.found_at = std::stoull(j.at("found_at").get<std::string>());
    r.els = j.at("els").get<std::string>();
    r.certificates = j.at("certificates");
    for (const Json& e : j.at("errors"))
      r.errors.push_back({e.at("stage").get<std::string>(), e.at("code").get<std::string>(),
                          e.at("message").get<std::string>()});
    r.version = j.at("version").get<std::string>();
    r.seed = std::stoull(j.at("seed").get<std::string>());
    r.options_digest = j.at("options_digest").get<std::string>();
    if (j.contains("timings"))
      for (const auto& [stage, s] : j.at("timings").items()) r.timings[stage] = std::stod(s.get<std::string>());
    return r;
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed decision record: ") + e.what());
  }
}

DecisionCache::DecisionCache(std::filesystem::path dir) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  file_ = dir / "decisions.jsonl";
  std::ifstream in(file_);
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    // a torn last line from an interrupted run is skipped, not fatal
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("key") || !j.contains("options") || !j.contains("record")) continue;
    index_[{j["key"].get<std::string>(), j["options"].get<std::string>()}] = j["record"];
  }
}

DecisionCache DecisionCache::from_env(const std::optional<std::string>& override_dir) {
  if (override_dir) return DecisionCache(*override_dir);
  if (const char* env = std::getenv("HYPERPTS_CACHE_DIR"); env != nullptr && *env != '\0') return DecisionCache(env);
  return DecisionCache();
}

std::optional<DecisionRecord> DecisionCache::lookup(const std::string& key, const std::string& digest) const {
  const auto it = index_.find({key, digest});
  if (it == index_.end()) return std::nullopt;
  DecisionRecord r = record_from_json(it->second);
  r.from_cache = true;
  return r;
}

void DecisionCache::store(const DecisionRecord& r) {
  if (!enabled()) return;
  const Json rec = to_json(r);
  const Json line{{"key", r.key}, {"options", r.options_digest}, {"record", rec}};
  std::ofstream out(file_, std::ios::app);
  out << line.dump() << '\n';
  out.flush();
  if (!out) fail(ErrorCode::PreconditionViolated, "cannot append to " + file_.string());
  index_[{r.key, r.options_digest}] = rec;
}

std::string options_digest(const DecideOptions& opt) {
  std::ostringstream os;
  os << opt.quick_bound << ';' << opt.bound << ';' << static_cast<int>(opt.last_stage) << ';' << opt.seed << ';'
     << opt.search_details << ';';
  if (opt.generators) {
    write_generators(*opt.generators, os);
    os << opt.generators->index_coprime << ';' << opt.determination.pmax << ';' << opt.determination.sieve_pmax << ';'
       << opt.determination.cap << ';';
    for (std::uint64_t m : opt.determination.multipliers) os << m << ',';
  }
  return fnv_hex(os.str());
}

DecisionRecord decide(const HypCurve& curve, const DecideOptions& opt, DecisionCache* cache) {
  DecisionRecord rec;
  rec.key = curve_key(curve);
  rec.curve = curve.f.to_coeff_list();
  rec.version = toolkit_version();
  rec.seed = opt.seed;
  rec.options_digest = options_digest(opt);
  if (cache != nullptr)
    if (auto hit = cache->lookup(rec.key, rec.options_digest)) return *hit;

  auto stage = [&](const char* name, auto&& body) {
    const Stopwatch sw;
    try {
      body();
    } catch (const Error& e) {
      rec.errors.push_back({name, error_code_name(e.code()), e.what()});
    } catch (const std::exception& e) {
      rec.errors.push_back({name, "INTERNAL", e.what()});
    }
    rec.timings[name] = sw.seconds();
  };

  stage("search", [&] {
    Json runs = Json::array();
    for (std::uint64_t H : {opt.quick_bound, opt.bound}) {
      const SearchReport s = search(curve, H);
      runs.push_back(to_json(s, false));
      if (!s.points.empty()) {
        rec.points = sorted_unique(s.points);
        rec.found_at = H;
        break;
      }
      if (opt.bound <= opt.quick_bound) break;
    }
    if (opt.search_details) rec.certificates["search"] = runs;
  });

  const bool determine = opt.generators && opt.last_stage >= Stage::Determination;
  if (!rec.points.empty()) {
    rec.status = DecisionStatus::HasPoints;
    rec.els = "true";
    if (determine) stage("determination", [&] { run_determination(curve, opt, rec); });
    if (cache != nullptr) cache->store(rec);
    return rec;
  }

  bool settled = false;
  if (opt.last_stage >= Stage::Local)
    stage("local", [&] {
      const ElsReport els = everywhere_locally(curve);
      rec.certificates["local"] = to_json(els);
      rec.els = els.solvable ? "true" : "false";
      if (!els.solvable) {
        rec.status = DecisionStatus::EmptyLocal;
        rec.completeness = "PROVEN";
        settled = true;
      }
    });
  if (!settled && opt.last_stage >= Stage::Descent)
    stage("descent", [&] {
      const DescentResult d = selmer_set(curve);
      rec.certificates["descent"] = to_json(d);
      if (d.verdict == DescentVerdict::EmptyProven) {
        rec.status = DecisionStatus::EmptyDescent;
        rec.completeness = "PROVEN";
        settled = true;
      }
    });
  if (!settled && determine) stage("determination", [&] { run_determination(curve, opt, rec); });
  if (cache != nullptr) cache->store(rec);
  return rec;
}

bool replay(const DecisionRecord& r, const DecideOptions& opt) {
  const HypCurve curve = make_curve(parse_coeff_list(r.curve));
  DecideOptions o = opt;
  o.seed = r.seed;
  const DecisionRecord again = decide(curve, o);
  if (again.options_digest != r.options_digest) return false;
  for (const RatPoint& p : r.points)
    if (!verify_point(curve, p)) return false;
  return again.status == r.status && again.points == r.points && again.completeness == r.completeness;
}

const char* census_outcome_name(CensusOutcome o) {
  switch (o) {
    case CensusOutcome::PointQuick: return "POINT_QUICK";
    case CensusOutcome::PointFull: return "POINT_FULL";
    case CensusOutcome::EmptyLocal: return "EMPTY_LOCAL";
    case CensusOutcome::EmptyDescent: return "EMPTY_DESCENT";
    case CensusOutcome::Undecided: return "UNDECIDED";
    case CensusOutcome::Failed: return "FAILED";
  }
  return "?";
}

std::size_t CensusReport::count(CensusOutcome o) const {
  const auto it = counts.find(o);
  return it == counts.end() ? 0 : it->second;
}

std::size_t CensusReport::els() const {
  const std::size_t points = count(CensusOutcome::PointQuick) + count(CensusOutcome::PointFull);
  if (config.last_stage < Stage::Local) return points;
  return points + count(CensusOutcome::EmptyDescent) + count(CensusOutcome::Undecided);
}

std::vector<IPoly> census_curves(const CensusConfig& cfg) {
  require(cfg.box >= 1, "census box must be positive");
  const auto wanted = [&](const IPoly& f) {
    return std::find(cfg.degrees.begin(), cfg.degrees.end(), f.degree()) != cfg.degrees.end() &&
           discriminant(f) != 0;
  };
  std::vector<IPoly> out;
  const long b = cfg.box, width = 2 * b + 1;
  if (cfg.samples == 0) {
    std::set<std::string> keys;
    long total = 1;
    for (int i = 0; i < 7; ++i) total *= width;
    for (long idx = 0; idx < total; ++idx) {
      std::vector<Int> c(7);
      long r = idx;
      for (int i = 0; i < 7; ++i, r /= width) c[static_cast<std::size_t>(i)] = r % width - b;
      const IPoly f(c);
      if (f.is_zero() || !wanted(f)) continue;
      if (!keys.insert(normalize_poly(f).to_coeff_list()).second) continue;
      out.push_back(f);
      if (out.size() > cfg.budget) fail(ErrorCode::CapExceeded, "census enumeration exceeds the budget");
    }
    return out;
  }
  require(cfg.samples <= cfg.budget, "census sample size exceeds the budget");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long> coeff(-b, b);
  while (out.size() < cfg.samples) {
    std::vector<Int> c(7);
    for (Int& x : c) x = coeff(rng);
    const IPoly f(c);
    if (!f.is_zero() && wanted(f)) out.push_back(f);
  }
  return out;
}

CensusOutcome census_outcome(const DecisionRecord& r, std::uint64_t quick_bound) {
  switch (r.status) {
    case DecisionStatus::HasPoints:
    case DecisionStatus::DeterminedComplete:
      return r.found_at != 0 && r.found_at <= quick_bound ? CensusOutcome::PointQuick : CensusOutcome::PointFull;
    case DecisionStatus::EmptyLocal: return CensusOutcome::EmptyLocal;
    case DecisionStatus::EmptyDescent:
    case DecisionStatus::EmptySieve: return CensusOutcome::EmptyDescent;
    case DecisionStatus::Undecided: return r.errors.empty() ? CensusOutcome::Undecided : CensusOutcome::Failed;
  }
  return CensusOutcome::Failed;
}

CensusReport census(const CensusConfig& cfg, DecisionCache* cache) {
  require(cfg.shard_count >= 1 && cfg.shard_index < cfg.shard_count, "bad census shard");
  CensusReport rep;
  rep.config = cfg;
  std::vector<IPoly> all = census_curves(cfg);
  std::vector<IPoly> mine;
  for (std::size_t i = cfg.shard_index; i < all.size(); i += cfg.shard_count) mine.push_back(all[i]);

  DecideOptions opt;
  opt.quick_bound = cfg.quick_bound;
  opt.bound = cfg.bound;
  opt.last_stage = cfg.last_stage;
  opt.seed = cfg.seed;
  opt.search_details = false;

  std::vector<CensusOutcome> outcome(mine.size(), CensusOutcome::Failed);
  std::vector<std::string> failure(mine.size());
  std::mutex cache_mu;  // the cache is the single writer of the append log
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < mine.size();) {
      try {
        const HypCurve curve = make_curve(normalize_poly(mine[i]));
        std::optional<DecisionRecord> rec;
        if (cache != nullptr) {
          const std::lock_guard lock(cache_mu);
          rec = cache->lookup(curve_key(curve), options_digest(opt));
        }
        if (!rec) {
          rec = decide(curve, opt);
          if (cache != nullptr) {
            const std::lock_guard lock(cache_mu);
            cache->store(*rec);
          }
        }
        outcome[i] = census_outcome(*rec, cfg.quick_bound);
        if (outcome[i] == CensusOutcome::Failed)
          failure[i] = rec->errors.empty() ? "unknown" : rec->errors.front().code + ": " + rec->errors.front().message;
      } catch (const std::exception& e) {
        outcome[i] = CensusOutcome::Failed;
        failure[i] = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, cfg.threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  rep.curves = mine.size();
  for (std::size_t i = 0; i < mine.size(); ++i) {
    ++rep.counts[outcome[i]];
    if (outcome[i] == CensusOutcome::Failed) rep.failures.emplace_back(mine[i].to_coeff_list(), failure[i]);
  }
  return rep;
}

Json to_json(const CensusReport& r) {
  const std::string den = std::to_string(r.curves);
  Json counts = Json::object();
  for (auto o : {CensusOutcome::PointQuick, CensusOutcome::PointFull, CensusOutcome::EmptyLocal,
                 CensusOutcome::EmptyDescent, CensusOutcome::Undecided, CensusOutcome::Failed})
    counts[census_outcome_name(o)] = {{"count", std::to_string(r.count(o))},
                                      {"proportion", std::to_string(r.count(o)) + "/" + den}};
  Json failures = Json::array();
  for (const auto& [key, why] : r.failures) failures.push_back({{"curve", key}, {"error", why}});
  Json degrees = Json::array();
  for (int d : r.config.degrees) degrees.push_back(std::to_string(d));
  return {{"config",
           {{"box", std::to_string(r.config.box)},
            {"degrees", degrees},
            {"samples", std::to_string(r.config.samples)},
            {"seed", std::to_string(r.config.seed)},
            {"last_stage", std::to_string(static_cast<int>(r.config.last_stage))},
            {"shard", std::to_string(r.config.shard_index) + "/" + std::to_string(r.config.shard_count)}}},
          {"curves", den},
          {"counts", counts},
          {"els", {{"count", std::to_string(r.els())}, {"proportion", std::to_string(r.els()) + "/" + den}}},
          {"failures", failures},
          {"version", toolkit_version()}};
}

}  // namespace hyperpts
