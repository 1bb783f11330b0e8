// hyperpts: batch front end. Curves come one per line (coefficient list,
// expression, or a JSON object with a "curve" field); results go out one per
// line, as JSON with --json.

#include "hyperpts/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

using namespace hyperpts;

namespace {

enum Exit { kOk = 0, kUndecided = 2, kInputError = 3, kInternal = 4 };

struct Common {
  std::uint64_t seed = 1;
  std::string cache_dir;
  bool json = false;
  std::string input = "-";
};

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> read_lines(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) fail(ErrorCode::ParseError, "cannot open " + path);
    in = &file;
  }
  std::vector<Line> out;
  std::string s;
  for (std::size_t n = 1; std::getline(*in, s); ++n) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos || s[b] == '#') continue;
    if (s[b] == '{') {
      const Json j = Json::parse(s, nullptr, false);
      s = !j.is_discarded() && j.contains("curve") && j["curve"].is_string() ? j["curve"].get<std::string>() : "";
    }
    out.push_back({n, s});
  }
  return out;
}

void emit_error(const Common& c, const Line& l, const std::string& code, const std::string& what) {
  if (c.json)
    std::cout << Json{{"line", std::to_string(l.number)}, {"input", l.text}, {"error", code}, {"message", what}}.dump()
              << '\n';
  else
    std::cerr << "line " << l.number << ": " << what << '\n';
}

/// Applies fn to every parsed curve; input errors are reported and counted.
int for_each_curve(const Common& c, const std::function<void(const Line&, const HypCurve&)>& fn) {
  int status = kOk;
  for (const Line& l : read_lines(c.input)) {
    HypCurve curve;
    try {
      curve = parse_and_normalize(l.text);
    } catch (const Error& e) {
      emit_error(c, l, error_code_name(e.code()), e.what());
      status = kInputError;
      continue;
    }
    try {
      fn(l, curve);
    } catch (const Error& e) {
      emit_error(c, l, error_code_name(e.code()), e.what());
      status = std::max(status, static_cast<int>(kInputError));
    }
  }
  return status;
}

std::string points_text(const std::vector<RatPoint>& pts) {
  std::string s;
  for (const RatPoint& p : pts) s += (s.empty() ? "" : " ") + p.to_string();
  return s.empty() ? "-" : s;
}

MWInput load_generators(const HypCurve& curve, const std::string& path, bool assume_index) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open generator file " + path);
  MWInput mw = read_generators(to_odd_degree_model(curve).model, in);
  mw.index_coprime = assume_index;
  validate(mw);
  return mw;
}

std::vector<std::uint64_t> good_primes(const HypCurve& odd, std::uint64_t pmax) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : primes_up_to(pmax))
    if (p > 2 && !odd.is_bad(p)) out.push_back(p);
  return out;
}

void print(const Common& c, const Json& j, const std::string& text) {
  if (c.json)
    std::cout << j.dump() << '\n';
  else
    std::cout << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational points on genus 2 curves y^2 = f(x)"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* sub) {
    sub->add_option("input", c.input, "curve file, one per line ('-' for stdin)");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--cache-dir", c.cache_dir, "decision cache directory (default: $HYPERPTS_CACHE_DIR)");
    sub->add_flag("--json", c.json, "JSON lines output");
  };

  std::uint64_t bound = kSearchBound;
  bool brute = false;
  auto* search_cmd = app.add_subcommand("search", "search for rational points with |num|, den <= H");
  common(search_cmd);
  search_cmd->add_option("-H,--bound", bound, "height bound");
  search_cmd->add_flag("--brute", brute, "unsieved search (H <= 1000)");

  std::uint64_t prime = 0;
  auto* local_cmd = app.add_subcommand("local", "local solvability at one place or everywhere");
  common(local_cmd);
  local_cmd->add_option("-p,--prime", prime, "single prime (0: real place); default all places");

  auto* descent_cmd = app.add_subcommand("descent", "two-cover descent over the factorizations of f");
  common(descent_cmd);

  std::uint64_t jac_prime = 3;
  auto* jac_cmd = app.add_subcommand("jacobian", "odd model and the group J(F_p)");
  common(jac_cmd);
  jac_cmd->add_option("-p,--prime", jac_prime, "good odd prime")->required();

  std::string gens_path;
  bool assume_index = false;
  std::uint64_t sieve_n = 0, pmax = 0;
  auto* sieve_cmd = app.add_subcommand("sieve", "Mordell-Weil sieve of A/nA");
  common(sieve_cmd);
  sieve_cmd->add_option("-g,--generators", gens_path, "generator file on the odd model")->required();
  sieve_cmd->add_option("-n,--modulus", sieve_n, "modulus n")->required();
  sieve_cmd->add_option("--pmax", pmax, "largest sieving prime")->default_val(200);
  sieve_cmd->add_flag("--assume-index", assume_index, "assert [J(Q) : A] prime to the moduli");

  bool determine = false;
  auto* chab_cmd = app.add_subcommand("chabauty", "separating prime and, optionally, the full determination");
  common(chab_cmd);
  chab_cmd->add_option("-g,--generators", gens_path, "generator file on the odd model")->required();
  chab_cmd->add_option("--pmax", pmax, "largest prime tried")->default_val(100);
  chab_cmd->add_flag("--assume-index", assume_index, "assert [J(Q) : A] prime to the moduli");
  chab_cmd->add_flag("--determine", determine, "sieve and coset elimination after the prime");

  auto* decide_cmd = app.add_subcommand("decide", "run the strategy chain");
  common(decide_cmd);
  decide_cmd->add_option("-g,--generators", gens_path, "generator file on the odd model");
  decide_cmd->add_flag("--assume-index", assume_index, "assert [J(Q) : A] prime to the moduli");

  CensusConfig cfg;
  std::string shard = "0/1";
  int stage = 3;
  auto* census_cmd = app.add_subcommand("census", "sample or enumerate small curves and tally outcomes");
  census_cmd->add_option("--seed", c.seed, "random seed");
  census_cmd->add_option("--cache-dir", c.cache_dir, "decision cache directory (default: $HYPERPTS_CACHE_DIR)");
  census_cmd->add_flag("--json", c.json, "JSON output");
  census_cmd->add_option("--box", cfg.box, "coefficient bound");
  census_cmd->add_option("--samples", cfg.samples, "sample size, 0 for the whole box");
  census_cmd->add_option("--degrees", cfg.degrees, "degrees kept");
  census_cmd->add_option("--threads", cfg.threads, "worker threads");
  census_cmd->add_option("--shard", shard, "shard i/k");
  census_cmd->add_option("--stage", stage, "last chain stage: 1 search, 2 local, 3 descent")->check(CLI::Range(1, 3));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; a bad command line is an input error
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    std::optional<std::string> dir;
    if (!c.cache_dir.empty()) dir = c.cache_dir;

    if (*search_cmd)
      return for_each_curve(c, [&](const Line&, const HypCurve& C) {
        const SearchReport r = brute ? brute_search(C, bound) : search(C, bound);
        Json j = to_json(r);
        j["curve"] = curve_key(C);
        print(c, j, curve_key(C) + ": " + points_text(r.points));
      });

    if (*local_cmd)
      return for_each_curve(c, [&](const Line&, const HypCurve& C) {
        if (local_cmd->count("--prime") > 0) {
          const LocalVerdict v = prime == kRealPlace ? solvable_R(C) : solvable_Qp(C, prime);
          Json j = to_json(v);
          j["curve"] = curve_key(C);
          print(c, j, curve_key(C) + ": " + (v.solvable ? "solvable" : "not solvable"));
          return;
        }
        const ElsReport r = everywhere_locally(C);
        Json j = to_json(r);
        j["curve"] = curve_key(C);
        std::string text = curve_key(C) + ": " + (r.solvable ? "ELS" : "not ELS");
        if (r.failed_place) text += *r.failed_place == kRealPlace ? " (real place)" : " (p = " + std::to_string(*r.failed_place) + ")";
        print(c, j, text);
      });

    if (*descent_cmd)
      return for_each_curve(c, [&](const Line&, const HypCurve& C) {
        const DescentResult r = selmer_set(C);
        Json j = to_json(r);
        j["curve"] = curve_key(C);
        print(c, j, curve_key(C) + ": " + descent_verdict_name(r.verdict));
      });

    if (*jac_cmd)
      return for_each_curve(c, [&](const Line&, const HypCurve& C) {
        const OddModel om = to_odd_degree_model(C);
        const JacGroupFp G = group_structure_fp(om.model, jac_prime, c.seed);
        Json inv = Json::array();
        std::string text = curve_key(C) + ": odd model " + om.model.f.to_coeff_list() + ", #J(F_" +
                           std::to_string(jac_prime) + ") = " + to_string(G.order()) + " =";
        for (std::uint64_t n : G.invariants()) {
          inv.push_back(std::to_string(n));
          text += " Z/" + std::to_string(n);
        }
        print(c,
              {{"curve", curve_key(C)},
               {"odd_model", to_json(om.model.f)},
               {"p", std::to_string(jac_prime)},
               {"order", to_string(G.order())},
               {"invariants", inv}},
              text);
      });

    if (*sieve_cmd)
      return for_each_curve(c, [&](const Line&, const HypCurve& C) {
        const MWInput mw = load_generators(C, gens_path, assume_index);
        SieveOptions so;
        so.seed = c.seed;
        const SieveResult r = run_sieve(mw, sieve_n, good_primes(mw.curve, pmax), so);
        Json j = to_json(r);
        j["curve"] = curve_key(C);
        print(c, j,
              curve_key(C) + ": " + sieve_verdict_name(r.verdict) + ", " + std::to_string(r.survivors.size()) +
                  " classes left");
      });

    if (*chab_cmd)
      return for_each_curve(c, [&](const Line&, const HypCurve& C) {
        const MWInput mw = load_generators(C, gens_path, assume_index);
        if (determine) {
          DeterminationOptions dopt;
          dopt.pmax = pmax;
          dopt.seed = c.seed;
          const OddModel om = to_odd_degree_model(C);
          std::vector<RatPoint> known;
          for (const RatPoint& p : search(om.model, kQuickSearchBound).points) known.push_back(p);
          const Determination d = determine_rational_points(mw, known, dopt);
          Json j = to_json(d);
          j["curve"] = curve_key(C);
          print(c, j,
                curve_key(C) + ": " + determination_status_name(d.status) + ", odd model points " +
                    points_text(d.points));
          return;
        }
        LogOptions lo;
        lo.seed = c.seed;
        const SeparatingSearch s = find_separating_prime(mw, pmax, lo);
        Json attempts = Json::array();
        for (const PrimeAttempt& a : s.attempts) attempts.push_back({{"p", std::to_string(a.p)}, {"outcome", a.outcome}});
        Json j{{"curve", curve_key(C)}, {"attempts", attempts}};
        if (s.cert) j["cert"] = to_json(*s.cert);
        print(c, j,
              curve_key(C) + ": " +
                  (s.cert ? "separating prime " + std::to_string(s.cert->p) : std::string("no separating prime")));
      });

    if (*decide_cmd) {
      DecisionCache cache = DecisionCache::from_env(dir);
      bool undecided = false;
      const int st = for_each_curve(c, [&](const Line&, const HypCurve& C) {
        DecideOptions opt;
        opt.seed = c.seed;
        if (!gens_path.empty()) opt.generators = load_generators(C, gens_path, assume_index);
        const DecisionRecord r = decide(C, opt, cache.enabled() ? &cache : nullptr);
        undecided = undecided || r.status == DecisionStatus::Undecided;
        print(c, to_json(r),
              r.key + ": " + decision_status_name(r.status) + " " + points_text(r.points) +
                  (r.completeness == "PROVEN" ? " (complete)" : ""));
      });
      if (st != kOk) return st;
      return undecided ? kUndecided : kOk;
    }

    if (*census_cmd) {
      cfg.seed = c.seed;
      cfg.last_stage = static_cast<Stage>(stage);
      const auto slash = shard.find('/');
      if (slash == std::string::npos) throw CLI::ValidationError("--shard", "expected i/k");
      cfg.shard_index = std::stoul(shard.substr(0, slash));
      cfg.shard_count = std::stoul(shard.substr(slash + 1));
      DecisionCache cache = DecisionCache::from_env(dir);
      const CensusReport r = census(cfg, cache.enabled() ? &cache : nullptr);
      const Json j = to_json(r);
      if (c.json) {
        std::cout << j.dump() << '\n';
      } else {
        std::cout << "curves " << r.curves << '\n';
        for (const auto& [o, n] : r.counts) std::cout << census_outcome_name(o) << ' ' << n << '/' << r.curves << '\n';
        std::cout << "ELS " << r.els() << '/' << r.curves << '\n';
      }
      return r.failures.empty() ? kOk : kUndecided;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return e.code() == ErrorCode::ParseError ? kInputError : kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
