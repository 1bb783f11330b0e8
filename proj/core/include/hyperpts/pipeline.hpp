#pragma once

#include "hyperpts/serialize.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hyperpts {

/// Library version, stamped on every record.
const char* toolkit_version();

/// Parses a coefficient list or an expression and normalizes the model:
/// odd degree gets lc > 0 via x -> -x. Even degree is left alone, since
/// neither x -> -x nor y -> -y changes the sign of lc there.
HypCurve parse_and_normalize(std::string_view line);
IPoly normalize_poly(const IPoly& f);

/// Cache key: the normalized coefficient tuple, leading first.
std::string curve_key(const HypCurve& curve);

enum class DecisionStatus { HasPoints, EmptyLocal, EmptyDescent, EmptySieve, DeterminedComplete, Undecided };

const char* decision_status_name(DecisionStatus s);
DecisionStatus decision_status_from_name(const std::string& name);

/// Prefix of the strategy chain to run.
enum class Stage { Search = 1, Local = 2, Descent = 3, Determination = 4 };

struct DecideOptions {
  std::uint64_t quick_bound = kQuickSearchBound;
  std::uint64_t bound = kSearchBound;
  Stage last_stage = Stage::Determination;
  /// Generators on the odd model of the normalized curve (optional).
  std::optional<MWInput> generators;
  DeterminationOptions determination;
  std::uint64_t seed = 1;
  /// Record search certificates (bounds and counts); points are always kept.
  bool search_details = true;
};

struct StageError {
  std::string stage;
  std::string code;
  std::string message;
};

struct DecisionRecord {
  std::string key;
  std::string curve;  // coefficient list of the normalized model
  DecisionStatus status = DecisionStatus::Undecided;
  /// Points on the normalized model.
  std::vector<RatPoint> points;
  /// "PROVEN" when the points are all of C(Q), "UNDECIDED" otherwise.
  std::string completeness = "UNDECIDED";
  /// Smallest search bound that found a point (0 if none).
  std::uint64_t found_at = 0;
  /// Everywhere locally solvable: "true", "false" or "unknown".
  std::string els = "unknown";
  Json certificates = Json::object();
  std::vector<StageError> errors;
  std::map<std::string, double> timings;
  std::string version;
  std::uint64_t seed = 1;
  std::string options_digest;
  bool from_cache = false;
};

Json to_json(const DecisionRecord& r, bool with_timings = true);
DecisionRecord record_from_json(const Json& j);

/// Append-only JSONL store of decision records, keyed by curve key and
/// options digest; the last line for a key wins.
class DecisionCache {
 public:
  /// Empty path: a disabled cache.
  explicit DecisionCache(std::filesystem::path dir = {});
  /// HYPERPTS_CACHE_DIR, unless an explicit directory is given.
  static DecisionCache from_env(const std::optional<std::string>& override_dir = std::nullopt);

  bool enabled() const { return !file_.empty(); }
  const std::filesystem::path& file() const { return file_; }
  std::optional<DecisionRecord> lookup(const std::string& key, const std::string& options_digest) const;
  void store(const DecisionRecord& r);
  std::size_t size() const { return index_.size(); }

 private:
  std::filesystem::path file_;
  std::map<std::pair<std::string, std::string>, Json> index_;
};

/// Digest of the options that change a record.
std::string options_digest(const DecideOptions& opt);

/// Runs the strategy chain; stage errors become diagnostics and UNDECIDED.
DecisionRecord decide(const HypCurve& curve, const DecideOptions& opt = {}, DecisionCache* cache = nullptr);

/// Reruns the chain without cache and compares status and points.
bool replay(const DecisionRecord& r, const DecideOptions& opt = {});

struct CensusConfig {
  int box = 3;
  std::vector<int> degrees{5, 6};
  /// 0 enumerates the whole box (one curve per normalization key).
  std::size_t samples = 5000;
  std::uint64_t seed = 1;
  Stage last_stage = Stage::Descent;
  std::uint64_t quick_bound = kQuickSearchBound;
  std::uint64_t bound = kSearchBound;
  unsigned threads = 1;
  /// Curves i with i % shard_count == shard_index only.
  std::size_t shard_index = 0;
  std::size_t shard_count = 1;
  std::size_t budget = 2000000;
};

/// Mutually exclusive outcomes of one curve in the census.
enum class CensusOutcome { PointQuick, PointFull, EmptyLocal, EmptyDescent, Undecided, Failed };

const char* census_outcome_name(CensusOutcome o);

struct CensusReport {
  CensusConfig config;
  std::size_t curves = 0;
  std::map<CensusOutcome, std::size_t> counts;
  /// Per-curve failures: key and error.
  std::vector<std::pair<std::string, std::string>> failures;

  std::size_t count(CensusOutcome o) const;
  /// Everywhere locally solvable: points found or local tests passed.
  std::size_t els() const;
};

/// Coefficient tuples (leading first) of the census sample, in order.
std::vector<IPoly> census_curves(const CensusConfig& cfg);
CensusOutcome census_outcome(const DecisionRecord& r, std::uint64_t quick_bound);

/// Runs the chain prefix on every curve of the shard; cached records are
/// reused, new ones appended.
CensusReport census(const CensusConfig& cfg, DecisionCache* cache = nullptr);
Json to_json(const CensusReport& r);

}  // namespace hyperpts
