#pragma once

#include "hyperpts/sieve.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperpts {

/// (int omega_0, int omega_1) of log D, omega_i = x^i dx / 2y, known mod p^2.
struct LogVector {
  std::uint64_t p = 0;
  PadicNum l0;
  PadicNum l1;
  /// Order of D mod p and the multiple actually used.
  std::uint64_t order_mod_p = 0;
  std::uint64_t multiple = 0;
  /// Auxiliary points Q1, Q2 (x, y mod p^2) of the successful attempt.
  std::vector<std::uint64_t> aux_x;
  int attempts = 0;

  /// Entries as residues mod p^2.
  std::uint64_t residue0() const;
  std::uint64_t residue1() const;
};

struct LogOptions {
  int precision = kDefaultPadicPrecision;
  std::uint64_t seed = 1;
  /// Use multiplier * ord(D mod p) instead of the order itself.
  std::uint64_t multiplier = 1;
  int max_attempts = 24;
};

/// Throws PDIVIDES_ORDER, BAD_REDUCTION, or (after the retries) the last
/// NONINVERTIBLE_DIVISION / PRECISION_LOSS / WEIERSTRASS_DISK.
LogVector jac_log_mod_p2(const HypCurve& odd, const QDiv& d, std::uint64_t p, const LogOptions& opt = {});

/// (a0 + a1 x) dx / 2y mod p, normalized with leading nonzero entry 1.
struct DiffModP {
  std::uint64_t p = 0;
  std::uint64_t a0 = 0;
  std::uint64_t a1 = 1;

  friend bool operator==(const DiffModP&, const DiffModP&) = default;
};

/// The mod-p line killing log D; ZERO_LOG when log D = 0 mod p^2.
DiffModP annihilator_from_log(const LogVector& log);
DiffModP annihilator_mod_p(const HypCurve& odd, const QDiv& d, std::uint64_t p, const LogOptions& opt = {});

struct SeparatingCert {
  std::uint64_t p = 0;
  Int N;
  DiffModP omega;
  /// -a0/a1 and f(x*) mod p, a non-residue.
  std::uint64_t x_star = 0;
  std::uint64_t f_at_x_star = 0;
  LogVector log;
};

struct CriterionResult {
  bool pass = false;
  /// "infinity", "weierstrass" or "two points" on failure.
  std::string reason;
  std::optional<SeparatingCert> cert;
};

CriterionResult criterion(const HypCurve& odd, const DiffModP& omega, std::uint64_t p);

/// Replays the nonvanishing evidence and the order of J(F_p).
bool check_cert(const HypCurve& odd, const SeparatingCert& cert);

struct PrimeAttempt {
  std::uint64_t p = 0;
  std::string outcome;  // "PASS", an error code name, or the criterion failure
};

struct SeparatingSearch {
  std::optional<SeparatingCert> cert;
  std::vector<PrimeAttempt> attempts;
};

/// First good p in [3, pmax] passing the criterion for the free generator.
SeparatingSearch find_separating_prime(const MWInput& in, std::uint64_t pmax = 100, const LogOptions& opt = {});

enum class DeterminationStatus {
  ProvenComplete,
  /// Complete provided the index-coprimality assertion holds.
  CompleteUnassumed,
  Undecided,
};

const char* determination_status_name(DeterminationStatus s);

struct DeterminationOptions {
  std::uint64_t pmax = 100;
  /// Primes for the sieve stages: good odd primes up to this bound.
  std::uint64_t sieve_pmax = 200;
  std::uint64_t seed = 1;
  std::size_t cap = 1000000;
  std::vector<std::uint64_t> multipliers{1, 2, 3, 4, 6, 8, 12};
};

struct ClassLedgerEntry {
  std::vector<std::uint64_t> c0;
  CosetOutcome outcome = CosetOutcome::Survived;
  std::uint64_t last_n = 0;
  std::vector<std::uint64_t> primes;
};

struct Determination {
  DeterminationStatus status = DeterminationStatus::Undecided;
  /// Rational points on the odd model, infinity included.
  std::vector<RatPoint> points;
  std::optional<SeparatingCert> cert;
  std::vector<PrimeAttempt> attempts;
  /// Sieve of all of A/NA, N = cert->N (rank 1).
  std::optional<SieveResult> global;
  /// Coset runs for the classes surviving the global sieve.
  std::vector<ClassLedgerEntry> ledger;
  /// Classes of A/NA not eliminated; each holds at most one rational point.
  std::size_t occupied_bound = 0;
  std::string note;
};

/// Rank 1: separating prime, sieve of A/NA, coset elimination; the known
/// points (odd model) prove completeness when their number matches the
/// classes left. Rank 0: every element of A with deg u <= 1 is a point.
Determination determine_rational_points(const MWInput& in, const std::vector<RatPoint>& known,
                                        const DeterminationOptions& opt = {});

}  // namespace hyperpts
