#pragma once

#include "hyperpts/jacobian.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hyperpts {

/// Generators of a subgroup A of J(Q) on a monic quintic model.
struct MWInput {
  HypCurve curve;
  std::vector<QDiv> free;
  std::vector<QDiv> torsion;
  std::vector<std::uint64_t> torsion_orders;
  /// User assertion: [J(Q) : A] is prime to every sieve modulus.
  bool index_coprime = false;

  int rank() const { return static_cast<int>(free.size()); }
};

/// Checks that every generator lies on J and that each torsion order is exact.
void validate(const MWInput& in);

/// Generator file, one divisor per line ('#' starts a comment):
///   free | <u coefficients> | <v coefficients>
///   torsion <order> | <u coefficients> | <v coefficients>
/// Coefficients are rationals, leading first, u monic.
MWInput read_generators(const HypCurve& curve, std::istream& in);
void write_generators(const MWInput& in, std::ostream& out);
std::string div_to_string(const QDiv& d);

/// A = Z^r + sum Z/t_j; classes of A/nA are coordinate vectors, coordinate i
/// reduced modulo the i-th entry of moduli(n).
struct AbstractGroup {
  int rank = 0;
  std::vector<std::uint64_t> torsion;

  static AbstractGroup of(const MWInput& in);
  std::vector<std::uint64_t> moduli(std::uint64_t n) const;
  /// #A/nA, or nullopt above 2^63.
  std::optional<std::uint64_t> quotient_size(std::uint64_t n) const;
};

/// Mixed-radix encoding of coordinate vectors.
std::uint64_t encode_class(const std::vector<std::uint64_t>& coords, const std::vector<std::uint64_t>& moduli);
std::vector<std::uint64_t> decode_class(std::uint64_t index, const std::vector<std::uint64_t>& moduli);

/// The maps of the sieve diagram at one prime, with target J(F_p)/nJ(F_p).
struct PrimeData {
  std::uint64_t p = 0;
  std::uint64_t n = 0;
  Int group_order;
  std::vector<std::uint64_t> invariants;
  /// gcd(n, n_j) for the invariant factors n_j of J(F_p).
  std::vector<std::uint64_t> target_moduli;
  /// Image of each generator (free first, then torsion) in target coordinates.
  std::vector<std::vector<std::uint64_t>> gen_images;
  /// Encoded images of [P - infinity] for P in C(F_p), sorted, without repeats.
  std::vector<std::uint64_t> curve_image;
  std::size_t curve_points = 0;
  std::string digest;

  /// Image of a class of A/nA.
  std::uint64_t map_class(const std::vector<std::uint64_t>& coords) const;
  bool in_curve_image(std::uint64_t encoded) const;
};

/// Throws BAD_PRIME, BAD_REDUCTION, CAP_EXCEEDED or FACTORING_FAILED.
PrimeData prime_data(const MWInput& in, std::uint64_t p, std::uint64_t n, std::uint64_t seed = 1);

/// Group data per prime, kept across moduli. Not thread-safe.
class SieveCache {
 public:
  explicit SieveCache(const MWInput& in, std::uint64_t seed = 1) : in_(in), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  /// Same result and errors as prime_data(in, p, n, seed).
  const PrimeData& data(std::uint64_t p, std::uint64_t n);

 private:
  struct Full {
    Int order;
    std::vector<std::uint64_t> invariants;
    std::vector<std::vector<std::uint64_t>> gen_coords;
    std::vector<std::vector<std::uint64_t>> point_coords;  // identity first
  };
  const Full& full(std::uint64_t p);

  MWInput in_;
  std::uint64_t seed_;
  std::map<std::uint64_t, std::shared_ptr<const Full>> full_;
  std::map<std::uint64_t, Error> failed_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, PrimeData> data_;
};

struct SieveOptions {
  std::size_t cap = 1000000;
  std::uint64_t seed = 1;
  /// Process primes by decreasing gcd(#J(F_p), n) / log p; otherwise as given.
  bool schedule = true;
  /// Optional shared cache built from the same input and seed.
  SieveCache* cache = nullptr;
};

struct PrimeRecord {
  std::uint64_t p = 0;
  Int group_order;
  std::uint64_t shared = 0;  // gcd(#J(F_p), n)
  std::string digest;
  std::size_t survivors_after = 0;
};

struct SkippedPrime {
  std::uint64_t p = 0;
  std::string reason;
};

enum class SieveVerdict {
  EmptyProven,
  /// No class survives but the index assertion is missing.
  EmptyUnassumed,
  Survivors,
};

const char* sieve_verdict_name(SieveVerdict v);

struct SieveResult {
  std::uint64_t n = 0;
  AbstractGroup group;
  std::vector<std::uint64_t> class_moduli;
  /// Encoded surviving classes, ascending.
  std::vector<std::uint64_t> survivors;
  std::vector<PrimeRecord> primes;
  std::vector<SkippedPrime> skipped;
  SieveVerdict verdict = SieveVerdict::Survivors;
  bool index_assumed = false;
};

/// Sieve of A/nA (or of the given classes) by the images of C(F_p).
SieveResult run_sieve(const MWInput& in, std::uint64_t n, const std::vector<std::uint64_t>& primes,
                      const SieveOptions& opt = {},
                      const std::optional<std::vector<std::uint64_t>>& classes = std::nullopt);

/// Same, with per-prime data already computed (or injected).
SieveResult sieve_with_data(const AbstractGroup& A, std::uint64_t n, const std::vector<PrimeData>& data,
                            bool index_assumed,
                            const std::optional<std::vector<std::uint64_t>>& classes = std::nullopt);

/// Classes of A/nA lying over the class c0 of A/NA (N | n), encoded mod n.
std::vector<std::uint64_t> classes_over(const AbstractGroup& A, const std::vector<std::uint64_t>& c0,
                                        std::uint64_t N, std::uint64_t n);

/// Representative of a class with coordinates in (-m/2, m/2].
std::vector<std::int64_t> smallest_representative(const std::vector<std::uint64_t>& coords,
                                                  const std::vector<std::uint64_t>& moduli);

struct CosetStrategy {
  std::vector<std::uint64_t> multipliers{1, 2, 3, 4, 6, 8, 12};
  std::vector<std::uint64_t> primes;
  SieveOptions sieve;
};

enum class CosetOutcome { Eliminated, Survived, CapReached };

const char* coset_outcome_name(CosetOutcome o);

struct CosetResult {
  CosetOutcome outcome = CosetOutcome::Survived;
  std::vector<std::uint64_t> c0;
  std::uint64_t N = 0;
  /// Last modulus tried and its sieve run.
  std::uint64_t n = 0;
  SieveResult last;
  /// Smallest representatives of the classes surviving the last run.
  std::vector<std::vector<std::int64_t>> representatives;
};

CosetResult coset_eliminate(const MWInput& in, const std::vector<std::uint64_t>& c0, std::uint64_t N,
                            const CosetStrategy& strategy);

/// [J(Q) : A] prime to ell is consistent with the data: for some prime p and
/// every torsion combination t, (D - t) mod p lies outside ell J(F_p), where
/// D runs over the free generators (rank 1). Returns the witnessing prime.
std::optional<std::uint64_t> free_part_not_divisible(const MWInput& in, std::uint64_t ell,
                                                     const std::vector<std::uint64_t>& primes);

}  // namespace hyperpts
