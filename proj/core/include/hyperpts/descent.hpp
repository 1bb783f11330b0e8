#pragma once

#include "hyperpts/curve.hpp"

#include <optional>
#include <vector>

namespace hyperpts {

/// f = g * h with deg g, deg h not both odd. The content of f (with its
/// sign) sits on g, and g is the side of smaller degree (on a tie, the side
/// holding the first irreducible factor).
struct Factorization {
  IPoly g;
  IPoly h;

  bool trivial() const { return g.degree() == 0; }
};

/// Every admissible splitting, up to swapping g and h, trivial split first.
std::vector<Factorization> factorizations(const HypCurve& curve);

/// Primes that can divide a twist d with points: those dividing the
/// resultant of the even-degree binary forms of g and h, together with
/// those dividing gcd(lc g, lc h).
std::vector<Int> twist_support(const Factorization& fact);

/// Squarefree twists +-prod(S) for S a subset of the support.
std::vector<Int> candidate_twists(const std::vector<Int>& support);

/// Local solvability of d u^2 = g(x), d v^2 = h(x) at a place.
LocalVerdict twist_solvable(const Factorization& fact, const Int& d, std::uint64_t place);

struct TwistResult {
  Int d;
  bool survives = true;
  std::vector<LocalVerdict> places;
  std::optional<std::uint64_t> failed_place;
};

struct SelmerReport {
  Factorization fact;
  std::vector<Int> support;
  std::vector<std::uint64_t> test_primes;
  std::vector<TwistResult> twists;
  std::vector<Int> survivors;
};

enum class DescentVerdict { EmptyProven, Inconclusive };

const char* descent_verdict_name(DescentVerdict v);

struct DescentResult {
  std::vector<SelmerReport> reports;
  DescentVerdict verdict = DescentVerdict::Inconclusive;
  /// Index into reports of the first factorization with no survivors.
  std::optional<std::size_t> empty_factorization;
};

/// Places tested for a twist: support primes, bad primes of C and p < 100.
std::vector<std::uint64_t> twist_test_primes(const HypCurve& curve, const std::vector<Int>& support);

DescentResult selmer_set(const HypCurve& curve);

}  // namespace hyperpts
