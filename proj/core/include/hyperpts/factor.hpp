#pragma once

#include "hyperpts/ipoly.hpp"

#include <vector>

namespace hyperpts {

struct IrreducibleFactor {
  IPoly poly;  // primitive, positive leading coefficient
  unsigned multiplicity;
};

struct IPolyFactorization {
  Int content;  // carries the sign of f
  std::vector<IrreducibleFactor> factors;
};

/// Factors a nonzero integer polynomial of degree <= 10 into content times
/// primitive irreducible factors over Q. Factors are sorted by degree, then
/// coefficient list.
IPolyFactorization factor_ipoly(const IPoly& f);

/// Product content * prod factor^multiplicity.
IPoly expand(const IPolyFactorization& fac);

}  // namespace hyperpts
