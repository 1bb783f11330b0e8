#pragma once

// Dense polynomials over Z/p for word-size p, coefficients lowest degree
// first. Internal to the library.

#include "hyperpts/ipoly.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace hyperpts::detail {

using MPoly = std::vector<std::uint64_t>;

void mtrim(MPoly& a);
MPoly mreduce(const IPoly& f, std::uint64_t p);
MPoly msub(const MPoly& a, const MPoly& b, std::uint64_t p);
MPoly madd(const MPoly& a, const MPoly& b, std::uint64_t p);
MPoly mmul(const MPoly& a, const MPoly& b, std::uint64_t p);
void mdivmod(const MPoly& a, const MPoly& b, std::uint64_t p, MPoly* q, MPoly* r);
MPoly mrem(const MPoly& a, const MPoly& b, std::uint64_t p);
MPoly mmonic(MPoly a, std::uint64_t p);
MPoly mgcd(MPoly a, MPoly b, std::uint64_t p);
/// Sets g = gcd(a, b) monic and s, t with s*a + t*b = g.
void mxgcd(const MPoly& a, const MPoly& b, std::uint64_t p, MPoly& g, MPoly& s, MPoly& t);
MPoly mderivative(const MPoly& a, std::uint64_t p);
MPoly mpowmod(MPoly base, const Int& e, const MPoly& mod, std::uint64_t p);
void equal_degree_split(const MPoly& h, std::size_t d, std::uint64_t p, std::mt19937_64& rng, std::vector<MPoly>& out);
/// Monic irreducible factors of a monic squarefree polynomial over F_p, p odd.
std::vector<MPoly> factor_mod_p(const MPoly& f, std::uint64_t p);
/// Distinct roots in F_p of a nonzero polynomial, ascending; p odd.
std::vector<std::uint64_t> roots_mod_p(const MPoly& f, std::uint64_t p);

}  // namespace hyperpts::detail
