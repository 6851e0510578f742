#pragma once

#include "sumdil/rational.hpp"
#include "sumdil/upoly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sumdil {

// Dense polynomials over F_p, low degree first, coefficients in [0, p).
using ModPoly = std::vector<std::int64_t>;

ModPoly to_mod(const IntVec& f, std::int64_t p);
// Degrees of the irreducible factors of a squarefree monic polynomial over F_p (distinct-degree).
std::vector<int> factor_degrees_mod_p(const ModPoly& f, std::int64_t p);
// Monic irreducible factors over F_p, p odd, f squarefree (seeded Cantor-Zassenhaus).
std::vector<ModPoly> factor_mod_p(const ModPoly& f, std::int64_t p, std::uint64_t seed = 1);
bool squarefree_mod_p(const ModPoly& f, std::int64_t p);

enum class Irreducibility { irreducible, reducible, unknown };

struct IrreducibilityCertificate {
    Irreducibility verdict = Irreducibility::unknown;
    std::int64_t prime = 0;   // prime giving the certificate, 0 if none
    std::string method;
    std::vector<IntVec> factors;   // nontrivial factorization when reducible
};

// Irreducibility of f over Q. Tries distinct-degree patterns modulo small primes first;
// exact factorization is used up to degree max_exact_degree.
IrreducibilityCertificate certify_irreducible(const UPoly& f, int max_exact_degree = 6);

// Irreducible factors over Z of a squarefree primitive integer polynomial (Zassenhaus).
std::vector<IntVec> factor_squarefree_z(const IntVec& f);

} // namespace sumdil
