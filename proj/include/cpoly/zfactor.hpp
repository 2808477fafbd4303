#ifndef CPOLY_ZFACTOR_HPP
#define CPOLY_ZFACTOR_HPP

#include <utility>
#include <vector>

#include "cpoly/int_layer.hpp"

namespace cpoly {

/// Complete irreducible factorization over the integers. content times the
/// product of factors^multiplicity reconstructs the input exactly; factors
/// are primitive with positive leading coefficient.
struct ZFactorization {
    mpz_class content = 1;  // signed integer content
    std::vector<std::pair<IntPoly, unsigned>> factors;

    IntPoly reconstruct() const;
};

/// Yun's squarefree decomposition of the primitive part; parts are
/// pairwise coprime and their multiplicity-power product gives the
/// primitive input back.
std::vector<std::pair<IntPoly, unsigned>> squarefree_decompose(const IntPoly& p);

/// Factor a nonzero integer polynomial of degree at most 64: squarefree
/// decomposition, modular factorization at a small good prime, quadratic
/// Hensel lifting past the coefficient bound, subset recombination.
ZFactorization factor_over_z(const IntPoly& p);

/// Lift the coprime modular splitting f = g0 * h0 (mod q) to
/// f = g * h (mod q^target); g, h returned with symmetric-range
/// coefficients and g = g0, h = h0 (mod q).
std::pair<IntPoly, IntPoly> hensel_lift_pair(const IntPoly& f, const FFPoly& g0,
                                             const FFPoly& h0, std::uint64_t q,
                                             unsigned target);

/// Size of the prime set the blackbox characteristic polynomial algorithm
/// draws its verification prime from: ceil((1/eta) * log2(sqrt(n+1) *
/// 2^(n+1) * B + 1)) with B given as log2(B).
std::size_t cia_prime_set_size(std::size_t n, double log2_b, double eta);

}  // namespace cpoly

#endif
