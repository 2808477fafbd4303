#ifndef CPOLY_CHARPOLY_FF_HPP
#define CPOLY_CHARPOLY_FF_HPP

#include <variant>
#include <vector>

#include "cpoly/dense.hpp"

namespace cpoly {

/// Minimal polynomial of the vector sequence v, Av, A^2 v, ...
struct MinPolyResult {
    FFPoly minpoly;       // monic, degree = `degree`
    LspFactors krylov;    // factorization of the degree x n Krylov row matrix
    std::size_t degree = 0;
};

/// Krylov rows are built one matrix-vector product at a time and eliminated
/// incrementally; the loop stops at the first dependent iterate. The
/// polynomial coefficients come from a triangular solve against the
/// recorded elimination multipliers.
MinPolyResult minpoly_seq(const DenseMatrix& a, const std::vector<std::uint64_t>& v,
                          OpCounter& c);

/// Characteristic polynomial by the Krylov/Schur-complement recursion:
/// split off the minimal polynomial of a random vector, then recurse on
/// A'_22 - A'_21 * S1^{-1} * S2 where A' is the permuted transpose.
/// The value is independent of the seed; only the splits vary.
FFPoly luk_charpoly(const DenseMatrix& a, std::uint64_t seed, OpCounter& c);

struct ColReduced {
    DenseMatrix reduced;                 // rows x rank, independent columns of the input
    std::vector<std::size_t> surviving;  // original column indices, ascending
};

/// Select a maximal independent column set via the factorization of the
/// transpose.
ColReduced col_reduced_form(const DenseMatrix& a, OpCounter& c);

struct KgbResult {
    FFPoly charpoly;                 // product of the block polynomials
    std::vector<FFPoly> block_polys; // per-block Krylov minimal polynomials
};

/// Branching Krylov algorithm: grow one Krylov block per canonical basis
/// vector, doubling active blocks with repeated squares of A and pruning
/// dependent columns each round; read the block polynomials off the final
/// eliminated basis without forming V^{-1} A V.
KgbResult kgb_charpoly(const DenseMatrix& a, OpCounter& c);

/// Pivot block found singular during the block-Frobenius reduction; the
/// caller is expected to fall back to luk_charpoly.
struct NonGeneric {
    std::size_t round = 0;
    std::size_t sweep = 0;
};

/// Block-Frobenius reduction for generic matrices. Requires n to be a
/// power of two. Returns the characteristic polynomial read off the final
/// companion form, or NonGeneric if a pivot block is singular.
std::variant<FFPoly, NonGeneric> kg3_charpoly(const DenseMatrix& a, OpCounter& c);

}  // namespace cpoly

#endif
