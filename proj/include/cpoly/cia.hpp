#ifndef CPOLY_CIA_HPP
#define CPOLY_CIA_HPP

#include <optional>
#include <string>

#include "cpoly/sparse_bb.hpp"
#include "cpoly/zfactor.hpp"

namespace cpoly {

/// Largest alpha with fbar^alpha dividing pp; 0 when fbar does not divide
/// pp at all.
unsigned multiplicity_of(const FFPoly& fbar, const FFPoly& pp);

enum class CiaFailure { None, MultiplicityZero, DegreeSum, Trace };

struct CiaReport {
    bool success = false;
    IntPoly result;  // meaningful only on success
    double epsilon = 0;
    double eta = 0;
    std::uint64_t prime = 0;
    IntPoly minpoly;
    std::vector<std::pair<IntPoly, unsigned>> factors;  // factor, multiplicity
    CiaFailure failure = CiaFailure::None;

    std::string to_text() const;
};

struct CiaOptions {
    std::optional<std::uint64_t> forced_prime;  // test hook, bypasses the pool
    bool allow_dense_fallback = true;
};

/// Integer characteristic polynomial of a blackbox matrix: integer minimal
/// polynomial, factorization over the integers, one modular characteristic
/// polynomial at a random verification prime, multiplicity recovery, and
/// the three self-checks (multiplicity zero, degree sum, trace). A FAIL is
/// reported in the result value, never thrown.
CiaReport cia_charpoly(const Blackbox& box, double epsilon, std::uint64_t seed,
                       const CiaOptions& options = {});

}  // namespace cpoly

#endif
