#ifndef CPOLY_SPARSE_BB_HPP
#define CPOLY_SPARSE_BB_HPP

#include <functional>
#include <memory>

#include "cpoly/int_layer.hpp"

namespace cpoly {

struct Triplet {
    std::size_t row;
    std::size_t col;
    mpz_class value;
};

/// Coordinate-format integer sparse matrix. Duplicate positions and zero
/// values are rejected at construction.
class SparseMatrix {
public:
    SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return t_.size(); }
    const std::vector<Triplet>& triplets() const { return t_; }
    double avg_row_weight() const {
        return rows_ ? static_cast<double>(t_.size()) / static_cast<double>(rows_) : 0.0;
    }

    std::vector<std::uint64_t> apply_mod(const PrimeField& f,
                                         const std::vector<std::uint64_t>& v) const;
    DenseMatrix densify_mod(const PrimeField& f) const;
    IntMatrix densify() const;
    mpz_class trace() const;
    mpz_class entry_bound() const;

private:
    std::size_t rows_, cols_;
    std::vector<Triplet> t_;
};

/// Apply-only view of a square integer matrix: vectors go in and come out
/// reduced over a caller-chosen prime field. Carries the scalar data the
/// integer drivers need (trace, entry bound) and, when available, a dense
/// copy for fallback paths.
struct Blackbox {
    std::size_t n = 0;
    std::function<std::vector<std::uint64_t>(const PrimeField&,
                                             const std::vector<std::uint64_t>&)> apply;
    mpz_class trace;
    mpz_class entry_bound;
    std::shared_ptr<const IntMatrix> dense;  // may be null

    static Blackbox from_sparse(std::shared_ptr<const SparseMatrix> s);
    static Blackbox from_dense(std::shared_ptr<const IntMatrix> m);
};

/// Monic minimal generating polynomial of a linearly recurrent sequence.
/// The zero sequence yields the constant 1.
FFPoly berlekamp_massey(const PrimeField& f, const std::vector<std::uint64_t>& seq);

/// Minimal polynomial mod p of the projected sequence u^T A^i v,
/// i = 0..2n-1, with seeded random u, v. A monic divisor of the true
/// minimal polynomial, equal to it with probability >= 1 - 2n/p.
FFPoly wiedemann_minpoly_modp(const Blackbox& box, std::uint64_t p, std::uint64_t seed);

/// Integer minimal polynomial by Chinese remaindering of per-prime
/// Wiedemann results with early termination. Primes whose modular degree
/// falls short of the running maximum are retried once with fresh
/// projections, then discarded as bad.
IntPoly integer_minpoly(const Blackbox& box, double eta, std::uint64_t seed);

}  // namespace cpoly

#endif
