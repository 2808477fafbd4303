#ifndef CPOLY_DENSE_HPP
#define CPOLY_DENSE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "cpoly/ff.hpp"

namespace cpoly {

/// Field-operation tally owned by a single kernel invocation.
struct OpCounter {
    std::uint64_t muls = 0;
    std::uint64_t adds = 0;
    std::uint64_t divs = 0;

    std::uint64_t total() const { return muls + adds + divs; }
    void reset() { muls = adds = divs = 0; }
};

/// Row-major dense matrix over a prime field, entries canonical in [0, p).
class DenseMatrix {
public:
    DenseMatrix(PrimeField f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static DenseMatrix identity(PrimeField f, std::size_t n) {
        DenseMatrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint64_t& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint64_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::uint64_t* row(std::size_t i) const { return a_.data() + i * cols_; }
    std::uint64_t* row(std::size_t i) { return a_.data() + i * cols_; }

    DenseMatrix transpose() const;

    bool operator==(const DenseMatrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<std::uint64_t> a_;
};

/// Cache-blocked classical product, OpenMP-parallel over row blocks.
/// Field-operation count is exactly m*n*k muls and m*n*(k-1) adds
/// regardless of blocking or thread count.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b, OpCounter& c);

/// Plain triple-loop reference, kept for testing the parallel kernel
/// against. Identical operation counts.
DenseMatrix matmul_serial(const DenseMatrix& a, const DenseMatrix& b, OpCounter& c);

std::vector<std::uint64_t> matvec(const DenseMatrix& a, const std::vector<std::uint64_t>& v,
                                  OpCounter& c);

/// Rank-revealing factorization A = L * Q * S * P.
///
/// L is m x m unit lower triangular; S is m x n with its first `rank` rows
/// nonzero and row t leading at column t (strictly increasing leading
/// columns); Q and P are permutations stored as index arrays. Q is the
/// identity order whenever the leading rows of A are independent (the
/// Krylov case).
struct LspFactors {
    DenseMatrix L;
    DenseMatrix S;
    std::vector<std::size_t> col_of_pos;  // P: position -> original column
    std::vector<std::size_t> row_of_pos;  // Q: position -> original row
    std::size_t rank = 0;

    DenseMatrix reconstruct() const;
};

LspFactors lsp_factor(const DenseMatrix& a, OpCounter& c);

enum class TriSide { Left, Right };

/// Solve L*X = B (Left) or X*L = B (Right) for unit lower triangular L.
DenseMatrix trsm_lower_unit(const DenseMatrix& l, const DenseMatrix& b, TriSide side,
                            OpCounter& c);

/// Solve U*X = B for upper triangular U with nonzero (not necessarily unit)
/// diagonal.
DenseMatrix trsm_upper(const DenseMatrix& u, const DenseMatrix& b, OpCounter& c);

/// P(A) * v by Horner over matrix-vector products (deg P of them).
std::vector<std::uint64_t> apply_poly_to_vector(const FFPoly& p, const DenseMatrix& a,
                                                const std::vector<std::uint64_t>& v);

/// Incremental row eliminator shared by the factorization and the Krylov
/// algorithms. Pivot rows are stored on their still-eligible columns only,
/// so reducing a row against pivot t touches n - t entries.
class Eliminator {
public:
    struct Pivot {
        std::size_t col;                                        // original column index
        std::uint64_t inv;                                      // inverse of the pivot value
        std::vector<std::pair<std::uint32_t, std::uint64_t>> support;  // own col first
    };

    Eliminator(PrimeField f, std::size_t ncols)
        : field_(f), ncols_(ncols), is_pivot_col_(ncols, false) {}

    /// Reduce `row` in place against all pivots, in pivot order. If `lrow`
    /// is non-null the multiplier against pivot t is appended to it.
    void reduce(std::vector<std::uint64_t>& row, std::vector<std::uint64_t>* lrow,
                OpCounter& c) const;

    /// Register a fully reduced, nonzero row as the next pivot. The pivot
    /// column is the lowest original column index with a nonzero entry.
    void add_pivot(const std::vector<std::uint64_t>& row);

    std::size_t pivot_count() const { return pivots_.size(); }
    const std::vector<Pivot>& pivots() const { return pivots_; }
    const PrimeField& field() const { return field_; }
    std::size_t ncols() const { return ncols_; }

    /// Position permutation: pivot columns first (in pivot order), then the
    /// remaining columns ascending.
    std::vector<std::size_t> col_of_pos() const;

private:
    PrimeField field_;
    std::size_t ncols_;
    std::vector<bool> is_pivot_col_;
    std::vector<Pivot> pivots_;
};

}  // namespace cpoly

#endif
