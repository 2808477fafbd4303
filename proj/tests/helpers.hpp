#ifndef CPOLY_TEST_HELPERS_HPP
#define CPOLY_TEST_HELPERS_HPP

#include <cstdint>
#include <vector>

#include "cpoly/dense.hpp"
#include "cpoly/int_layer.hpp"
#include "cpoly/rng.hpp"

namespace cpoly::testing {

inline DenseMatrix random_dense(const PrimeField& f, std::size_t rows, std::size_t cols,
                                std::uint64_t seed) {
    Rng rng(seed);
    DenseMatrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.below(f.modulus());
    return m;
}

inline IntMatrix random_int_matrix(std::size_t n, long max_abs, std::uint64_t seed) {
    Rng rng(seed);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.at(i, j) = static_cast<long>(rng.below(2 * max_abs + 1)) - max_abs;
    return m;
}

inline IntMatrix paper_matrix() {
    IntMatrix m(5, 5);
    const long vals[5][5] = {{1, 1, 1, 1, 1},
                             {1, 1, -1, -1, -1},
                             {1, -1, 1, -1, -1},
                             {1, -1, -1, 1, -1},
                             {1, -1, -1, -1, 1}};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) m.at(i, j) = vals[i][j];
    return m;
}

// X^5 - 5X^4 + 40X^2 - 80X + 48, ascending.
inline IntPoly paper_charpoly() {
    return IntPoly({mpz_class(48), mpz_class(-80), mpz_class(40), mpz_class(0), mpz_class(-5),
                    mpz_class(1)});
}

/// Symbolic cofactor expansion of det(XI - A) over integer polynomials.
/// Exponential; intended for n <= 6.
inline IntPoly cofactor_charpoly(const IntMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<std::vector<IntPoly>> m(n, std::vector<IntPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                m[i][j] = IntPoly::x_minus(a.at(i, j));
            else
                m[i][j] = IntPoly({-a.at(i, j)});
        }
    std::vector<std::size_t> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = j;
    // Recursive first-row expansion over the active column set.
    struct Rec {
        const std::vector<std::vector<IntPoly>>& m;
        IntPoly run(std::size_t row, std::vector<std::size_t> cols) {
            if (cols.size() == 1) return m[row][cols[0]];
            IntPoly det;
            for (std::size_t t = 0; t < cols.size(); ++t) {
                std::vector<std::size_t> rest;
                for (std::size_t u = 0; u < cols.size(); ++u)
                    if (u != t) rest.push_back(cols[u]);
                IntPoly term = ip_mul(m[row][cols[t]], run(row + 1, rest));
                det = (t % 2 == 0) ? ip_add(det, term) : ip_sub(det, term);
            }
            return det;
        }
    } rec{m};
    return rec.run(0, cols);
}

/// Independent row-reduction rank oracle over a prime field.
inline std::size_t rank_oracle(const DenseMatrix& a) {
    const PrimeField& f = a.field();
    std::vector<std::vector<std::uint64_t>> rows(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        rows[i].assign(a.row(i), a.row(i) + a.cols());
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        const std::uint64_t inv = f.inv(rows[rank][col]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            if (rows[i][col] == 0) continue;
            const std::uint64_t mult = f.mul(rows[i][col], inv);
            for (std::size_t j = col; j < a.cols(); ++j)
                rows[i][j] = f.sub(rows[i][j], f.mul(mult, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

/// Rank of the full n-step Krylov matrix of (A, v): brute-force oracle for
/// the minimal-polynomial degree.
inline std::size_t krylov_rank_oracle(const DenseMatrix& a, std::vector<std::uint64_t> v) {
    const std::size_t n = a.rows();
    OpCounter c;
    DenseMatrix k(a.field(), n + 1, n);
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j < n; ++j) k.at(i, j) = v[j];
        v = matvec(a, v, c);
    }
    return rank_oracle(k);
}

}  // namespace cpoly::testing

#endif
