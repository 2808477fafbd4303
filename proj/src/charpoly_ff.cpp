#include "cpoly/charpoly_ff.hpp"

#include <algorithm>
#include <cassert>

#include "cpoly/rng.hpp"

namespace cpoly {

namespace {

bool all_zero(const std::vector<std::uint64_t>& v) {
    return std::all_of(v.begin(), v.end(), [](std::uint64_t x) { return x == 0; });
}

/// Solve mu * L = lambda for unit lower triangular L given by multiplier
/// rows (lrows[t] holds L[t][0..t)).
std::vector<std::uint64_t> solve_mu(const PrimeField& f,
                                    const std::vector<std::vector<std::uint64_t>>& lrows,
                                    const std::vector<std::uint64_t>& lambda, std::size_t k,
                                    OpCounter& c) {
    std::vector<std::uint64_t> mu(k, 0);
    for (std::size_t j = k; j-- > 0;) {
        std::uint64_t s = lambda[j];
        for (std::size_t t = j + 1; t < k; ++t) s = f.sub(s, f.mul(mu[t], lrows[t][j]));
        mu[j] = s;
        c.muls += k - 1 - j;
        c.adds += k - 1 - j;
    }
    return mu;
}

FFPoly poly_from_mu(const PrimeField& f, const std::uint64_t* mu, std::size_t k) {
    std::vector<std::uint64_t> coeffs(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) coeffs[i] = f.neg(mu[i]);
    coeffs[k] = 1;
    return FFPoly(f, std::move(coeffs));
}

}  // namespace

MinPolyResult minpoly_seq(const DenseMatrix& a, const std::vector<std::uint64_t>& v,
                          OpCounter& c) {
    if (a.rows() != a.cols() || a.cols() != v.size())
        throw DimensionMismatchError("minpoly_seq: shape mismatch");
    if (all_zero(v)) throw ZeroVectorError();
    const auto& f = a.field();
    const std::size_t n = a.rows();

    Eliminator elim(f, n);
    std::vector<std::vector<std::uint64_t>> lrows;
    std::vector<std::uint64_t> lambda;
    std::vector<std::uint64_t> w = v;
    std::size_t k = n + 1;
    for (std::size_t i = 0; i <= n; ++i) {
        std::vector<std::uint64_t> row = w;
        std::vector<std::uint64_t> lrow;
        elim.reduce(row, &lrow, c);
        if (all_zero(row)) {
            k = i;
            lambda = std::move(lrow);
            break;
        }
        elim.add_pivot(row);
        lrows.push_back(std::move(lrow));
        w = matvec(a, w, c);
    }
    assert(k <= n);

    std::vector<std::uint64_t> mu = solve_mu(f, lrows, lambda, k, c);

    MinPolyResult out{poly_from_mu(f, mu.data(), k),
                      LspFactors{DenseMatrix(f, k, k), DenseMatrix(f, k, n), {}, {}, k}, k};
    out.krylov.col_of_pos = elim.col_of_pos();
    std::vector<std::size_t> pos_of_col(n);
    for (std::size_t pos = 0; pos < n; ++pos) pos_of_col[out.krylov.col_of_pos[pos]] = pos;
    for (std::size_t t = 0; t < k; ++t) {
        out.krylov.L.at(t, t) = 1;
        for (std::size_t s = 0; s < t; ++s) out.krylov.L.at(t, s) = lrows[t][s];
        for (const auto& [col, val] : elim.pivots()[t].support)
            out.krylov.S.at(t, pos_of_col[col]) = val;
        out.krylov.row_of_pos.push_back(t);
    }
    return out;
}

namespace {

FFPoly luk_rec(const DenseMatrix& a, Rng& rng, OpCounter& c) {
    const auto& f = a.field();
    const std::size_t n = a.rows();
    if (n == 0) return FFPoly::one(f);

    std::vector<std::uint64_t> v(n);
    do {
        for (auto& x : v) x = rng.below(f.modulus());
    } while (all_zero(v));

    MinPolyResult mp = minpoly_seq(a, v, c);
    const std::size_t k = mp.degree;
    if (k == n) return mp.minpoly;

    DenseMatrix s1(f, k, k), s2(f, k, n - k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) s1.at(i, j) = mp.krylov.S.at(i, j);
        for (std::size_t j = k; j < n; ++j) s2.at(i, j - k) = mp.krylov.S.at(i, j);
    }
    DenseMatrix y = trsm_upper(s1, s2, c);

    // blocks of the permuted transpose, k x k leading split
    const auto& cp = mp.krylov.col_of_pos;
    DenseMatrix b21(f, n - k, k), x2(f, n - k, n - k);
    for (std::size_t i = 0; i < n - k; ++i) {
        for (std::size_t j = 0; j < k; ++j) b21.at(i, j) = a.at(cp[j], cp[k + i]);
        for (std::size_t j = 0; j < n - k; ++j) x2.at(i, j) = a.at(cp[k + j], cp[k + i]);
    }
    DenseMatrix prod = matmul(b21, y, c);
    for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t j = 0; j < n - k; ++j) x2.at(i, j) = f.sub(x2.at(i, j), prod.at(i, j));
    c.adds += (n - k) * (n - k);

    return poly_mul(mp.minpoly, luk_rec(x2, rng, c));
}

}  // namespace

FFPoly luk_charpoly(const DenseMatrix& a, std::uint64_t seed, OpCounter& c) {
    if (a.rows() != a.cols()) throw DimensionMismatchError("luk_charpoly: square input required");
    Rng rng(substream(seed, "luk-vector"));
    return luk_rec(a, rng, c);
}

ColReduced col_reduced_form(const DenseMatrix& a, OpCounter& c) {
    LspFactors fac = lsp_factor(a.transpose(), c);
    const std::size_t r = fac.rank;
    ColReduced out{DenseMatrix(a.field(), a.rows(), r),
                   std::vector<std::size_t>(fac.row_of_pos.begin(), fac.row_of_pos.begin() + r)};
    for (std::size_t t = 0; t < r; ++t)
        for (std::size_t i = 0; i < a.rows(); ++i) out.reduced.at(i, t) = a.at(i, out.surviving[t]);
    return out;
}

KgbResult kgb_charpoly(const DenseMatrix& a, OpCounter& c) {
    if (a.rows() != a.cols()) throw DimensionMismatchError("kgb_charpoly: square input required");
    const auto& f = a.field();
    const std::size_t n = a.rows();
    KgbResult out{FFPoly::one(f), {}};
    if (n == 0) return out;

    // one Krylov block per canonical basis vector, columns kept as vectors
    std::vector<std::vector<std::vector<std::uint64_t>>> blocks(n);
    for (std::size_t j = 0; j < n; ++j) {
        blocks[j].emplace_back(n, 0);
        blocks[j][0][j] = 1;
    }

    DenseMatrix b = a;  // A^(2^i), squared after each round
    for (std::size_t i = 0;; ++i) {
        const std::size_t w = std::size_t{1} << i;
        std::vector<std::size_t> active;
        for (std::size_t j = 0; j < n; ++j)
            if (blocks[j].size() == w) active.push_back(j);
        if (active.empty()) break;

        for (std::size_t j : active) {
            DenseMatrix v(f, n, w);
            for (std::size_t t = 0; t < w; ++t)
                for (std::size_t row = 0; row < n; ++row) v.at(row, t) = blocks[j][t][row];
            DenseMatrix nv = matmul(b, v, c);
            for (std::size_t t = 0; t < w; ++t) {
                std::vector<std::uint64_t> col(n);
                for (std::size_t row = 0; row < n; ++row) col[row] = nv.at(row, t);
                blocks[j].push_back(std::move(col));
            }
        }

        // prune: re-eliminate every kept column in block order, truncating a
        // block at its first dependent column
        Eliminator elim(f, n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t idx = 0; idx < blocks[j].size(); ++idx) {
                std::vector<std::uint64_t> row = blocks[j][idx];
                elim.reduce(row, nullptr, c);
                if (all_zero(row)) {
                    blocks[j].resize(idx);
                    break;
                }
                elim.add_pivot(row);
            }
        }
        b = matmul(b, b, c);
    }

    // final elimination with multipliers recorded, for block polynomial
    // extraction in the kept-column basis
    Eliminator elim(f, n);
    std::vector<std::vector<std::uint64_t>> lrows;
    std::vector<std::size_t> offset(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        offset[j] = lrows.size();
        for (const auto& col : blocks[j]) {
            std::vector<std::uint64_t> row = col;
            std::vector<std::uint64_t> lrow;
            elim.reduce(row, &lrow, c);
            assert(!all_zero(row));
            elim.add_pivot(row);
            lrows.push_back(std::move(lrow));
        }
    }
    const std::size_t total = lrows.size();
    assert(total == n);

    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t kj = blocks[j].size();
        if (kj == 0) continue;
        std::vector<std::uint64_t> u = matvec(a, blocks[j].back(), c);
        std::vector<std::uint64_t> lambda;
        elim.reduce(u, &lambda, c);
        assert(all_zero(u));
        std::vector<std::uint64_t> mu = solve_mu(f, lrows, lambda, total, c);
        FFPoly pj = poly_from_mu(f, mu.data() + offset[j], kj);
        out.charpoly = poly_mul(out.charpoly, pj);
        out.block_polys.push_back(std::move(pj));
    }
    return out;
}

namespace {

DenseMatrix column_slice(const DenseMatrix& m, std::size_t lo, std::size_t hi) {
    DenseMatrix out(m.field(), m.rows(), hi - lo);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = lo; j < hi; ++j) out.at(i, j - lo) = m.at(i, j);
    return out;
}

DenseMatrix row_slice(const DenseMatrix& m, std::size_t lo, std::size_t hi) {
    DenseMatrix out(m.field(), hi - lo, m.cols());
    for (std::size_t i = lo; i < hi; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i - lo, j) = m.at(i, j);
    return out;
}

}  // namespace

std::variant<FFPoly, NonGeneric> kg3_charpoly(const DenseMatrix& a, OpCounter& c) {
    if (a.rows() != a.cols()) throw DimensionMismatchError("kg3_charpoly: square input required");
    const std::size_t n = a.rows();
    if (n == 0 || (n & (n - 1)) != 0)
        throw UnsupportedSizeError(n);
    const auto& f = a.field();
    if (n == 1) return FFPoly::x_minus(f, a.at(0, 0));

    std::size_t r = 0;
    while ((std::size_t{1} << r) < n) ++r;

    DenseMatrix bm = column_slice(a, 0, n / 2);
    DenseMatrix cm = column_slice(a, n / 2, n);
    for (std::size_t i = r - 1;; --i) {
        const std::size_t m = std::size_t{1} << i;
        if (i != r - 1) {
            DenseMatrix prev = std::move(cm);
            bm = column_slice(prev, 0, m);
            cm = column_slice(prev, m, 2 * m);
        }
        const std::size_t sweeps = n / m - 1;
        for (std::size_t j = 0; j < sweeps; ++j) {
            const std::size_t lam = n - 2 * m - j * m;

            // solve C1 * X = B_top through the rank-revealing factorization
            DenseMatrix c1 = row_slice(cm, 0, m);
            LspFactors fac = lsp_factor(c1, c);
            if (fac.rank < m) return NonGeneric{i, j};
            DenseMatrix y = trsm_lower_unit(fac.L, row_slice(bm, 0, m), TriSide::Left, c);
            DenseMatrix yq(f, m, m);
            for (std::size_t t = 0; t < m; ++t)
                for (std::size_t q = 0; q < m; ++q) yq.at(t, q) = y.at(fac.row_of_pos[t], q);
            DenseMatrix z = trsm_upper(fac.S, yq, c);
            DenseMatrix x(f, m, m);
            for (std::size_t pos = 0; pos < m; ++pos)
                for (std::size_t q = 0; q < m; ++q) x.at(fac.col_of_pos[pos], q) = z.at(pos, q);

            // shifted block: bottom part of B minus C_bottom * X, X below it
            DenseMatrix t = matmul(row_slice(cm, m, n), x, c);
            DenseMatrix bp(f, n, m);
            for (std::size_t row = 0; row < n - m; ++row)
                for (std::size_t col = 0; col < m; ++col)
                    bp.at(row, col) = f.sub(bm.at(m + row, col), t.at(row, col));
            c.adds += (n - m) * m;
            for (std::size_t row = 0; row < m; ++row)
                for (std::size_t col = 0; col < m; ++col) bp.at(n - m + row, col) = x.at(row, col);

            DenseMatrix cp = matmul(bp, row_slice(cm, lam, lam + m), c);
            for (std::size_t row = 0; row < lam; ++row)
                for (std::size_t col = 0; col < m; ++col)
                    cp.at(m + row, col) = f.add(cp.at(m + row, col), cm.at(row, col));
            for (std::size_t row = m + lam; row < n; ++row)
                for (std::size_t col = 0; col < m; ++col)
                    cp.at(row, col) = f.add(cp.at(row, col), cm.at(row, col));
            c.adds += (n - m) * m;

            bm = std::move(bp);
            cm = std::move(cp);
        }
        if (i == 0) break;
    }

    // companion form: the single remaining column holds the negated
    // coefficients
    std::vector<std::uint64_t> coeffs(n + 1, 0);
    for (std::size_t t = 0; t < n; ++t) coeffs[t] = f.neg(cm.at(t, 0));
    coeffs[n] = 1;
    return FFPoly(f, std::move(coeffs));
}

}  // namespace cpoly
