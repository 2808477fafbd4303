#include "cpoly/dense.hpp"

#include <algorithm>

namespace cpoly {

namespace {
constexpr std::size_t kBlock = 32;  // cache blocking; counts do not depend on it

void check_same_field(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.field() != b.field()) throw FieldMismatchError();
}
}  // namespace

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b, OpCounter& c) {
    check_same_field(a, b);
    if (a.cols() != b.rows())
        throw DimensionMismatchError("matmul: inner dimensions disagree");
    const auto& f = a.field();
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    DenseMatrix out(f, m, n);
    if (m == 0 || n == 0 || k == 0) return out;
    const std::uint64_t p = f.modulus();
    const std::uint64_t budget = f.max_unreduced_terms();

#pragma omp parallel for schedule(static) if (m * n * k > 1u << 16)
    for (std::size_t ib = 0; ib < m; ib += kBlock) {
        const std::size_t iend = std::min(ib + kBlock, m);
        std::vector<std::uint64_t> acc(n);
        for (std::size_t i = ib; i < iend; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            std::size_t done = 0;
            while (done < k) {
                const std::size_t chunk = std::min<std::uint64_t>(k - done, budget);
                for (std::size_t t = done; t < done + chunk; ++t) {
                    const std::uint64_t av = a.at(i, t);
                    if (av == 0) continue;
                    const std::uint64_t* brow = b.row(t);
                    for (std::size_t j = 0; j < n; ++j) acc[j] += av * brow[j];
                }
                for (std::size_t j = 0; j < n; ++j) acc[j] %= p;
                done += chunk;
            }
            for (std::size_t j = 0; j < n; ++j) out.at(i, j) = acc[j];
        }
    }
    c.muls += static_cast<std::uint64_t>(m) * n * k;
    c.adds += static_cast<std::uint64_t>(m) * n * (k - 1);
    return out;
}

DenseMatrix matmul_serial(const DenseMatrix& a, const DenseMatrix& b, OpCounter& c) {
    check_same_field(a, b);
    if (a.cols() != b.rows())
        throw DimensionMismatchError("matmul: inner dimensions disagree");
    const auto& f = a.field();
    const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
    DenseMatrix out(f, m, n);
    if (m == 0 || n == 0 || k == 0) return out;
    const std::uint64_t p = f.modulus();
    const std::uint64_t budget = f.max_unreduced_terms();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            __uint128_t acc = 0;
            std::uint64_t terms = 0;
            for (std::size_t t = 0; t < k; ++t) {
                acc += a.at(i, t) * b.at(t, j);
                if (++terms == budget) {
                    acc %= p;
                    terms = 0;
                }
            }
            out.at(i, j) = static_cast<std::uint64_t>(acc % p);
        }
    }
    c.muls += static_cast<std::uint64_t>(m) * n * k;
    c.adds += static_cast<std::uint64_t>(m) * n * (k - 1);
    return out;
}

std::vector<std::uint64_t> matvec(const DenseMatrix& a, const std::vector<std::uint64_t>& v,
                                  OpCounter& c) {
    if (a.cols() != v.size()) throw DimensionMismatchError("matvec: length mismatch");
    const auto& f = a.field();
    const std::uint64_t p = f.modulus();
    const std::uint64_t budget = f.max_unreduced_terms();
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::uint64_t> out(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        __uint128_t acc = 0;
        std::uint64_t terms = 0;
        const std::uint64_t* row = a.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            acc += row[j] * v[j];
            if (++terms == budget) {
                acc %= p;
                terms = 0;
            }
        }
        out[i] = static_cast<std::uint64_t>(acc % p);
    }
    c.muls += static_cast<std::uint64_t>(m) * n;
    c.adds += static_cast<std::uint64_t>(m) * (n - 1);
    return out;
}

void Eliminator::reduce(std::vector<std::uint64_t>& row, std::vector<std::uint64_t>* lrow,
                        OpCounter& c) const {
    const std::uint64_t p = field_.modulus();
    for (const Pivot& piv : pivots_) {
        const std::uint64_t e = row[piv.col];
        if (e == 0) {
            if (lrow) lrow->push_back(0);
            continue;
        }
        const std::uint64_t mult = field_.mul(e, piv.inv);
        c.divs += 1;
        if (lrow) lrow->push_back(mult);
        row[piv.col] = 0;
        for (std::size_t s = 1; s < piv.support.size(); ++s) {
            const auto [col, val] = piv.support[s];
            row[col] = field_.sub(row[col], (mult * val) % p);
        }
        c.muls += piv.support.size() - 1;
        c.adds += piv.support.size() - 1;
    }
}

void Eliminator::add_pivot(const std::vector<std::uint64_t>& row) {
    Pivot piv;
    piv.col = ncols_;
    for (std::size_t j = 0; j < ncols_; ++j) {
        if (!is_pivot_col_[j] && row[j] != 0) {
            piv.col = j;
            break;
        }
    }
    piv.inv = field_.inv(row[piv.col]);
    piv.support.reserve(ncols_ - pivots_.size());
    piv.support.emplace_back(static_cast<std::uint32_t>(piv.col), row[piv.col]);
    for (std::size_t j = 0; j < ncols_; ++j) {
        if (j != piv.col && !is_pivot_col_[j])
            piv.support.emplace_back(static_cast<std::uint32_t>(j), row[j]);
    }
    is_pivot_col_[piv.col] = true;
    pivots_.push_back(std::move(piv));
}

std::vector<std::size_t> Eliminator::col_of_pos() const {
    std::vector<std::size_t> perm;
    perm.reserve(ncols_);
    for (const Pivot& piv : pivots_) perm.push_back(piv.col);
    for (std::size_t j = 0; j < ncols_; ++j)
        if (!is_pivot_col_[j]) perm.push_back(j);
    return perm;
}

LspFactors lsp_factor(const DenseMatrix& a, OpCounter& c) {
    const auto& f = a.field();
    const std::size_t m = a.rows(), n = a.cols();
    Eliminator elim(f, n);
    std::vector<std::vector<std::uint64_t>> lrows(m);
    std::vector<std::size_t> pivot_rows, zero_rows;
    std::vector<bool> row_is_pivot(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::uint64_t> row(a.row(i), a.row(i) + n);
        elim.reduce(row, &lrows[i], c);
        const bool nonzero = std::any_of(row.begin(), row.end(), [](std::uint64_t v) { return v != 0; });
        if (nonzero) {
            elim.add_pivot(row);
            pivot_rows.push_back(i);
            row_is_pivot[i] = true;
        } else {
            zero_rows.push_back(i);
        }
    }
    const std::size_t r = pivot_rows.size();

    LspFactors out{DenseMatrix(f, m, m), DenseMatrix(f, m, n), {}, {}, r};
    // column positions: pivot cols in pivot order, then the rest ascending
    out.col_of_pos = elim.col_of_pos();
    std::vector<std::size_t> pos_of_col(n);
    for (std::size_t pos = 0; pos < n; ++pos) pos_of_col[out.col_of_pos[pos]] = pos;

    for (std::size_t t = 0; t < r; ++t)
        for (const auto& [col, val] : elim.pivots()[t].support) out.S.at(t, pos_of_col[col]) = val;

    out.row_of_pos = pivot_rows;
    out.row_of_pos.insert(out.row_of_pos.end(), zero_rows.begin(), zero_rows.end());

    for (std::size_t i = 0; i < m; ++i) {
        out.L.at(i, i) = 1;
        for (std::size_t t = 0; t < lrows[i].size(); ++t)
            if (lrows[i][t] != 0) out.L.at(i, pivot_rows[t]) = lrows[i][t];
    }
    return out;
}

DenseMatrix LspFactors::reconstruct() const {
    const auto& f = L.field();
    const std::size_t m = L.rows(), n = S.cols();
    // Q * S * P in original row/column space
    DenseMatrix qsp(f, m, n);
    for (std::size_t t = 0; t < m; ++t)
        for (std::size_t pos = 0; pos < n; ++pos)
            qsp.at(row_of_pos[t], col_of_pos[pos]) = S.at(t, pos);
    OpCounter scratch;
    return matmul_serial(L, qsp, scratch);
}

DenseMatrix trsm_lower_unit(const DenseMatrix& l, const DenseMatrix& b, TriSide side,
                            OpCounter& c) {
    check_same_field(l, b);
    if (l.rows() != l.cols()) throw DimensionMismatchError("trsm: L must be square");
    const std::size_t k = l.rows();
    const auto& f = l.field();
    for (std::size_t i = 0; i < k; ++i)
        if (l.at(i, i) != 1) throw NotUnitDiagonalError();
    if (side == TriSide::Left) {
        if (b.rows() != k) throw DimensionMismatchError("trsm: B row count mismatch");
        DenseMatrix x = b;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t t = 0; t < i; ++t) {
                const std::uint64_t lv = l.at(i, t);
                for (std::size_t j = 0; j < b.cols(); ++j)
                    x.at(i, j) = f.sub(x.at(i, j), f.mul(lv, x.at(t, j)));
            }
            c.muls += i * b.cols();
            c.adds += i * b.cols();
        }
        return x;
    }
    if (b.cols() != k) throw DimensionMismatchError("trsm: B column count mismatch");
    DenseMatrix x = b;
    for (std::size_t j = k; j-- > 0;) {
        for (std::size_t t = j + 1; t < k; ++t) {
            const std::uint64_t lv = l.at(t, j);
            for (std::size_t i = 0; i < b.rows(); ++i)
                x.at(i, j) = f.sub(x.at(i, j), f.mul(x.at(i, t), lv));
        }
        c.muls += (k - j - 1) * b.rows();
        c.adds += (k - j - 1) * b.rows();
    }
    return x;
}

DenseMatrix trsm_upper(const DenseMatrix& u, const DenseMatrix& b, OpCounter& c) {
    check_same_field(u, b);
    if (u.rows() != u.cols()) throw DimensionMismatchError("trsm: U must be square");
    const std::size_t k = u.rows();
    if (b.rows() != k) throw DimensionMismatchError("trsm: B row count mismatch");
    const auto& f = u.field();
    std::vector<std::uint64_t> dinv(k);
    for (std::size_t i = 0; i < k; ++i) dinv[i] = f.inv(u.at(i, i));
    DenseMatrix x = b;
    for (std::size_t i = k; i-- > 0;) {
        for (std::size_t t = i + 1; t < k; ++t) {
            const std::uint64_t uv = u.at(i, t);
            if (uv == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                x.at(i, j) = f.sub(x.at(i, j), f.mul(uv, x.at(t, j)));
        }
        for (std::size_t j = 0; j < b.cols(); ++j) x.at(i, j) = f.mul(x.at(i, j), dinv[i]);
        c.muls += (k - i - 1) * b.cols();
        c.adds += (k - i - 1) * b.cols();
        c.divs += b.cols();
    }
    return x;
}

std::vector<std::uint64_t> apply_poly_to_vector(const FFPoly& p, const DenseMatrix& a,
                                                const std::vector<std::uint64_t>& v) {
    if (a.rows() != a.cols() || a.cols() != v.size())
        throw DimensionMismatchError("apply_poly_to_vector: shape mismatch");
    if (p.field() != a.field()) throw FieldMismatchError();
    const auto& f = a.field();
    const std::size_t n = v.size();
    std::vector<std::uint64_t> w(n, 0);
    if (p.is_zero()) return w;
    OpCounter scratch;
    const auto& cs = p.coeffs();
    for (std::size_t i = 0; i < n; ++i) w[i] = f.mul(cs.back(), v[i]);
    for (std::size_t d = cs.size() - 1; d-- > 0;) {
        w = matvec(a, w, scratch);
        for (std::size_t i = 0; i < n; ++i) w[i] = f.add(w[i], f.mul(cs[d], v[i]));
    }
    return w;
}

}  // namespace cpoly
