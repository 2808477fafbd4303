#include "cpoly/sparse_bb.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cpoly {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets)
    : rows_(rows), cols_(cols), t_(std::move(triplets)) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& t : t_) {
        if (t.row >= rows_ || t.col >= cols_)
            throw DimensionMismatchError("sparse entry out of range");
        if (t.value == 0) throw ParseError(0, "zero value in sparse triplet");
        if (!seen.insert({t.row, t.col}).second) throw DuplicateEntryError(t.row, t.col);
    }
}

std::vector<std::uint64_t> SparseMatrix::apply_mod(const PrimeField& f,
                                                   const std::vector<std::uint64_t>& v) const {
    if (v.size() != cols_) throw DimensionMismatchError("apply_mod: length mismatch");
    const mpz_class p(static_cast<unsigned long>(f.modulus()));
    std::vector<std::uint64_t> out(rows_, 0);
    mpz_class r;
    for (const auto& t : t_) {
        mpz_fdiv_r(r.get_mpz_t(), t.value.get_mpz_t(), p.get_mpz_t());
        out[t.row] = f.add(out[t.row], f.mul(r.get_ui(), v[t.col]));
    }
    return out;
}

DenseMatrix SparseMatrix::densify_mod(const PrimeField& f) const {
    return densify().reduce(f);
}

IntMatrix SparseMatrix::densify() const {
    IntMatrix out(rows_, cols_);
    for (const auto& t : t_) out.at(t.row, t.col) = t.value;
    return out;
}

mpz_class SparseMatrix::trace() const {
    mpz_class s = 0;
    for (const auto& t : t_)
        if (t.row == t.col) s += t.value;
    return s;
}

mpz_class SparseMatrix::entry_bound() const {
    mpz_class b = 0;
    for (const auto& t : t_) {
        mpz_class v = abs(t.value);
        if (v > b) b = v;
    }
    return b;
}

Blackbox Blackbox::from_sparse(std::shared_ptr<const SparseMatrix> s) {
    if (s->rows() != s->cols()) throw DimensionMismatchError("blackbox: square input required");
    Blackbox b;
    b.n = s->rows();
    b.apply = [s](const PrimeField& f, const std::vector<std::uint64_t>& v) {
        return s->apply_mod(f, v);
    };
    b.trace = s->trace();
    b.entry_bound = s->entry_bound();
    b.dense = std::make_shared<IntMatrix>(s->densify());
    return b;
}

Blackbox Blackbox::from_dense(std::shared_ptr<const IntMatrix> m) {
    if (m->rows() != m->cols()) throw DimensionMismatchError("blackbox: square input required");
    Blackbox b;
    b.n = m->rows();
    b.apply = [m](const PrimeField& f, const std::vector<std::uint64_t>& v) {
        OpCounter scratch;
        return matvec(m->reduce(f), v, scratch);
    };
    b.trace = m->trace();
    b.entry_bound = m->entry_bound();
    b.dense = std::move(m);
    return b;
}

FFPoly berlekamp_massey(const PrimeField& f, const std::vector<std::uint64_t>& seq) {
    // connection polynomial C with C[0] = 1; the minimal generator is its
    // reversal to length L+1
    std::vector<std::uint64_t> cc{1}, bb{1};
    std::size_t l = 0, m = 1;
    std::uint64_t b = 1;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        std::uint64_t d = seq[i];
        for (std::size_t j = 1; j <= l && j < cc.size(); ++j)
            d = f.add(d, f.mul(cc[j], seq[i - j]));
        if (d == 0) {
            ++m;
            continue;
        }
        const std::uint64_t coef = f.mul(d, f.inv(b));
        if (2 * l <= i) {
            std::vector<std::uint64_t> t = cc;
            if (cc.size() < bb.size() + m) cc.resize(bb.size() + m, 0);
            for (std::size_t j = 0; j < bb.size(); ++j)
                cc[j + m] = f.sub(cc[j + m], f.mul(coef, bb[j]));
            l = i + 1 - l;
            bb = std::move(t);
            b = d;
            m = 1;
        } else {
            if (cc.size() < bb.size() + m) cc.resize(bb.size() + m, 0);
            for (std::size_t j = 0; j < bb.size(); ++j)
                cc[j + m] = f.sub(cc[j + m], f.mul(coef, bb[j]));
            ++m;
        }
    }
    std::vector<std::uint64_t> p(l + 1, 0);
    for (std::size_t k = 0; k <= l; ++k) p[k] = k <= l && l - k < cc.size() ? cc[l - k] : 0;
    return FFPoly(f, std::move(p));
}

FFPoly wiedemann_minpoly_modp(const Blackbox& box, std::uint64_t p, std::uint64_t seed) {
    const PrimeField f(p);
    Rng rng(substream(seed, "wiedemann") ^ splitmix64(p));
    const std::size_t n = box.n;
    std::vector<std::uint64_t> u(n), v(n);
    auto draw = [&](std::vector<std::uint64_t>& x) {
        bool zero = true;
        while (zero) {
            for (auto& e : x) e = rng.below(f.modulus());
            zero = std::all_of(x.begin(), x.end(), [](std::uint64_t e) { return e == 0; });
        }
    };
    draw(u);
    draw(v);

    const std::uint64_t budget = f.max_unreduced_terms();
    std::vector<std::uint64_t> seq(2 * n);
    std::vector<std::uint64_t> w = v;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        __uint128_t acc = 0;
        std::uint64_t terms = 0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += u[j] * w[j];
            if (++terms == budget) {
                acc %= f.modulus();
                terms = 0;
            }
        }
        seq[i] = static_cast<std::uint64_t>(acc % f.modulus());
        if (i + 1 < 2 * n) w = box.apply(f, w);
    }
    return berlekamp_massey(f, seq);
}

IntPoly integer_minpoly(const Blackbox& box, double eta, std::uint64_t seed) {
    const std::size_t n = box.n;
    if (n == 0) return IntPoly::one();

    // Mignotte-style bound: the minimal polynomial divides the monic
    // characteristic polynomial, so its coefficients are bounded by
    // 2^n * sqrt(n+1) * max charpoly coefficient.
    const double log2_u = coeff_bound_log2(n, std::max(log2_mpz(box.entry_bound), 0.0)) +
                          static_cast<double>(n) +
                          0.5 * std::log2(static_cast<double>(n) + 1.0);
    PrimeSampler sampler(n, substream(seed, "imp-primes"), log2_u + 64.0);
    const double eta_et = eta / 2.0;  // other half covers unlucky projections

    CrtAccumulator acc;
    std::size_t best_deg = 0;
    double fail_prod = 1.0;
    while (true) {
        const std::uint64_t p = sampler.next();
        FFPoly pp = wiedemann_minpoly_modp(box, p, seed);
        if (pp.degree() < best_deg) {
            FFPoly retry = wiedemann_minpoly_modp(box, p, substream(seed, "retry"));
            if (retry.degree() > pp.degree()) pp = std::move(retry);
            if (pp.degree() < best_deg) continue;  // bad prime, discard
        }
        if (pp.degree() > best_deg) {
            best_deg = pp.degree();
            acc = CrtAccumulator();
            fail_prod = 1.0;
        }
        const double log2_before = acc.started() ? log2_mpz(acc.modulus()) : 0.0;
        const std::size_t streak_before = acc.stable_streak();
        acc.combine(p, pp);
        if (log2_mpz(acc.modulus()) > log2_u + 1.0) break;
        if (acc.stable_streak() > streak_before && acc.primes_used() >= 2) {
            const double conf = et_confidence(log2_before, log2_u + 1.0,
                                              sampler.log2_lower_bound(), sampler.pool_size());
            fail_prod *= std::clamp(1.0 - conf, 0.0, 1.0);
            if (fail_prod <= eta_et) break;
        } else if (acc.stable_streak() == 0) {
            fail_prod = 1.0;
        }
    }
    return acc.to_poly();
}

}  // namespace cpoly
