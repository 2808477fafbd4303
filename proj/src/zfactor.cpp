#include "cpoly/zfactor.hpp"

#include <algorithm>
#include <cmath>

namespace cpoly {

IntPoly ZFactorization::reconstruct() const {
    IntPoly r({content});
    for (const auto& [f, mult] : factors)
        for (unsigned i = 0; i < mult; ++i) r = ip_mul(r, f);
    return r;
}

namespace {

IntPoly must_div(const IntPoly& a, const IntPoly& b) {
    bool ok = false;
    IntPoly q = ip_div_exact(a, b, ok);
    if (!ok) throw Error("internal: expected exact polynomial division");
    return q;
}

}  // namespace

std::vector<std::pair<IntPoly, unsigned>> squarefree_decompose(const IntPoly& p) {
    std::vector<std::pair<IntPoly, unsigned>> out;
    if (p.is_zero() || p.degree() == 0) return out;
    const IntPoly f = p.primitive_part();

    // Yun: peel gcd(f, f') layers
    IntPoly u = ip_gcd(f, f.derivative());
    IntPoly v = must_div(f, u);
    IntPoly w = must_div(f.derivative(), u);
    unsigned i = 1;
    while (v.degree() > 0) {
        IntPoly z = ip_sub(w, v.derivative());
        IntPoly h = ip_gcd(v, z);
        if (h.degree() > 0) out.emplace_back(h, i);
        v = must_div(v, h);
        w = must_div(z, h);
        ++i;
    }
    return out;
}

namespace {

FFPoly poly_powmod_mpz(const FFPoly& a, const mpz_class& e, const FFPoly& m) {
    FFPoly result = FFPoly::one(a.field());
    FFPoly base = poly_mod(a, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return result;
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) result = poly_mod(poly_mul(result, base), m);
        if (i + 1 < bits) base = poly_mod(poly_mul(base, base), m);
    }
    return result;
}

void equal_degree_split(const FFPoly& h, std::size_t d, Rng& rng, std::vector<FFPoly>& out) {
    if (h.degree() == d) {
        out.push_back(h);
        return;
    }
    const auto& f = h.field();
    mpz_class exp;
    mpz_ui_pow_ui(exp.get_mpz_t(), static_cast<unsigned long>(f.modulus()),
                  static_cast<unsigned long>(d));
    exp = (exp - 1) / 2;
    while (true) {
        std::vector<std::uint64_t> rc(h.degree());
        for (auto& x : rc) x = rng.below(f.modulus());
        FFPoly r(f, std::move(rc));
        if (r.is_zero()) continue;
        FFPoly s = poly_sub(poly_powmod_mpz(r, exp, h), FFPoly::one(f));
        FFPoly w = poly_gcd(s, h);
        if (w.degree() > 0 && w.degree() < h.degree()) {
            equal_degree_split(w, d, rng, out);
            equal_degree_split(poly_divrem(h, w).first.make_monic(), d, rng, out);
            return;
        }
    }
}

/// Distinct-degree then equal-degree factorization of a monic squarefree
/// polynomial over an odd prime field.
std::vector<FFPoly> factor_mod_q(const FFPoly& f0) {
    const auto& f = f0.field();
    Rng rng(substream(0x5eedf00du, "edf") ^ splitmix64(f.modulus()));
    std::vector<FFPoly> out;
    FFPoly fs = f0.make_monic();
    FFPoly xq = poly_mod(FFPoly::x(f), fs);
    std::size_t d = 0;
    while (fs.degree() >= 2 * (d + 1)) {
        ++d;
        xq = poly_powmod_u64(xq, f.modulus(), fs);
        FFPoly g = poly_gcd(poly_sub(xq, FFPoly::x(f)), fs);
        if (g.degree() > 0) {
            equal_degree_split(g, d, rng, out);
            fs = poly_divrem(fs, g).first.make_monic();
            xq = poly_mod(xq, fs);
        }
    }
    if (fs.degree() > 0) out.push_back(fs);
    return out;
}

// arithmetic on coefficient vectors modulo an arbitrary-precision modulus
using MVec = std::vector<mpz_class>;

void mv_norm(MVec& v, const mpz_class& m) {
    for (auto& x : v) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    while (!v.empty() && v.back() == 0) v.pop_back();
}

MVec mv_mul(const MVec& a, const MVec& b, const mpz_class& m) {
    if (a.empty() || b.empty()) return {};
    MVec c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    mv_norm(c, m);
    return c;
}

MVec mv_addsub(const MVec& a, const MVec& b, bool sub, const mpz_class& m) {
    MVec c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const mpz_class av = i < a.size() ? a[i] : mpz_class(0);
        const mpz_class bv = i < b.size() ? b[i] : mpz_class(0);
        c[i] = sub ? mpz_class(av - bv) : mpz_class(av + bv);
    }
    mv_norm(c, m);
    return c;
}

/// Division by a monic divisor.
std::pair<MVec, MVec> mv_divrem(const MVec& a, const MVec& b, const mpz_class& m) {
    MVec r = a, q;
    if (b.empty()) throw DivisionByZeroPolyError();
    if (a.size() < b.size()) return {q, r};
    q.assign(a.size() - b.size() + 1, 0);
    for (std::size_t i = q.size(); i-- > 0;) {
        if (r.size() < i + b.size()) continue;
        mpz_class top = r[i + b.size() - 1];
        if (top == 0) continue;
        q[i] = top;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= top * b[j];
        mv_norm(r, m);
    }
    mv_norm(q, m);
    return {q, r};
}

MVec mv_from_ff(const FFPoly& p) {
    MVec v;
    if (p.is_zero()) return v;
    for (std::size_t i = 0; i <= p.degree(); ++i) v.emplace_back(p.coeff(i));
    return v;
}

MVec mv_from_int(const IntPoly& p, const mpz_class& m) {
    MVec v(p.coeffs().begin(), p.coeffs().end());
    mv_norm(v, m);
    return v;
}

IntPoly mv_symmetric(const MVec& v, const mpz_class& m) {
    std::vector<mpz_class> c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = 2 * v[i] > m ? mpz_class(v[i] - m) : v[i];
    return IntPoly(std::move(c));
}

struct LiftState {
    MVec g, h, s, t;
};

/// One quadratic step: modulus m to m^2, keeping s*g + t*h = 1.
void lift_step(const MVec& fv, LiftState& st, const mpz_class& m2) {
    MVec e = mv_addsub(fv, mv_mul(st.g, st.h, m2), true, m2);
    auto [qq, rr] = mv_divrem(mv_mul(st.s, e, m2), st.h, m2);
    MVec g1 = mv_addsub(mv_addsub(st.g, mv_mul(st.t, e, m2), false, m2),
                        mv_mul(qq, st.g, m2), false, m2);
    MVec h1 = mv_addsub(st.h, rr, false, m2);
    MVec b = mv_addsub(mv_addsub(mv_mul(st.s, g1, m2), mv_mul(st.t, h1, m2), false, m2),
                       MVec{mpz_class(1)}, true, m2);
    auto [cc, dd] = mv_divrem(mv_mul(st.s, b, m2), h1, m2);
    MVec s1 = mv_addsub(st.s, dd, true, m2);
    MVec t1 = mv_addsub(mv_addsub(st.t, mv_mul(st.t, b, m2), true, m2),
                        mv_mul(cc, g1, m2), true, m2);
    st = {std::move(g1), std::move(h1), std::move(s1), std::move(t1)};
}

LiftState lift_to(const IntPoly& f, const FFPoly& g0, const FFPoly& h0, std::uint64_t q,
                  const mpz_class& target_mod) {
    PolyXgcd xg = poly_xgcd(g0, h0);
    if (xg.g.degree() > 0) throw NotCoprimeError();
    // scale so s*g0 + t*h0 = 1
    const auto& f0 = g0.field();
    const std::uint64_t c = xg.g.coeff(0);
    const std::uint64_t cinv = f0.inv(c);
    FFPoly s0(f0, [&] {
        std::vector<std::uint64_t> v;
        if (!xg.s.is_zero())
            for (std::size_t i = 0; i <= xg.s.degree(); ++i) v.push_back(f0.mul(xg.s.coeff(i), cinv));
        return v;
    }());
    FFPoly t0(f0, [&] {
        std::vector<std::uint64_t> v;
        if (!xg.t.is_zero())
            for (std::size_t i = 0; i <= xg.t.degree(); ++i) v.push_back(f0.mul(xg.t.coeff(i), cinv));
        return v;
    }());

    LiftState st{mv_from_ff(g0), mv_from_ff(h0), mv_from_ff(s0), mv_from_ff(t0)};
    mpz_class m(static_cast<unsigned long>(q));
    while (m < target_mod) {
        const mpz_class m2 = m * m;
        lift_step(mv_from_int(f, m2), st, m2);
        m = m2;
    }
    // reduce down to the requested modulus
    mv_norm(st.g, target_mod);
    mv_norm(st.h, target_mod);
    mv_norm(st.s, target_mod);
    mv_norm(st.t, target_mod);
    return st;
}

}  // namespace

std::pair<IntPoly, IntPoly> hensel_lift_pair(const IntPoly& f, const FFPoly& g0,
                                             const FFPoly& h0, std::uint64_t q,
                                             unsigned target) {
    mpz_class target_mod;
    mpz_ui_pow_ui(target_mod.get_mpz_t(), static_cast<unsigned long>(q), target);
    LiftState st = lift_to(f, g0, h0, q, target_mod);
    return {mv_symmetric(st.g, target_mod), mv_symmetric(st.h, target_mod)};
}

namespace {

std::vector<IntPoly> lift_tree(const IntPoly& f, const std::vector<FFPoly>& facs,
                               std::size_t lo, std::size_t hi, std::uint64_t q,
                               const mpz_class& target_mod, unsigned target) {
    if (hi - lo == 1) {
        MVec v = mv_from_int(f, target_mod);
        return {mv_symmetric(v, target_mod)};
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    FFPoly g0 = facs[lo];
    for (std::size_t i = lo + 1; i < mid; ++i) g0 = poly_mul(g0, facs[i]);
    FFPoly h0 = facs[mid];
    for (std::size_t i = mid + 1; i < hi; ++i) h0 = poly_mul(h0, facs[i]);
    auto [g, h] = hensel_lift_pair(f, g0, h0, q, target);
    std::vector<IntPoly> out = lift_tree(g, facs, lo, mid, q, target_mod, target);
    std::vector<IntPoly> right = lift_tree(h, facs, mid, hi, q, target_mod, target);
    out.insert(out.end(), right.begin(), right.end());
    return out;
}

double norm2_log2(const IntPoly& p) {
    double s = 0;
    for (const auto& c : p.coeffs()) {
        const double l = log2_mpz(c == 0 ? mpz_class(1) : mpz_class(abs(c)));
        s += std::exp2(2 * std::min(l, 500.0));
    }
    return 0.5 * std::log2(s);
}

IntPoly positive_lc(const IntPoly& p) { return p.lc() < 0 ? ip_scale(p, -1) : p; }

/// Factor a primitive squarefree polynomial with positive leading
/// coefficient into irreducibles.
std::vector<IntPoly> factor_squarefree(const IntPoly& g) {
    if (g.degree() <= 1) return {g};

    // monic substitution y = lc * x so the lifting machinery only sees
    // monic polynomials
    const mpz_class c = g.lc();
    IntPoly big = g;
    if (c != 1) {
        // G_i = g_i * c^(deg-1-i), G monic of the same degree
        std::vector<mpz_class> coeffs(g.coeffs());
        coeffs[g.degree()] = 1;
        mpz_class pw = 1;
        for (std::size_t i = g.degree(); i-- > 0;) {
            coeffs[i] *= pw;
            pw *= c;
        }
        big = IntPoly(std::move(coeffs));
    }

    // smallest odd prime with a squarefree image
    std::uint64_t q = 3;
    FFPoly image = FFPoly::zero(PrimeField(3));
    while (true) {
        PrimeField fq(q);
        FFPoly img = big.reduce(fq);
        if (!img.is_zero() && img.degree() == big.degree()) {
            FFPoly d = img.derivative();
            if (!d.is_zero() && poly_gcd(img, d).degree() == 0) {
                image = img.make_monic();
                break;
            }
        }
        do { q += 2; } while (![](std::uint64_t x) {
            for (std::uint64_t d = 3; d * d <= x; d += 2)
                if (x % d == 0) return false;
            return true;
        }(q));
    }

    std::vector<FFPoly> mod_factors = factor_mod_q(image);
    if (mod_factors.size() == 1) return {g};

    // lift past twice the factor coefficient bound
    const double log2_bound =
        static_cast<double>(big.degree()) + norm2_log2(big) + log2_mpz(abs(big.lc()));
    const unsigned target = static_cast<unsigned>(
        std::ceil((log2_bound + 2.0) / std::log2(static_cast<double>(q)))) + 1;
    mpz_class target_mod;
    mpz_ui_pow_ui(target_mod.get_mpz_t(), static_cast<unsigned long>(q), target);

    std::vector<IntPoly> lifted =
        lift_tree(big, mod_factors, 0, mod_factors.size(), q, target_mod, target);

    // subset recombination against the monic polynomial
    std::vector<IntPoly> monic_factors;
    std::vector<std::size_t> active(lifted.size());
    for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
    IntPoly cur = big;
    for (std::size_t s = 1; 2 * s <= active.size();) {
        bool found = false;
        // trues-first is the lexicographically largest arrangement, so
        // prev_permutation walks every size-s subset before returning false
        std::vector<bool> mask(active.size(), false);
        std::fill(mask.begin(), mask.begin() + static_cast<long>(s), true);
        do {
            MVec prod{mpz_class(1)};
            for (std::size_t i = 0; i < active.size(); ++i)
                if (mask[i]) prod = mv_mul(prod, mv_from_int(lifted[active[i]], target_mod),
                                           target_mod);
            IntPoly cand = mv_symmetric(prod, target_mod);
            bool ok = false;
            IntPoly quot = ip_div_exact(cur, cand, ok);
            if (ok) {
                monic_factors.push_back(cand);
                cur = std::move(quot);
                std::vector<std::size_t> rest;
                for (std::size_t i = 0; i < active.size(); ++i)
                    if (!mask[i]) rest.push_back(active[i]);
                active = std::move(rest);
                found = true;
                break;
            }
        } while (std::prev_permutation(mask.begin(), mask.end()));
        if (!found) ++s;
    }
    if (cur.degree() > 0) monic_factors.push_back(cur);

    if (c == 1) return monic_factors;
    // undo the substitution: h(x) = primitive part of H(c x)
    std::vector<IntPoly> out;
    for (const auto& h : monic_factors) {
        std::vector<mpz_class> coeffs(h.coeffs());
        mpz_class pw = 1;
        for (std::size_t i = 1; i < coeffs.size(); ++i) {
            pw *= c;
            coeffs[i] *= pw;
        }
        out.push_back(positive_lc(IntPoly(std::move(coeffs)).primitive_part()));
    }
    return out;
}

}  // namespace

ZFactorization factor_over_z(const IntPoly& p) {
    if (p.is_zero()) throw Error("factor_over_z: zero polynomial");
    if (p.degree() > 64) throw DegreeCapExceededError(p.degree());

    ZFactorization out;
    out.content = p.content();
    if (p.degree() == 0) return out;
    const IntPoly f = p.primitive_part();

    for (const auto& [part, mult] : squarefree_decompose(f))
        for (const auto& irr : factor_squarefree(positive_lc(part)))
            out.factors.emplace_back(irr, mult);

    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) {
                  if (a.first.degree() != b.first.degree())
                      return a.first.degree() < b.first.degree();
                  return a.first.coeffs() < b.first.coeffs();
              });
    return out;
}

std::size_t cia_prime_set_size(std::size_t n, double log2_b, double eta) {
    const double t = 0.5 * std::log2(static_cast<double>(n) + 1.0) +
                     static_cast<double>(n) + 1.0 + log2_b;
    const double val = t > 50.0 ? t : std::log2(std::exp2(t) + 1.0);
    return static_cast<std::size_t>(std::ceil(val / eta));
}

}  // namespace cpoly
