#include "cpoly/cia.hpp"

#include <cmath>
#include <cstdint>
#include <algorithm>
#include <mutex>
#include <sstream>
#include <vector>

#include "cpoly/charpoly_ff.hpp"
#include "cpoly/errors.hpp"
#include "cpoly/int_layer.hpp"
#include "cpoly/rng.hpp"

namespace cpoly {

namespace {

// Verification primes live in (2^20, 2^26): large enough that a random pick
// divides the discriminant-like bad set with probability ~eta per prime,
// small enough for the word-size field arithmetic. The pool is grown by
// segmented sieving on demand; its exact total size is a fixed constant of
// the interval, precomputed so the clamp never needs a full sieve.
constexpr std::size_t kVerificationPoolSize = 3875784;

std::uint64_t nth_verification_prime(std::size_t idx) {
    static std::mutex mu;
    static std::vector<std::uint64_t> primes;
    static std::vector<std::uint64_t> base;  // primes up to 2^13, for sieving
    static std::uint64_t next_lo = (1ull << 20) + 1;

    std::lock_guard<std::mutex> lock(mu);
    if (base.empty()) {
        const std::uint64_t cap = 1ull << 13;
        std::vector<bool> comp(cap, false);
        for (std::uint64_t i = 2; i < cap; ++i) {
            if (comp[i]) continue;
            base.push_back(i);
            for (std::uint64_t j = i * i; j < cap; j += i) comp[j] = true;
        }
    }
    while (primes.size() <= idx) {
        const std::uint64_t lo = next_lo;
        const std::uint64_t hi = std::min(lo + (1ull << 18), (1ull << 26));
        if (lo >= hi) throw PrimePoolExhaustedError();
        std::vector<bool> comp(hi - lo, false);
        for (std::uint64_t q : base)
            for (std::uint64_t j = ((lo + q - 1) / q) * q; j < hi; j += q) comp[j - lo] = true;
        for (std::uint64_t v = lo; v < hi; ++v)
            if (!comp[v - lo]) primes.push_back(v);
        next_lo = hi;
    }
    return primes[idx];
}

DenseMatrix densify_mod_box(const Blackbox& box, const PrimeField& f) {
    DenseMatrix m(f, box.n, box.n);
    std::vector<std::uint64_t> e(box.n, 0);
    for (std::size_t j = 0; j < box.n; ++j) {
        e[j] = 1;
        std::vector<std::uint64_t> col = box.apply(f, e);
        for (std::size_t i = 0; i < box.n; ++i) m.at(i, j) = col[i];
        e[j] = 0;
    }
    return m;
}

const char* failure_name(CiaFailure f) {
    switch (f) {
        case CiaFailure::MultiplicityZero: return "multiplicity-zero";
        case CiaFailure::DegreeSum: return "degree-sum";
        case CiaFailure::Trace: return "trace";
        default: return "none";
    }
}

}  // namespace

unsigned multiplicity_of(const FFPoly& fbar, const FFPoly& pp) {
    unsigned count = 0;
    FFPoly cur = pp;
    while (cur.degree() >= fbar.degree()) {
        auto [q, r] = poly_divrem(cur, fbar);
        if (!r.is_zero()) break;
        ++count;
        cur = q;
    }
    return count;
}

CiaReport cia_charpoly(const Blackbox& box, double epsilon, std::uint64_t seed,
                       const CiaOptions& options) {
    CiaReport rep;
    rep.epsilon = epsilon;
    // Two independent stages (minimal polynomial, prime verification) each
    // get failure budget eta so the total stays below epsilon.
    rep.eta = 1.0 - std::sqrt(1.0 - epsilon);
    const std::size_t n = box.n;

    rep.minpoly = integer_minpoly(box, rep.eta, substream(seed, "cia-minpoly"));
    const std::size_t d = rep.minpoly.degree();

    if (d == n && options.allow_dense_fallback && box.dense) {
        // Minimal polynomial already has full degree, so it is the
        // characteristic polynomial; certify it with the quasi-deterministic
        // CRT driver instead of factoring.
        rep.result = iluk_qd(*box.dense, substream(seed, "cia-qd"));
        rep.success = true;
        rep.factors.emplace_back(rep.result, 1u);
        return rep;
    }

    ZFactorization zf = factor_over_z(rep.minpoly);
    for (const auto& [fac, mult] : zf.factors) {
        (void)mult;  // minimal polynomials are squarefree per factor here;
                     // multiplicities below come from the modular image.
        rep.factors.emplace_back(fac, 0u);
    }

    if (options.forced_prime) {
        rep.prime = *options.forced_prime;
    } else {
        const double log2_b =
            static_cast<double>(coeff_bit_bound(n, box.entry_bound));
        // When the requested set exceeds every usable word-size prime,
        // drawing from the whole pool is the best bound the field cap
        // allows.
        const std::size_t s =
            std::min(cia_prime_set_size(n, log2_b, rep.eta), kVerificationPoolSize);
        Rng rng(substream(seed, "cia-prime"));
        rep.prime = nth_verification_prime(rng.below(s));
    }

    PrimeField f(rep.prime);
    OpCounter ops;
    DenseMatrix am = densify_mod_box(box, f);
    FFPoly pp = luk_charpoly(am, substream(seed, "cia-luk"), ops);

    std::size_t degree_sum = 0;
    for (auto& [fac, mult] : rep.factors) {
        mult = multiplicity_of(fac.reduce(f), pp);
        if (mult == 0) {
            rep.failure = CiaFailure::MultiplicityZero;
            return rep;
        }
        degree_sum += mult * fac.degree();
    }
    if (degree_sum != n) {
        rep.failure = CiaFailure::DegreeSum;
        return rep;
    }

    IntPoly prod = IntPoly::one();
    for (const auto& [fac, mult] : rep.factors)
        for (unsigned t = 0; t < mult; ++t) prod = ip_mul(prod, fac);

    // Coefficient of X^{n-1} must be minus the trace.
    if (prod.coeff(n - 1) != -box.trace) {
        rep.failure = CiaFailure::Trace;
        return rep;
    }

    rep.result = prod;
    rep.success = true;
    return rep;
}

std::string CiaReport::to_text() const {
    std::ostringstream out;
    if (success) {
        out << "status: ok\n";
        out << "charpoly: " << result.to_string() << "\n";
    } else {
        out << "status: FAIL(" << failure_name(failure) << ")\n";
    }
    out << "epsilon: " << epsilon << "\n";
    out << "eta: " << eta << "\n";
    if (prime != 0) out << "prime: " << prime << "\n";
    out << "minpoly: " << minpoly.to_string() << "\n";
    for (const auto& [fac, mult] : factors)
        out << "factor: " << fac.to_string() << " ^ " << mult << "\n";
    return out.str();
}

}  // namespace cpoly
