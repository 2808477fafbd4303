#ifndef CPOLY_FF_HPP
#define CPOLY_FF_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cpoly/errors.hpp"

namespace cpoly {

/// A word-size prime field Z/pZ with 2 < p < 2^26.
///
/// Elements are canonical residues in [0, p) stored in uint64_t. The cap on p
/// guarantees that a 64-bit accumulator can hold at least 2^11 unreduced
/// products (p-1)^2, which is what the dense kernels rely on for delayed
/// reduction.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p);

    std::uint64_t modulus() const { return p_; }

    /// Largest number of products (p-1)^2 a 64-bit accumulator can sum
    /// without overflow; kernels reduce at least this often.
    std::uint64_t max_unreduced_terms() const { return budget_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint64_t neg(std::uint64_t a) const { return a ? p_ - a : 0; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;

    /// Canonical residue of a signed 64-bit integer.
    std::uint64_t from_signed(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<std::uint64_t>(r);
    }

    /// Symmetric representative in (-p/2, p/2].
    long long to_signed(std::uint64_t a) const {
        return a * 2 > p_ ? static_cast<long long>(a) - static_cast<long long>(p_)
                          : static_cast<long long>(a);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

    /// Deterministic Miller-Rabin, valid for all 64-bit inputs.
    static bool is_prime_u64(std::uint64_t n);

private:
    std::uint64_t p_;
    std::uint64_t budget_;
};

inline PrimeField make_field(std::uint64_t p) { return PrimeField(p); }

/// Dense univariate polynomial over a prime field, ascending coefficients.
/// The zero polynomial has an empty coefficient vector; degree() is only
/// defined for nonzero polynomials.
class FFPoly {
public:
    explicit FFPoly(PrimeField f) : field_(f) {}
    FFPoly(PrimeField f, std::vector<std::uint64_t> coeffs)
        : field_(f), c_(std::move(coeffs)) {
        normalize();
    }

    static FFPoly zero(PrimeField f) { return FFPoly(f); }
    static FFPoly one(PrimeField f) { return FFPoly(f, {1}); }
    static FFPoly x(PrimeField f) { return FFPoly(f, {0, 1}); }
    /// X - c
    static FFPoly x_minus(PrimeField f, std::uint64_t c) { return FFPoly(f, {f.neg(c), 1}); }

    const PrimeField& field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    std::size_t degree() const { return c_.size() - 1; }
    std::uint64_t leading() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

    std::uint64_t eval(std::uint64_t x) const;

    FFPoly derivative() const;
    FFPoly make_monic() const;

    bool operator==(const FFPoly& o) const { return field_ == o.field_ && c_ == o.c_; }
    bool operator!=(const FFPoly& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        for (auto& v : c_) v %= field_.modulus();
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    PrimeField field_;
    std::vector<std::uint64_t> c_;
};

FFPoly poly_add(const FFPoly& a, const FFPoly& b);
FFPoly poly_sub(const FFPoly& a, const FFPoly& b);
FFPoly poly_mul(const FFPoly& a, const FFPoly& b);
std::pair<FFPoly, FFPoly> poly_divrem(const FFPoly& a, const FFPoly& b);
FFPoly poly_gcd(const FFPoly& a, const FFPoly& b);  // monic gcd
/// a^e mod m (binary exponentiation), used by the modular factorization.
FFPoly poly_powmod_u64(const FFPoly& a, std::uint64_t e, const FFPoly& m);
FFPoly poly_mod(const FFPoly& a, const FFPoly& m);

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
struct PolyXgcd {
    FFPoly g, s, t;
};
PolyXgcd poly_xgcd(const FFPoly& a, const FFPoly& b);

}  // namespace cpoly

#endif
