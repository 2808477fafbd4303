#ifndef CPOLY_INT_LAYER_HPP
#define CPOLY_INT_LAYER_HPP

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "cpoly/dense.hpp"
#include "cpoly/rng.hpp"

namespace cpoly {

class IntMatrix {
public:
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    mpz_class& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    /// Max absolute entry value.
    mpz_class entry_bound() const;
    mpz_class trace() const;

    DenseMatrix reduce(const PrimeField& f) const;

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<mpz_class> a_;
};

/// Dense integer polynomial, ascending coefficients, highest index nonzero
/// unless zero.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static IntPoly zero() { return IntPoly(); }
    static IntPoly one() { return IntPoly({mpz_class(1)}); }
    static IntPoly x_minus(const mpz_class& a) { return IntPoly({-a, mpz_class(1)}); }

    bool is_zero() const { return c_.empty(); }
    std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
    const mpz_class& lc() const { return c_.back(); }
    mpz_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    FFPoly reduce(const PrimeField& f) const;
    IntPoly derivative() const;
    mpz_class content() const;  // gcd of coefficients, sign of lc
    IntPoly primitive_part() const;
    mpz_class eval(const mpz_class& x) const;
    std::string to_string() const;

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<mpz_class> c_;
};

IntPoly ip_add(const IntPoly& a, const IntPoly& b);
IntPoly ip_sub(const IntPoly& a, const IntPoly& b);
IntPoly ip_mul(const IntPoly& a, const IntPoly& b);
IntPoly ip_scale(const IntPoly& a, const mpz_class& s);
/// Exact division; sets ok to false if the division is not exact.
IntPoly ip_div_exact(const IntPoly& a, const IntPoly& b, bool& ok);
/// Gcd of nonzero polynomials via the primitive remainder sequence, made
/// primitive with positive leading coefficient.
IntPoly ip_gcd(const IntPoly& a, const IntPoly& b);

/// Bit length bound for any characteristic polynomial coefficient of an
/// n x n integer matrix with entries bounded by B:
/// ceil((n/2) * (log2 n + 2 log2 max(B,1) + 1.6669)).
std::size_t coeff_bit_bound(std::size_t n, const mpz_class& b);
/// Same bound, unrounded, in the log2 domain.
double coeff_bound_log2(std::size_t n, double log2_b);

double log2_mpz(const mpz_class& x);

/// Primes drawn without replacement from the sieved pool in
/// [2^m, 2^(m+1)), m = floor(25.5 - log2(n)/2), lowered until the pool can
/// cover min_product_bits.
class PrimeSampler {
public:
    PrimeSampler(std::size_t n, std::uint64_t seed, double min_product_bits);

    std::uint64_t next();  // PrimePoolExhausted when the pool runs dry
    std::size_t pool_size() const { return pool_->size(); }
    std::size_t used() const { return used_; }
    int exponent() const { return m_; }
    double log2_lower_bound() const { return static_cast<double>(m_); }

private:
    std::shared_ptr<const std::vector<std::uint32_t>> pool_;
    std::unordered_map<std::size_t, std::uint32_t> swapped_;
    std::size_t used_ = 0;
    int m_;
    Rng rng_;
};

/// Symmetric-range Chinese remainder accumulator: representatives in
/// (-M/2, M/2].
class CrtAccumulator {
public:
    void combine(std::uint64_t p, const FFPoly& residues);

    const mpz_class& modulus() const { return m_; }
    std::size_t stable_streak() const { return streak_; }
    std::size_t primes_used() const { return count_; }
    bool started() const { return count_ > 0; }
    IntPoly to_poly() const { return IntPoly(c_); }

private:
    mpz_class m_ = 1;
    std::vector<mpz_class> c_;
    std::size_t streak_ = 0;
    std::size_t count_ = 0;
};

/// Lower bound on the probability that the stabilized reconstruction is
/// final, all quantities in the log2 domain; 1 when the modulus already
/// exceeds the coefficient bound.
double et_confidence(double log2_m, double log2_u, double log2_l, std::size_t pool_size);

/// Number of extra stable checks needed to push a compounded per-check
/// failure bound below 2^-50. Requires 0 < failure < 1.
std::size_t qd_extra_checks(double failure);

/// Deterministic integer characteristic polynomial: Chinese remaindering
/// of per-prime residues until the modulus clears the coefficient bound.
/// primes_used, when non-null, receives the number of combined primes.
IntPoly iluk_det(const IntMatrix& a, std::uint64_t seed = 0, std::size_t* primes_used = nullptr);

/// Early-terminated variant: stops once consecutive stable checks compound
/// the failure bound below epsilon; never uses more primes than iluk_det.
IntPoly iluk_prob(const IntMatrix& a, double epsilon, std::uint64_t seed = 0,
                  std::size_t* primes_used = nullptr);

/// iluk_prob at the quasi-deterministic failure target 2^-50.
IntPoly iluk_qd(const IntMatrix& a, std::uint64_t seed = 0, std::size_t* primes_used = nullptr);

}  // namespace cpoly

#endif
