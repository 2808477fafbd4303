#include <cmath>
#include <vector>

#include "cpoly/charpoly_ff.hpp"
#include "cpoly/errors.hpp"
#include "cpoly/int_layer.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cpoly;
using namespace cpoly::testing;

TEST_CASE("integer polynomial arithmetic basics") {
    IntPoly a({mpz_class(-6), mpz_class(1), mpz_class(1)});  // X^2 + X - 6
    CHECK(ip_mul(IntPoly::x_minus(2), IntPoly::x_minus(-3)) == a);
    CHECK(a.eval(2) == 0);
    CHECK(a.eval(-3) == 0);
    CHECK(a.to_string() == "2 -6 1 1");
    bool ok = false;
    CHECK(ip_div_exact(a, IntPoly::x_minus(2), ok) == IntPoly::x_minus(-3));
    CHECK(ok);
    (void)ip_div_exact(a, IntPoly::x_minus(1), ok);
    CHECK_FALSE(ok);
    CHECK(ip_gcd(a, IntPoly::x_minus(2)) == IntPoly::x_minus(2));
    CHECK(IntPoly({mpz_class(-4), mpz_class(-6)}).content() == -2);
}

TEST_CASE("coefficient bit bound reproduces the 5x5 numbers") {
    // n = 5, entries of absolute value 1: raw bound 2^9.972 = 1004.4, 10 bits
    CHECK(coeff_bit_bound(5, 1) == 10);
    const double magnitude = std::exp2(coeff_bound_log2(5, 0.0));
    CHECK(magnitude > 1004.0);
    CHECK(magnitude < 1005.0);

    // oracle coefficient 80 exceeds the Hadamard bound floor(5^2.5) = 55.9 -> 56
    const double hadamard = std::pow(5.0, 2.5);
    CHECK(hadamard < 56.0);
    CHECK(80.0 > hadamard);
    CHECK(80.0 < magnitude);

    // n=4, B=2: ceil(2 * (2 + 2 + 1.6669)) = 12
    CHECK(coeff_bit_bound(4, 2) == 12);
}

TEST_CASE("coefficient bound holds on random matrices") {
    Rng rng(51);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 2 + rng.below(5);
        IntMatrix a = random_int_matrix(n, 10, rng.next());
        const std::size_t bound = coeff_bit_bound(n, a.entry_bound());
        IntPoly p = cofactor_charpoly(a);
        mpz_class cap = 1;
        cap <<= bound;
        for (const auto& c : p.coeffs()) CHECK(abs(c) < cap);
    }
}

TEST_CASE("symmetric-range CRT accumulator") {
    PrimeField f5(5), f7(7);
    CrtAccumulator acc;
    acc.combine(5, FFPoly(f5, {2}));
    acc.combine(7, FFPoly(f7, {3}));
    CHECK(acc.to_poly().coeff(0) == 17);  // 17 mod 35
    CHECK(acc.modulus() == 35);

    CrtAccumulator acc2;
    acc2.combine(5, FFPoly(f5, {23 % 5}));
    acc2.combine(7, FFPoly(f7, {23 % 7}));
    CHECK(acc2.to_poly().coeff(0) == -12);  // symmetric representative of 23 mod 35

    // 5x5 sign-pattern matrix residues at 101 and 103: the coefficient -80
    // lies outside the symmetric range of 101 alone, so its representative
    // changes when 103 is folded in and the streak resets to 0
    IntMatrix a = paper_matrix();
    CrtAccumulator acc3;
    OpCounter c;
    for (std::uint64_t p : {101ull, 103ull}) {
        PrimeField f(p);
        acc3.combine(p, luk_charpoly(a.reduce(f), 0, c));
    }
    CHECK(acc3.to_poly() == paper_charpoly());
    CHECK(acc3.stable_streak() == 0);

    CHECK_THROWS_AS(acc3.combine(107, FFPoly(PrimeField(107), {1, 1})), DegreeMismatchError);
}

TEST_CASE("prime sampler") {
    PrimeSampler s(5, 7, 64.0);
    std::vector<std::uint64_t> seen;
    for (int t = 0; t < 50; ++t) {
        const std::uint64_t p = s.next();
        CHECK(p >= (1ull << s.exponent()));
        CHECK(p < (1ull << (s.exponent() + 1)));
        for (auto q : seen) CHECK(p != q);
        seen.push_back(p);
    }
    CHECK(s.used() == 50);
}

TEST_CASE("iluk_det examples") {
    CHECK(iluk_det(paper_matrix()) == paper_charpoly());

    IntMatrix one(1, 1);
    one.at(0, 0) = 7;
    CHECK(iluk_det(one) == IntPoly::x_minus(7));

    Rng rng(57);
    for (int t = 0; t < 25; ++t) {
        IntMatrix a = random_int_matrix(4, 9, rng.next());
        CHECK(iluk_det(a, rng.next()) == cofactor_charpoly(a));
    }
}

TEST_CASE("reconstruction reduces back to the per-prime residues") {
    Rng rng(59);
    OpCounter c;
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + rng.below(7);
        IntMatrix a = random_int_matrix(n, 30, rng.next());
        IntPoly p = iluk_det(a, rng.next());
        for (std::uint64_t q : {101ull, 65521ull, 1048583ull}) {
            PrimeField f(q);
            CHECK(p.reduce(f) == luk_charpoly(a.reduce(f), t, c));
        }
    }
}

TEST_CASE("early-termination confidence formula") {
    // large-scale worked setting: log_l(U) with l = 2^19 over a pool of
    // 38658 primes gives single-prime failure 4458.7/38658 = 0.1153
    const double log2_u = 4458.7 * 19.0;
    const double fail = 1.0 - et_confidence(0.0, log2_u, 19.0, 38658);
    CHECK(std::abs(fail - 0.1153) < 2e-4);

    CHECK(et_confidence(100.0, 90.0, 19.0, 1000) == 1.0);  // M >= U

    const double f2 = 1.0 - et_confidence(60.0, 100.0, 19.0, 38658);
    CHECK(std::abs(f2 - (40.0 / 19.0) / 38658.0) < 1e-9);
}

TEST_CASE("quasi-deterministic extra check count") {
    const double fail = (4458.7 * 19.0 / 19.0) / 38658.0;  // = 0.11533...
    CHECK(qd_extra_checks(fail) == 17);
    CHECK(qd_extra_checks(0.5) == 50);
}

TEST_CASE("iluk_prob matches iluk_det and never uses more primes") {
    const double eps = std::ldexp(1.0, -20);

    std::size_t det_primes = 0, prob_primes = 0;
    IntPoly d = iluk_det(paper_matrix(), 3, &det_primes);
    IntPoly p = iluk_prob(paper_matrix(), eps, 3, &prob_primes);
    CHECK(d == p);
    CHECK(d == paper_charpoly());
    CHECK(prob_primes <= det_primes);

    IntMatrix one(1, 1);
    one.at(0, 0) = 7;
    CHECK(iluk_prob(one, eps) == IntPoly::x_minus(7));

    Rng rng(61);
    for (int t = 0; t < 50; ++t) {
        IntMatrix a = random_int_matrix(5, 9, rng.next());
        const std::uint64_t seed = rng.next();
        std::size_t dp = 0, pp = 0;
        IntPoly det = iluk_det(a, seed, &dp);
        IntPoly prob = iluk_prob(a, eps, seed, &pp);
        CHECK(det == prob);
        CHECK(pp <= dp);
    }
}

TEST_CASE("iluk_qd") {
    CHECK(iluk_qd(paper_matrix()) == paper_charpoly());
    IntMatrix i3(3, 3);
    for (int i = 0; i < 3; ++i) i3.at(i, i) = 1;
    CHECK(iluk_qd(i3) ==
          IntPoly({mpz_class(-1), mpz_class(3), mpz_class(-3), mpz_class(1)}));
}

TEST_CASE("trace and determinant consistency of integer charpolys") {
    Rng rng(67);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + rng.below(5);
        IntMatrix a = random_int_matrix(n, 9, rng.next());
        IntPoly p = iluk_det(a, rng.next());
        CHECK(p.coeff(n - 1) == -a.trace());
        IntPoly oracle = cofactor_charpoly(a);
        CHECK(p.coeff(0) == oracle.coeff(0));  // (-1)^n det(A)
        CHECK(p.lc() == 1);
        CHECK(p.degree() == n);
    }
}
