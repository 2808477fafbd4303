#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "cpoly/charpoly_ff.hpp"
#include "cpoly/dense.hpp"
#include "cpoly/errors.hpp"
#include "cpoly/ff.hpp"
#include "cpoly/rng.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cpoly;
using namespace cpoly::testing;

TEST_CASE("field construction") {
    CHECK(make_field(65521).modulus() == 65521);
    CHECK(make_field(3).modulus() == 3);
    CHECK(make_field((1u << 26) - 5).modulus() == (1u << 26) - 5);  // largest prime below 2^26
    CHECK_THROWS_AS(make_field(65536), NotPrimeError);
    CHECK_THROWS_AS(make_field(2), NotPrimeError);  // modulus must exceed 2
    CHECK_THROWS_AS(make_field(1ull << 26), TooLargeError);
    CHECK_THROWS_AS(make_field((1ull << 26) + 15), TooLargeError);
}

TEST_CASE("field axioms, exhaustive for small p and sampled for large") {
    for (std::uint64_t p : {5ull, 101ull, 257ull}) {
        PrimeField f(p);
        for (std::uint64_t a = 0; a < p; ++a) {
            for (std::uint64_t b = 0; b < p; ++b) {
                const std::uint64_t c = (a * 7 + b * 13 + 1) % p;
                CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            }
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        }
    }
    PrimeField f(65521);
    Rng rng(1);
    for (int t = 0; t < 2000; ++t) {
        const std::uint64_t a = rng.below(65521), b = rng.below(65521), c = rng.below(65521);
        CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
    }
}

TEST_CASE("delayed reduction budget") {
    PrimeField f(65521);
    CHECK(f.max_unreduced_terms() >= 1);
    // budget * (p-1)^2 must not overflow a signed 64-bit accumulator
    const unsigned __int128 prod =
        static_cast<unsigned __int128>(f.max_unreduced_terms()) * (65520ull * 65520ull);
    CHECK(prod <= static_cast<unsigned __int128>(~0ull >> 1));
}

TEST_CASE("poly_mul examples") {
    PrimeField f5(5);
    FFPoly xm1 = FFPoly::x_minus(f5, 1);
    CHECK(poly_mul(xm1, xm1) == FFPoly(f5, {1, 3, 1}));  // X^2 - 2X + 1 mod 5

    PrimeField f101(101);
    FFPoly a(f101, {4, 9, 1, 7});
    CHECK(poly_mul(a, FFPoly::one(f101)) == a);

    // (X-2)^4 (X+3) against the integer synthetic-division oracle, reduced
    IntPoly oracle = IntPoly::one();
    for (int t = 0; t < 4; ++t) oracle = ip_mul(oracle, IntPoly::x_minus(2));
    oracle = ip_mul(oracle, IntPoly::x_minus(-3));
    FFPoly prod = FFPoly::one(f101);
    for (int t = 0; t < 4; ++t) prod = poly_mul(prod, FFPoly::x_minus(f101, 2));
    prod = poly_mul(prod, FFPoly(f101, {3, 1}));
    CHECK(prod == oracle.reduce(f101));
    CHECK(prod == paper_charpoly().reduce(f101));
}

TEST_CASE("poly_divrem examples") {
    PrimeField f7(7);
    auto [q1, r1] = poly_divrem(FFPoly(f7, {6, 0, 1}), FFPoly::x_minus(f7, 1));  // X^2-1
    CHECK(q1 == FFPoly(f7, {1, 1}));
    CHECK(r1.is_zero());

    auto [q2, r2] = poly_divrem(FFPoly::x(f7), FFPoly(f7, {0, 0, 1}));
    CHECK(q2.is_zero());
    CHECK(r2 == FFPoly::x(f7));

    PrimeField f101(101);
    auto [q3, r3] = poly_divrem(paper_charpoly().reduce(f101), FFPoly::x_minus(f101, 2));
    // X^4 - 3X^3 - 6X^2 + 28X - 24 from the integer synthetic division oracle
    IntPoly qo({mpz_class(-24), mpz_class(28), mpz_class(-6), mpz_class(-3), mpz_class(1)});
    CHECK(q3 == qo.reduce(f101));
    CHECK(r3.is_zero());

    CHECK_THROWS_AS(poly_divrem(FFPoly::x(f7), FFPoly::zero(f7)), DivisionByZeroPolyError);
}

TEST_CASE("poly_divrem round-trip on 1000 random pairs") {
    for (std::uint64_t p : {101ull, 65521ull}) {
        PrimeField f(p);
        Rng rng(p);
        for (int t = 0; t < 500; ++t) {
            std::vector<std::uint64_t> ac(1 + rng.below(9)), bc(1 + rng.below(6));
            for (auto& v : ac) v = rng.below(p);
            for (auto& v : bc) v = rng.below(p);
            FFPoly a(f, ac), b(f, bc);
            if (b.is_zero()) b = FFPoly::one(f);
            auto [q, r] = poly_divrem(a, b);
            CHECK(poly_add(poly_mul(q, b), r) == a);
            if (!r.is_zero()) CHECK(r.degree() < b.degree());
        }
    }
}

TEST_CASE("polynomial gcd and xgcd") {
    PrimeField f(101);
    FFPoly a = poly_mul(FFPoly::x_minus(f, 2), FFPoly::x_minus(f, 5));
    FFPoly b = poly_mul(FFPoly::x_minus(f, 2), FFPoly::x_minus(f, 7));
    CHECK(poly_gcd(a, b) == FFPoly::x_minus(f, 2));
    auto x = poly_xgcd(a, b);
    CHECK(poly_add(poly_mul(x.s, a), poly_mul(x.t, b)) == x.g);
}

TEST_CASE("apply_poly_to_vector") {
    PrimeField f7(7);
    DenseMatrix i3 = DenseMatrix::identity(f7, 3);
    std::vector<std::uint64_t> v{3, 1, 4};
    auto z = apply_poly_to_vector(FFPoly::x_minus(f7, 1), i3, v);
    CHECK(z == std::vector<std::uint64_t>{0, 0, 0});
    CHECK(apply_poly_to_vector(FFPoly::one(f7), i3, v) == v);

    PrimeField f101(101);
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        DenseMatrix a = random_dense(f101, 5, 5, rng.next());
        std::vector<std::uint64_t> w(5);
        for (auto& x : w) x = rng.below(101);
        if (w == std::vector<std::uint64_t>(5, 0)) w[0] = 1;
        OpCounter c;
        auto mp = minpoly_seq(a, w, c);
        auto res = apply_poly_to_vector(mp.minpoly, a, w);
        CHECK(res == std::vector<std::uint64_t>(5, 0));
    }
}

TEST_CASE("polynomial text form") {
    PrimeField f(101);
    CHECK(FFPoly(f, {95, 1, 1}).to_string() == "2 95 1 1");
}
