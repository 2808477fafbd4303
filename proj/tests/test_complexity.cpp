#include <cmath>
#include <cstdint>
#include <vector>

#include "cpoly/charpoly_ff.hpp"
#include "cpoly/complexity.hpp"
#include "cpoly/errors.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cpoly;
using namespace cpoly::testing;

namespace {

// Independent re-evaluation of the seven-term bracket at integer omega,
// typed from scratch against the closed form, with t = 2^(omega-2).
mpq_class bracket_oracle(long omega, const mpq_class& c_omega) {
    mpz_class tz;
    mpz_ui_pow_ui(tz.get_mpz_t(), 2, static_cast<unsigned long>(omega - 2));
    const mpq_class t(tz);
    const mpq_class a = t - 1;          // 2^(omega-2) - 1
    const mpq_class b = 2 * t - 1;      // 2^(omega-1) - 1
    const mpq_class d = 4 * t - 1;      // 2^omega - 1
    mpq_class sum = -t / (2 * a * b * d);
    sum += mpq_class(-1) / d;
    sum += 1 / (a * b);
    sum += mpq_class(-3) / b;
    sum += 2 / a;
    sum += 1 / (a * d);
    sum += t / (2 * a * b * b);
    return c_omega * sum;
}

}  // namespace

TEST_CASE("kg3_constant exact values") {
    CHECK(kg3_constant(3, mpq_class(2)) == mpq_class(176, 63));
    CHECK(kg3_constant(3, mpq_class(0)) == 0);
    CHECK(kg3_constant(3, mpq_class(2)) == bracket_oracle(3, mpq_class(2)));
    CHECK(kg3_constant(4, mpq_class(5)) == bracket_oracle(4, mpq_class(5)));
    CHECK_THROWS_AS(kg3_constant(2, mpq_class(2)), PoleAtOmegaTwoError);
}

TEST_CASE("kg3_constant floating evaluation is positive on (2,3] and smooth away from the pole") {
    const double at3 = kg3_constant(3.0, 2.0);
    CHECK(std::abs(at3 - 176.0 / 63.0) < 1e-12);
    // the constant diverges as w -> 2, so near the pole only check sign
    for (double w = 2.05; w < 2.7; w += 0.05) CHECK(kg3_constant(w, 2.0) > 0);
    double prev = kg3_constant(2.7, 2.0);
    CHECK(prev > 0);
    for (double w = 2.75; w <= 3.0001; w += 0.05) {
        const double v = kg3_constant(w, 2.0);
        CHECK(v > 0);
        CHECK(std::abs(v - prev) < 1.5);  // no jumps on a 0.05 grid
        prev = v;
    }
}

TEST_CASE("luk_generic_constant") {
    CHECK(luk_generic_constant() == mpq_class(8, 3));
    CHECK(kg3_constant(3, mpq_class(2)) > luk_generic_constant());
    CHECK(std::abs(mpq_class(8, 3).get_d() - 2.6667) < 1e-4);
}

TEST_CASE("complexity model fields") {
    auto m = make_complexity_model(3, mpq_class(2));
    CHECK(m.k_omega == mpq_class(176, 63));
    CHECK(m.omega == 3);
}

TEST_CASE("fit_leading_constant") {
    std::vector<std::pair<std::size_t, std::uint64_t>> exact;
    for (std::size_t n : {64, 128, 256}) exact.emplace_back(n, 2 * n * n * n);
    auto [c1, r1] = fit_leading_constant(exact, 3.0);
    CHECK(std::abs(c1 - 2.0) < 1e-9);
    CHECK(r1 < 1e-9);

    // measured matmul counts follow 2n^3 - n^2
    std::vector<std::pair<std::size_t, std::uint64_t>> mm;
    PrimeField f(65521);
    for (std::size_t n : {64, 128, 256}) {
        OpCounter c;
        (void)matmul(random_dense(f, n, n, n), random_dense(f, n, n, n + 1), c);
        mm.emplace_back(n, c.total());
    }
    auto [c2, r2] = fit_leading_constant(mm, 3.0);
    CHECK(c2 >= 1.9);
    CHECK(c2 <= 2.0);

    CHECK_THROWS_AS(fit_leading_constant({{64, 1}, {64, 2}}, 3.0), InsufficientSamplesError);
}
