#include "cpoly/complexity.hpp"

#include <algorithm>
#include <cmath>

#include "cpoly/errors.hpp"

namespace cpoly {

namespace {

mpq_class pow2q(long e) {
    mpq_class r;
    if (e >= 0) {
        mpz_ui_pow_ui(r.get_num_mpz_t(), 2, static_cast<unsigned long>(e));
    } else {
        mpz_ui_pow_ui(r.get_den_mpz_t(), 2, static_cast<unsigned long>(-e));
    }
    r.canonicalize();
    return r;
}

mpq_class bracket(long omega) {
    const mpq_class a = pow2q(omega - 2) - 1;  // 2^(w-2) - 1
    const mpq_class b = pow2q(omega - 1) - 1;  // 2^(w-1) - 1
    const mpq_class d = pow2q(omega) - 1;      // 2^w - 1
    const mpq_class t = pow2q(omega - 2);
    return -t / (2 * a * b * d) - 1 / d + 1 / (a * b) - 3 / b + 2 / a + 1 / (a * d) +
           t / (2 * a * b * b);
}

}  // namespace

mpq_class kg3_constant(long omega, const mpq_class& c_omega) {
    if (omega == 2) throw PoleAtOmegaTwoError();
    return c_omega * bracket(omega);
}

double kg3_constant(double omega, double c_omega) {
    if (omega == 2.0) throw PoleAtOmegaTwoError();
    const double a = std::exp2(omega - 2) - 1;
    const double b = std::exp2(omega - 1) - 1;
    const double d = std::exp2(omega) - 1;
    const double t = std::exp2(omega - 2);
    return c_omega * (-t / (2 * a * b * d) - 1 / d + 1 / (a * b) - 3 / b + 2 / a + 1 / (a * d) +
                      t / (2 * a * b * b));
}

ComplexityModel make_complexity_model(long omega, const mpq_class& c_omega) {
    if (omega == 2) throw PoleAtOmegaTwoError();
    const mpq_class a = pow2q(omega - 2) - 1;
    const mpq_class b = pow2q(omega - 1) - 1;
    const mpq_class d = (pow2q(omega - 3) + pow2q(omega - 1) - 1) / (a * b) - 1;
    return ComplexityModel{omega, c_omega, kg3_constant(omega, c_omega), d};
}

mpq_class luk_generic_constant() { return mpq_class(8, 3); }

std::pair<double, double> fit_leading_constant(
    const std::vector<std::pair<std::size_t, std::uint64_t>>& samples, double exponent) {
    std::vector<std::size_t> ns;
    for (const auto& [n, cnt] : samples)
        if (std::find(ns.begin(), ns.end(), n) == ns.end()) ns.push_back(n);
    if (ns.size() < 3) throw InsufficientSamplesError();

    double acc = 0;
    for (const auto& [n, cnt] : samples)
        acc += std::log(static_cast<double>(cnt)) - exponent * std::log(static_cast<double>(n));
    const double c = std::exp(acc / static_cast<double>(samples.size()));

    double res = 0;
    for (const auto& [n, cnt] : samples) {
        const double pred = c * std::pow(static_cast<double>(n), exponent);
        const double rel = static_cast<double>(cnt) / pred - 1.0;
        res += rel * rel;
    }
    return {c, std::sqrt(res / static_cast<double>(samples.size()))};
}

}  // namespace cpoly
