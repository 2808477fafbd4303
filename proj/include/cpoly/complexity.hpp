#ifndef CPOLY_COMPLEXITY_HPP
#define CPOLY_COMPLEXITY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace cpoly {

/// Leading-constant model for the block-Frobenius reduction at exponent
/// omega with multiplication constant c_omega.
struct ComplexityModel {
    long omega;
    mpq_class c_omega;
    mpq_class k_omega;  // reduction constant
    mpq_class d_omega;  // per-sweep bracket constant
};

/// Exact rational evaluation of the reduction constant for integer omega.
/// omega = 2 is a pole of the closed form.
mpq_class kg3_constant(long omega, const mpq_class& c_omega);

/// Floating evaluation for non-integer omega.
double kg3_constant(double omega, double c_omega);

ComplexityModel make_complexity_model(long omega, const mpq_class& c_omega);

/// Leading constant of the Krylov/Schur-complement characteristic
/// polynomial algorithm at classical multiplication: 2 + 2/3.
mpq_class luk_generic_constant();

/// Fit count ~ c * n^exponent over the samples by least squares on log c
/// with the exponent held fixed. Returns (c, rms relative residual).
std::pair<double, double> fit_leading_constant(
    const std::vector<std::pair<std::size_t, std::uint64_t>>& samples, double exponent);

}  // namespace cpoly

#endif
