// Compares the OpenMP matrix-multiply kernel against the serial reference:
// verifies they agree entry-for-entry, then reports wall-clock times and
// speedup per size.
#include <chrono>
#include <cstdint>
#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "cpoly/dense.hpp"
#include "cpoly/errors.hpp"
#include "cpoly/rng.hpp"

namespace {

using namespace cpoly;
using Clock = std::chrono::steady_clock;

DenseMatrix random_matrix(const PrimeField& f, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    DenseMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rng.below(f.modulus());
    return m;
}

template <typename F>
double time_best_of(unsigned reps, F&& body) {
    double best = 1e300;
    for (unsigned r = 0; r < reps; ++r) {
        auto t0 = Clock::now();
        body();
        auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parallel vs serial matrix-multiply kernel benchmark"};
    std::vector<std::size_t> sizes{128, 256, 512};
    std::uint64_t p = 65521, seed = 0;
    unsigned reps = 3;
    app.add_option("--sizes", sizes, "Matrix sizes")->delimiter(',');
    app.add_option("--field", p, "Prime modulus");
    app.add_option("--seed", seed, "Random seed");
    app.add_option("--reps", reps, "Repetitions per size (best-of)")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    try {
        PrimeField f(p);
        std::cout << "n,parallel_s,serial_s,speedup,match\n";
        for (std::size_t n : sizes) {
            const std::uint64_t s = substream(seed, "kernel-bench") ^ splitmix64(n);
            DenseMatrix a = random_matrix(f, n, s);
            DenseMatrix b = random_matrix(f, n, splitmix64(s));
            OpCounter ops;
            DenseMatrix cp = matmul(a, b, ops);
            DenseMatrix cs = matmul_serial(a, b, ops);
            const bool match = cp == cs;
            const double tp = time_best_of(reps, [&] { (void)matmul(a, b, ops); });
            const double ts = time_best_of(reps, [&] { (void)matmul_serial(a, b, ops); });
            std::cout << n << ',' << tp << ',' << ts << ',' << ts / tp << ','
                      << (match ? "yes" : "NO") << '\n';
            if (!match) return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
