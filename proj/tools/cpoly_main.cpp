#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpoly/charpoly_ff.hpp"
#include "cpoly/cia.hpp"
#include "cpoly/errors.hpp"
#include "cpoly/int_layer.hpp"
#include "cpoly/io.hpp"
#include "cpoly/rng.hpp"
#include "cpoly/sparse_bb.hpp"

namespace {

using namespace cpoly;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCiaFail = 2;
constexpr int kExitUsage = 64;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

IntMatrix load_int_matrix(const std::string& path) {
    MatrixFile mf = parse_matrix_file(read_file(path));
    if (mf.format == MatrixFormat::Dense) return std::get<IntMatrix>(mf.payload);
    return std::get<SparseMatrix>(mf.payload).densify();
}

Blackbox load_blackbox(const std::string& path) {
    MatrixFile mf = parse_matrix_file(read_file(path));
    if (mf.format == MatrixFormat::Dense)
        return Blackbox::from_dense(
            std::make_shared<IntMatrix>(std::get<IntMatrix>(std::move(mf.payload))));
    return Blackbox::from_sparse(
        std::make_shared<SparseMatrix>(std::get<SparseMatrix>(std::move(mf.payload))));
}

DenseMatrix require_square_mod(const IntMatrix& m, std::uint64_t p) {
    if (m.rows() != m.cols())
        throw DimensionMismatchError("matrix must be square, got " + std::to_string(m.rows()) +
                                     "x" + std::to_string(m.cols()));
    return m.reduce(PrimeField(p));
}

int run_charpoly_field(const std::string& file, std::uint64_t p, const std::string& algo,
                       std::uint64_t seed) {
    DenseMatrix a = require_square_mod(load_int_matrix(file), p);
    OpCounter ops;
    FFPoly result(a.field());
    if (algo == "luk") {
        result = luk_charpoly(a, seed, ops);
    } else if (algo == "kgb") {
        result = kgb_charpoly(a, ops).charpoly;
    } else {
        auto r = kg3_charpoly(a, ops);
        if (std::holds_alternative<NonGeneric>(r)) {
            // Non-generic input: the sweep hit a rank-deficient pivot
            // block, so fall back to the Krylov algorithm.
            const auto& ng = std::get<NonGeneric>(r);
            std::cerr << "kg3: non-generic input at round " << ng.round << ", sweep " << ng.sweep
                      << "; falling back to luk\n";
            result = luk_charpoly(a, seed, ops);
        } else {
            result = std::get<FFPoly>(r);
        }
    }
    std::cout << poly_line(result) << '\n';
    return kExitOk;
}

int run_charpoly_integer(const std::string& file, const std::string& mode, double epsilon,
                         bool epsilon_given, std::uint64_t seed) {
    if (mode == "cia") {
        Blackbox box = load_blackbox(file);
        if (box.n == 0 || !box.apply)
            throw DimensionMismatchError("matrix must be square and nonempty");
        CiaReport rep = cia_charpoly(box, epsilon, seed);
        if (!rep.success) {
            std::cout << rep.to_text();
            return kExitCiaFail;
        }
        std::cout << poly_line(rep.result) << '\n';
        return kExitOk;
    }
    IntMatrix a = load_int_matrix(file);
    if (a.rows() != a.cols())
        throw DimensionMismatchError("matrix must be square, got " + std::to_string(a.rows()) +
                                     "x" + std::to_string(a.cols()));
    IntPoly result;
    if (mode == "det") {
        result = iluk_det(a, seed);
    } else if (mode == "prob") {
        result = iluk_prob(a, epsilon, seed);
    } else {  // qd
        if (epsilon_given)
            std::cerr << "note: --epsilon is ignored in qd mode (fixed at 2^-50)\n";
        result = iluk_qd(a, seed);
    }
    std::cout << poly_line(result) << '\n';
    return kExitOk;
}

int run_minpoly_field(const std::string& file, std::uint64_t p, std::uint64_t seed) {
    Blackbox box = load_blackbox(file);
    if (box.n == 0 || !box.apply) throw DimensionMismatchError("matrix must be square and nonempty");
    std::cout << poly_line(wiedemann_minpoly_modp(box, p, seed)) << '\n';
    return kExitOk;
}

int run_minpoly_integer(const std::string& file, double eta, std::uint64_t seed) {
    Blackbox box = load_blackbox(file);
    if (box.n == 0 || !box.apply) throw DimensionMismatchError("matrix must be square and nonempty");
    std::cout << poly_line(integer_minpoly(box, eta, seed)) << '\n';
    return kExitOk;
}

DenseMatrix random_matrix(const PrimeField& f, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    DenseMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rng.below(f.modulus());
    return m;
}

int run_bench(const std::string& algo, const std::vector<std::size_t>& sizes, std::uint64_t p,
              std::uint64_t seed, const std::string& csv_path) {
    PrimeField f(p);
    std::ostringstream out;
    out << "algo,n,muls,adds,divs,total\n";
    for (std::size_t n : sizes) {
        const std::uint64_t s = substream(seed, "bench") ^ splitmix64(n);
        OpCounter ops;
        if (algo == "matmul") {
            DenseMatrix a = random_matrix(f, n, s);
            DenseMatrix b = random_matrix(f, n, splitmix64(s));
            (void)matmul(a, b, ops);
        } else {
            DenseMatrix a = random_matrix(f, n, s);
            if (algo == "luk") {
                (void)luk_charpoly(a, splitmix64(s), ops);
            } else if (algo == "kgb") {
                (void)kgb_charpoly(a, ops);
            } else {
                auto r = kg3_charpoly(a, ops);
                if (std::holds_alternative<NonGeneric>(r))
                    throw Error("kg3 benchmark hit a non-generic matrix at n = " +
                                std::to_string(n) + "; rerun with another --seed");
            }
        }
        out << algo << ',' << n << ',' << ops.muls << ',' << ops.adds << ',' << ops.divs << ','
            << ops.total() << '\n';
    }
    if (csv_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream file(csv_path);
        if (!file) throw Error("cannot write file: " + csv_path);
        file << out.str();
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact characteristic and minimal polynomials over word-size prime fields "
                 "and over the integers"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    // charpoly
    auto* cp = app.add_subcommand("charpoly", "Characteristic polynomial of a square matrix");
    std::uint64_t cp_field = 0;
    bool cp_integer = false;
    std::string cp_algo = "luk", cp_mode = "det", cp_file;
    double cp_epsilon = std::ldexp(1.0, -20);
    std::uint64_t cp_seed = 0;
    auto* cp_field_opt = cp->add_option("--field", cp_field, "Prime modulus p (3 <= p < 2^26)");
    auto* cp_int_flag = cp->add_flag("--integer", cp_integer, "Compute over the integers");
    cp->add_option("--algo", cp_algo, "Field algorithm")
        ->check(CLI::IsMember({"luk", "kgb", "kg3"}))
        ->needs(cp_field_opt);
    auto* cp_mode_opt = cp->add_option("--mode", cp_mode, "Integer driver")
                            ->check(CLI::IsMember({"det", "prob", "qd", "cia"}))
                            ->needs(cp_int_flag);
    auto* cp_eps_opt = cp->add_option("--epsilon", cp_epsilon, "Failure probability bound")
                           ->check(CLI::Range(0.0, 0.5))
                           ->needs(cp_int_flag);
    cp->add_option("--seed", cp_seed, "Random seed");
    cp->add_option("FILE", cp_file, "Matrix file (dense or SMS)")->required();
    cp_field_opt->excludes(cp_int_flag);

    // minpoly
    auto* mp = app.add_subcommand("minpoly", "Minimal polynomial of a square matrix");
    std::uint64_t mp_field = 0;
    bool mp_integer = false;
    double mp_eta = std::ldexp(1.0, -20);
    std::uint64_t mp_seed = 0;
    std::string mp_file;
    auto* mp_field_opt = mp->add_option("--field", mp_field, "Prime modulus p (3 <= p < 2^26)");
    auto* mp_int_flag = mp->add_flag("--integer", mp_integer, "Compute over the integers");
    mp->add_option("--eta", mp_eta, "Per-stage failure probability bound")
        ->check(CLI::Range(0.0, 0.5))
        ->needs(mp_int_flag);
    mp->add_option("--seed", mp_seed, "Random seed");
    mp->add_option("FILE", mp_file, "Matrix file (dense or SMS)")->required();
    mp_field_opt->excludes(mp_int_flag);

    // bench
    auto* bn = app.add_subcommand("bench", "Field-operation count benchmark");
    std::string bn_algo, bn_csv;
    std::vector<std::size_t> bn_sizes;
    std::uint64_t bn_field = 0, bn_seed = 0;
    bn->add_option("--algo", bn_algo, "Algorithm to measure")
        ->check(CLI::IsMember({"luk", "kgb", "kg3", "matmul"}))
        ->required();
    bn->add_option("--sizes", bn_sizes, "Comma-separated matrix sizes")
        ->delimiter(',')
        ->required();
    bn->add_option("--field", bn_field, "Prime modulus p (3 <= p < 2^26)")->required();
    bn->add_option("--seed", bn_seed, "Random seed");
    bn->add_option("--csv", bn_csv, "Write the CSV to this path instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cp->parsed()) {
            if (cp_integer)
                return run_charpoly_integer(cp_file, cp_mode, cp_epsilon,
                                            cp_eps_opt->count() > 0, cp_seed);
            if (cp_field_opt->count() == 0) {
                std::cerr << "charpoly requires either --field or --integer\n";
                return kExitUsage;
            }
            return run_charpoly_field(cp_file, cp_field, cp_algo, cp_seed);
        }
        if (mp->parsed()) {
            if (mp_integer) return run_minpoly_integer(mp_file, mp_eta, mp_seed);
            if (mp_field_opt->count() == 0) {
                std::cerr << "minpoly requires either --field or --integer\n";
                return kExitUsage;
            }
            return run_minpoly_field(mp_file, mp_field, mp_seed);
        }
        return run_bench(bn_algo, bn_sizes, bn_field, bn_seed, bn_csv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
}
