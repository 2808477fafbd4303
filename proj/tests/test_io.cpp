#include <string>

#include "cpoly/errors.hpp"
#include "cpoly/io.hpp"
#include "cpoly/rng.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cpoly;
using namespace cpoly::testing;

TEST_CASE("parse_dense examples") {
    IntMatrix one = parse_dense("1 1\n7\n");
    CHECK(one.rows() == 1);
    CHECK(one.at(0, 0) == 7);

    IntMatrix p = parse_dense(serialize_dense(paper_matrix()));
    CHECK(p == paper_matrix());
    CHECK(p.entry_bound() == 1);

    CHECK_THROWS_AS(parse_dense("2 2\n1 2\n3\n"), ParseError);
    try {
        parse_dense("2 2\n1 2\n3\n");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }

    CHECK_THROWS_AS(parse_dense(""), ParseError);
    CHECK_THROWS_AS(parse_dense("2\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_dense("1 1\nx\n"), ParseError);
    CHECK_THROWS_AS(parse_dense("1 1\n7\n8\n"), ParseError);
    CHECK_THROWS_AS(parse_dense("2 2\n1 2\n"), ParseError);
}

TEST_CASE("parse_sms examples") {
    SparseMatrix s = parse_sms("2 2 M\n1 1 5\n0 0 0\n");
    CHECK(s.nnz() == 1);
    CHECK(s.triplets()[0].row == 0);
    CHECK(s.triplets()[0].col == 0);
    CHECK(s.triplets()[0].value == 5);

    CHECK_THROWS_AS(parse_sms("2 2 M\n1 1 5\n1 1 6\n0 0 0\n"), DuplicateEntryError);
    CHECK_THROWS_AS(parse_sms("2 2 M\n1 1 5\n"), MissingTerminatorError);
    CHECK_THROWS_AS(parse_sms("2 2 M\n3 1 5\n0 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_sms("2 2 M\n1 1 0\n0 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_sms("2 2 M\n0 0 0\n1 1 5\n"), ParseError);
    CHECK_THROWS_AS(parse_sms("2 2\n1 1 5\n0 0 0\n"), ParseError);

    // 3x3 permutation matrix: apply matches the densified oracle
    SparseMatrix perm = parse_sms("3 3 M\n1 2 1\n2 3 1\n3 1 1\n0 0 0\n");
    PrimeField f(101);
    std::vector<std::uint64_t> e1{1, 0, 0};
    OpCounter c;
    CHECK(perm.apply_mod(f, e1) == matvec(perm.densify_mod(f), e1, c));
}

TEST_CASE("round-trip identity on random matrices") {
    Rng rng(103);
    for (int t = 0; t < 50; ++t) {
        const std::size_t rows = 1 + rng.below(8), cols = 1 + rng.below(8);
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m.at(i, j) = static_cast<long>(rng.below(2001)) - 1000;
        CHECK(parse_dense(serialize_dense(m)) == m);
    }
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + rng.below(10);
        std::vector<Triplet> triplets;
        for (std::size_t i = 0; i < n; ++i)
            if (rng.below(2)) triplets.push_back(Triplet{i, rng.below(n), mpz_class(1 + rng.below(9))});
        SparseMatrix s(n, n, triplets);
        SparseMatrix back = parse_sms(serialize_sms(s));
        CHECK(back.rows() == s.rows());
        CHECK(back.nnz() == s.nnz());
        CHECK(back.densify() == s.densify());
    }
}

TEST_CASE("format detection") {
    MatrixFile d = parse_matrix_file("1 1\n7\n");
    CHECK(d.format == MatrixFormat::Dense);
    MatrixFile s = parse_matrix_file("2 2 M\n1 1 5\n0 0 0\n");
    CHECK(s.format == MatrixFormat::Sms);
    CHECK_THROWS_AS(parse_matrix_file(""), ParseError);
}

TEST_CASE("polynomial output line") {
    CHECK(poly_line(paper_charpoly()) == "5 48 -80 40 0 -5 1");
    PrimeField f(101);
    CHECK(poly_line(FFPoly(f, {95, 1, 1})) == "2 95 1 1");
    CHECK(poly_line(FFPoly::zero(f)) == "0 0");
    CHECK(poly_line(IntPoly::zero()) == "0 0");
}
