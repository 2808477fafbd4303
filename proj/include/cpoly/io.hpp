#ifndef CPOLY_IO_HPP
#define CPOLY_IO_HPP

#include <string>
#include <variant>

#include "cpoly/sparse_bb.hpp"

namespace cpoly {

enum class MatrixFormat { Dense, Sms };

/// Parsed matrix file: either a dense integer matrix or a coordinate-format
/// sparse one, as detected from the header line.
struct MatrixFile {
    MatrixFormat format;
    std::variant<IntMatrix, SparseMatrix> payload;
};

/// Dense text format: first line `rows cols`, then `rows` lines of `cols`
/// whitespace-separated signed decimal integers.
IntMatrix parse_dense(const std::string& text);
std::string serialize_dense(const IntMatrix& m);

/// SMS coordinate format: header `rows cols M`, 1-based `i j value`
/// triplets, `0 0 0` terminator. Duplicates and missing terminators are
/// rejected.
SparseMatrix parse_sms(const std::string& text);
std::string serialize_sms(const SparseMatrix& m);

/// Header sniffing: `rows cols M` is SMS, a bare `rows cols` is dense.
MatrixFile parse_matrix_file(const std::string& text);

/// `deg c0 c1 ... cdeg` ascending-coefficient line (no trailing newline).
std::string poly_line(const IntPoly& p);
std::string poly_line(const FFPoly& p);

}  // namespace cpoly

#endif
