#include "cpoly/io.hpp"

#include <cctype>
#include <sstream>

#include "cpoly/errors.hpp"

namespace cpoly {

namespace {

bool is_blank(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

bool is_integer_token(const std::string& t) {
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

mpz_class parse_mpz(const std::string& t, std::size_t line) {
    if (!is_integer_token(t)) throw ParseError(line, "expected an integer, got '" + t + "'");
    return mpz_class(t);
}

std::size_t parse_size(const std::string& t, std::size_t line) {
    mpz_class v = parse_mpz(t, line);
    if (v < 0 || !v.fits_ulong_p()) throw ParseError(line, "value '" + t + "' out of range");
    return static_cast<std::size_t>(v.get_ui());
}

std::vector<std::string> read_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

// First non-blank line, 1-based; 0 when the text is all blank.
std::size_t first_content_line(const std::vector<std::string>& lines) {
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (!is_blank(lines[i])) return i + 1;
    return 0;
}

}  // namespace

IntMatrix parse_dense(const std::string& text) {
    const auto lines = read_lines(text);
    const std::size_t head = first_content_line(lines);
    if (head == 0) throw ParseError(1, "empty matrix file");

    auto htok = split_tokens(lines[head - 1]);
    if (htok.size() != 2)
        throw ParseError(head, "dense header must be 'rows cols'");
    const std::size_t rows = parse_size(htok[0], head);
    const std::size_t cols = parse_size(htok[1], head);
    if (rows == 0 || cols == 0) throw ParseError(head, "dimensions must be positive");

    IntMatrix m(rows, cols);
    std::size_t r = 0;
    std::size_t ln = head;
    for (std::size_t i = head; i < lines.size(); ++i) {
        ln = i + 1;
        if (is_blank(lines[i])) continue;
        if (r == rows) throw ParseError(ln, "unexpected content after the last row");
        auto tok = split_tokens(lines[i]);
        if (tok.size() != cols)
            throw ParseError(ln, "row has " + std::to_string(tok.size()) + " entries, expected " +
                                     std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j) m.at(r, j) = parse_mpz(tok[j], ln);
        ++r;
    }
    if (r != rows)
        throw ParseError(ln + 1, "expected " + std::to_string(rows) + " rows, got " +
                                     std::to_string(r));
    return m;
}

std::string serialize_dense(const IntMatrix& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << m.at(i, j);
        }
        out << '\n';
    }
    return out.str();
}

SparseMatrix parse_sms(const std::string& text) {
    const auto lines = read_lines(text);
    const std::size_t head = first_content_line(lines);
    if (head == 0) throw ParseError(1, "empty matrix file");

    auto htok = split_tokens(lines[head - 1]);
    if (htok.size() != 3 || is_integer_token(htok[2]))
        throw ParseError(head, "SMS header must be 'rows cols M'");
    const std::size_t rows = parse_size(htok[0], head);
    const std::size_t cols = parse_size(htok[1], head);
    if (rows == 0 || cols == 0) throw ParseError(head, "dimensions must be positive");

    std::vector<Triplet> triplets;
    bool terminated = false;
    for (std::size_t i = head; i < lines.size(); ++i) {
        const std::size_t ln = i + 1;
        if (is_blank(lines[i])) continue;
        if (terminated) throw ParseError(ln, "content after the 0 0 0 terminator");
        auto tok = split_tokens(lines[i]);
        if (tok.size() != 3) throw ParseError(ln, "expected 'i j value'");
        const mpz_class value = parse_mpz(tok[2], ln);
        const std::size_t r = parse_size(tok[0], ln);
        const std::size_t c = parse_size(tok[1], ln);
        if (r == 0 && c == 0 && value == 0) {
            terminated = true;
            continue;
        }
        if (r == 0 || r > rows || c == 0 || c > cols)
            throw ParseError(ln, "index (" + tok[0] + ", " + tok[1] + ") out of range");
        if (value == 0) throw ParseError(ln, "explicit zero entry");
        triplets.push_back(Triplet{r - 1, c - 1, value});
    }
    if (!terminated) throw MissingTerminatorError();
    return SparseMatrix(rows, cols, std::move(triplets));
}

std::string serialize_sms(const SparseMatrix& m) {
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << " M\n";
    for (const Triplet& t : m.triplets())
        out << t.row + 1 << ' ' << t.col + 1 << ' ' << t.value << '\n';
    out << "0 0 0\n";
    return out.str();
}

MatrixFile parse_matrix_file(const std::string& text) {
    const auto lines = read_lines(text);
    const std::size_t head = first_content_line(lines);
    if (head == 0) throw ParseError(1, "empty matrix file");
    auto htok = split_tokens(lines[head - 1]);
    if (htok.size() == 3 && !is_integer_token(htok[2]))
        return MatrixFile{MatrixFormat::Sms, parse_sms(text)};
    return MatrixFile{MatrixFormat::Dense, parse_dense(text)};
}

std::string poly_line(const IntPoly& p) { return p.to_string(); }

std::string poly_line(const FFPoly& p) {
    std::ostringstream out;
    if (p.is_zero()) return "0 0";
    out << p.degree();
    for (std::size_t i = 0; i <= p.degree(); ++i) out << ' ' << p.coeff(i);
    return out.str();
}

}  // namespace cpoly
