#include "cpoly/ff.hpp"

#include <sstream>

namespace cpoly {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool PrimeField::is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Sufficient witness set for all n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (1ull << 26)) throw TooLargeError(p);
    if (p <= 2 || !is_prime_u64(p)) throw NotPrimeError(p);
    const std::uint64_t sq = (p - 1) * (p - 1);
    budget_ = (~0ull >> 1) / sq;  // n * (p-1)^2 < 2^63
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
    return powmod_u64(a, e, p_);
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
    a %= p_;
    if (a == 0) throw Error("inverse of zero");
    // extended Euclid on signed words
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(p_), nr = static_cast<long long>(a);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += static_cast<long long>(p_);
    return static_cast<std::uint64_t>(t);
}

std::uint64_t FFPoly::eval(std::uint64_t x) const {
    std::uint64_t r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = field_.add(field_.mul(r, x), c_[i]);
    return r;
}

FFPoly FFPoly::derivative() const {
    if (c_.size() <= 1) return FFPoly(field_);
    std::vector<std::uint64_t> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = field_.mul(c_[i], i % field_.modulus());
    return FFPoly(field_, std::move(d));
}

FFPoly FFPoly::make_monic() const {
    if (is_zero() || c_.back() == 1) return *this;
    const std::uint64_t s = field_.inv(c_.back());
    std::vector<std::uint64_t> d(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] = field_.mul(c_[i], s);
    return FFPoly(field_, std::move(d));
}

std::string FFPoly::to_string() const {
    std::ostringstream os;
    if (is_zero()) return "0";
    os << degree();
    for (auto v : c_) os << ' ' << v;
    return os.str();
}

static void check_fields(const FFPoly& a, const FFPoly& b) {
    if (a.field() != b.field()) throw FieldMismatchError();
}

FFPoly poly_add(const FFPoly& a, const FFPoly& b) {
    check_fields(a, b);
    const auto& f = a.field();
    std::vector<std::uint64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a.coeff(i), b.coeff(i));
    return FFPoly(f, std::move(c));
}

FFPoly poly_sub(const FFPoly& a, const FFPoly& b) {
    check_fields(a, b);
    const auto& f = a.field();
    std::vector<std::uint64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.sub(a.coeff(i), b.coeff(i));
    return FFPoly(f, std::move(c));
}

FFPoly poly_mul(const FFPoly& a, const FFPoly& b) {
    check_fields(a, b);
    const auto& f = a.field();
    if (a.is_zero() || b.is_zero()) return FFPoly(f);
    // schoolbook with delayed reduction along the diagonal sums
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    std::vector<std::uint64_t> c(ca.size() + cb.size() - 1, 0);
    const std::uint64_t budget = f.max_unreduced_terms();
    for (std::size_t k = 0; k < c.size(); ++k) {
        __uint128_t acc = 0;
        std::uint64_t terms = 0;
        const std::size_t lo = k >= cb.size() ? k - cb.size() + 1 : 0;
        const std::size_t hi = std::min(k, ca.size() - 1);
        for (std::size_t i = lo; i <= hi; ++i) {
            acc += ca[i] * cb[k - i];
            if (++terms == budget) {
                acc %= f.modulus();
                terms = 0;
            }
        }
        c[k] = static_cast<std::uint64_t>(acc % f.modulus());
    }
    return FFPoly(f, std::move(c));
}

std::pair<FFPoly, FFPoly> poly_divrem(const FFPoly& a, const FFPoly& b) {
    check_fields(a, b);
    if (b.is_zero()) throw DivisionByZeroPolyError();
    const auto& f = a.field();
    if (a.is_zero() || a.degree() < b.degree()) return {FFPoly(f), a};
    std::vector<std::uint64_t> r = a.coeffs();
    const std::size_t db = b.degree();
    std::vector<std::uint64_t> q(a.degree() - db + 1, 0);
    const std::uint64_t lead_inv = f.inv(b.leading());
    for (std::size_t i = q.size(); i-- > 0;) {
        const std::uint64_t t = f.mul(r[i + db], lead_inv);
        q[i] = t;
        if (t == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) r[i + j] = f.sub(r[i + j], f.mul(t, b.coeff(j)));
    }
    r.resize(db);
    return {FFPoly(f, std::move(q)), FFPoly(f, std::move(r))};
}

FFPoly poly_mod(const FFPoly& a, const FFPoly& m) { return poly_divrem(a, m).second; }

FFPoly poly_gcd(const FFPoly& a, const FFPoly& b) {
    check_fields(a, b);
    FFPoly x = a, y = b;
    while (!y.is_zero()) {
        FFPoly r = poly_divrem(x, y).second;
        x = y;
        y = r;
    }
    return x.make_monic();
}

FFPoly poly_powmod_u64(const FFPoly& a, std::uint64_t e, const FFPoly& m) {
    FFPoly base = poly_mod(a, m);
    FFPoly r = FFPoly::one(a.field());
    while (e) {
        if (e & 1) r = poly_mod(poly_mul(r, base), m);
        base = poly_mod(poly_mul(base, base), m);
        e >>= 1;
    }
    return r;
}

PolyXgcd poly_xgcd(const FFPoly& a, const FFPoly& b) {
    check_fields(a, b);
    const auto& f = a.field();
    FFPoly r0 = a, r1 = b;
    FFPoly s0 = FFPoly::one(f), s1 = FFPoly::zero(f);
    FFPoly t0 = FFPoly::zero(f), t1 = FFPoly::one(f);
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divrem(r0, r1);
        r0 = r1;
        r1 = r2;
        FFPoly s2 = poly_sub(s0, poly_mul(q, s1));
        s0 = s1;
        s1 = s2;
        FFPoly t2 = poly_sub(t0, poly_mul(q, t1));
        t0 = t1;
        t1 = t2;
    }
    if (!r0.is_zero() && r0.leading() != 1) {
        const std::uint64_t s = f.inv(r0.leading());
        auto scale = [&](const FFPoly& p) {
            std::vector<std::uint64_t> c = p.coeffs();
            for (auto& v : c) v = f.mul(v, s);
            return FFPoly(f, std::move(c));
        };
        return {scale(r0), scale(s0), scale(t0)};
    }
    return {r0, s0, t0};
}

}  // namespace cpoly
