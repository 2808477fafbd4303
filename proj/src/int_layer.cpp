#include "cpoly/int_layer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "cpoly/charpoly_ff.hpp"

namespace cpoly {

mpz_class IntMatrix::entry_bound() const {
    mpz_class b = 0;
    for (const auto& x : a_) {
        mpz_class v = abs(x);
        if (v > b) b = v;
    }
    return b;
}

mpz_class IntMatrix::trace() const {
    mpz_class t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
}

DenseMatrix IntMatrix::reduce(const PrimeField& f) const {
    DenseMatrix out(f, rows_, cols_);
    const mpz_class p(static_cast<unsigned long>(f.modulus()));
    mpz_class r;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            mpz_fdiv_r(r.get_mpz_t(), at(i, j).get_mpz_t(), p.get_mpz_t());
            out.at(i, j) = r.get_ui();
        }
    return out;
}

FFPoly IntPoly::reduce(const PrimeField& f) const {
    const mpz_class p(static_cast<unsigned long>(f.modulus()));
    std::vector<std::uint64_t> coeffs(c_.size());
    mpz_class r;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        mpz_fdiv_r(r.get_mpz_t(), c_[i].get_mpz_t(), p.get_mpz_t());
        coeffs[i] = r.get_ui();
    }
    return FFPoly(f, std::move(coeffs));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<mpz_class> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return IntPoly(std::move(d));
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& x : c_) g = gcd(g, x);
    if (!c_.empty() && c_.back() < 0) g = -g;
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    const mpz_class g = content();
    std::vector<mpz_class> d(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] = c_[i] / g;
    return IntPoly(std::move(d));
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

std::string IntPoly::to_string() const {
    std::ostringstream os;
    os << degree();
    if (is_zero()) {
        os << " 0";
    } else {
        for (const auto& x : c_) os << ' ' << x;
    }
    return os.str();
}

IntPoly ip_add(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return IntPoly(std::move(c));
}

IntPoly ip_sub(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return IntPoly(std::move(c));
}

IntPoly ip_mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<mpz_class> c(a.coeffs().size() + b.coeffs().size() - 1);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return IntPoly(std::move(c));
}

IntPoly ip_scale(const IntPoly& a, const mpz_class& s) {
    std::vector<mpz_class> c(a.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs()[i] * s;
    return IntPoly(std::move(c));
}

IntPoly ip_div_exact(const IntPoly& a, const IntPoly& b, bool& ok) {
    ok = false;
    if (b.is_zero()) return IntPoly();
    if (a.is_zero()) {
        ok = true;
        return IntPoly();
    }
    if (a.degree() < b.degree()) return IntPoly();
    std::vector<mpz_class> rem = a.coeffs();
    std::vector<mpz_class> q(a.degree() - b.degree() + 1);
    for (std::size_t i = q.size(); i-- > 0;) {
        mpz_class& top = rem[i + b.degree()];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), b.lc().get_mpz_t())) return IntPoly();
        q[i] = top / b.lc();
        for (std::size_t j = 0; j <= b.degree(); ++j) rem[i + j] -= q[i] * b.coeff(j);
    }
    for (const auto& x : rem)
        if (x != 0) return IntPoly();
    ok = true;
    return IntPoly(std::move(q));
}

namespace {

// lc(b)^(deg a - deg b + 1) * a mod b
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    IntPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const std::size_t shift = r.degree() - b.degree();
        std::vector<mpz_class> shifted(shift, 0);
        for (const auto& x : b.coeffs()) shifted.push_back(x * r.lc());
        r = ip_sub(ip_scale(r, b.lc()), IntPoly(std::move(shifted)));
    }
    return r;
}

}  // namespace

IntPoly ip_gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.is_zero() ? IntPoly() : ip_scale(b.primitive_part(), abs(b.content()));
    if (b.is_zero()) return ip_scale(a.primitive_part(), abs(a.content()));
    const mpz_class cont = gcd(abs(a.content()), abs(b.content()));
    IntPoly u = a.primitive_part();
    IntPoly v = b.primitive_part();
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
        IntPoly r = pseudo_rem(u, v);
        u = std::move(v);
        v = r.is_zero() ? IntPoly() : r.primitive_part();
    }
    return ip_scale(u.primitive_part(), cont);
}

double log2_mpz(const mpz_class& x) {
    if (x == 0) return -std::numeric_limits<double>::infinity();
    signed long e;
    const double d = mpz_get_d_2exp(&e, x.get_mpz_t());
    return static_cast<double>(e) + std::log2(std::fabs(d));
}

std::size_t coeff_bit_bound(std::size_t n, const mpz_class& b) {
    if (n == 0) return 1;
    const mpz_class bb = b < 1 ? mpz_class(1) : b;
    const double v = coeff_bound_log2(n, log2_mpz(bb));
    return static_cast<std::size_t>(std::ceil(v));
}

double coeff_bound_log2(std::size_t n, double log2_b) {
    return (static_cast<double>(n) / 2.0) *
           (std::log2(static_cast<double>(n)) + 2.0 * std::max(log2_b, 0.0) + 1.6669);
}

namespace {

std::shared_ptr<const std::vector<std::uint32_t>> sieved_pool(int m) {
    static std::map<int, std::shared_ptr<const std::vector<std::uint32_t>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    const std::uint64_t lo = std::uint64_t{1} << m;
    const std::uint64_t hi = std::uint64_t{1} << (m + 1);
    // base primes up to sqrt(hi)
    const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
    std::vector<bool> small(root + 1, true);
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!small[i]) continue;
        base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i) small[j] = false;
    }
    std::vector<bool> seg(hi - lo, true);
    for (std::uint64_t q : base) {
        std::uint64_t start = ((lo + q - 1) / q) * q;
        if (start < q * q) start = q * q;
        for (std::uint64_t j = start; j < hi; j += q) seg[j - lo] = false;
    }
    auto pool = std::make_shared<std::vector<std::uint32_t>>();
    for (std::uint64_t i = 0; i < hi - lo; ++i)
        if (seg[i]) pool->push_back(static_cast<std::uint32_t>(lo + i));
    cache[m] = pool;
    return pool;
}

}  // namespace

PrimeSampler::PrimeSampler(std::size_t n, std::uint64_t seed, double min_product_bits)
    : rng_(seed) {
    double l2n = n > 0 ? std::log2(static_cast<double>(n)) : 0.0;
    int m = static_cast<int>(std::floor(25.5 - 0.5 * l2n));
    m = std::min(m, 25);
    m = std::max(m, 3);
    pool_ = sieved_pool(m);
    while (static_cast<double>(pool_->size()) * m < min_product_bits && m > 3) {
        --m;
        pool_ = sieved_pool(m);
    }
    m_ = m;
}

std::uint64_t PrimeSampler::next() {
    if (used_ >= pool_->size()) throw PrimePoolExhaustedError();
    const std::size_t r = used_ + rng_.below(pool_->size() - used_);
    auto value_at = [&](std::size_t idx) {
        auto it = swapped_.find(idx);
        return it != swapped_.end() ? it->second : (*pool_)[idx];
    };
    const std::uint32_t v = value_at(r);
    swapped_[r] = value_at(used_);
    ++used_;
    return v;
}

namespace {

mpz_class symmetric_lift(const mpz_class& x, const mpz_class& m) {
    // representative in (-m/2, m/2]
    return 2 * x > m ? mpz_class(x - m) : x;
}

}  // namespace

void CrtAccumulator::combine(std::uint64_t p, const FFPoly& residues) {
    const mpz_class pz(static_cast<unsigned long>(p));
    if (count_ == 0) {
        m_ = pz;
        c_.resize(residues.is_zero() ? 1 : residues.degree() + 1);
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] = symmetric_lift(mpz_class(residues.coeff(i)), pz);
        count_ = 1;
        return;
    }
    const std::size_t deg = residues.is_zero() ? 0 : residues.degree();
    if (deg + 1 != c_.size()) throw DegreeMismatchError();

    mpz_class minv;
    if (mpz_invert(minv.get_mpz_t(), m_.get_mpz_t(), pz.get_mpz_t()) == 0)
        throw NotCoprimeError();
    const mpz_class newm = m_ * pz;
    bool changed = false;
    mpz_class cur, delta;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        mpz_fdiv_r(cur.get_mpz_t(), c_[i].get_mpz_t(), pz.get_mpz_t());
        delta = (mpz_class(residues.coeff(i)) - cur) * minv;
        mpz_fdiv_r(delta.get_mpz_t(), delta.get_mpz_t(), pz.get_mpz_t());
        mpz_class lifted = c_[i] + m_ * delta;
        mpz_fdiv_r(lifted.get_mpz_t(), lifted.get_mpz_t(), newm.get_mpz_t());
        lifted = symmetric_lift(lifted, newm);
        if (lifted != c_[i]) {
            c_[i] = lifted;
            changed = true;
        }
    }
    m_ = newm;
    ++count_;
    streak_ = changed ? 0 : streak_ + 1;
}

double et_confidence(double log2_m, double log2_u, double log2_l, std::size_t pool_size) {
    if (log2_m >= log2_u) return 1.0;
    const double fail = ((log2_u - log2_m) / log2_l) / static_cast<double>(pool_size);
    return std::clamp(1.0 - fail, 0.0, 1.0);
}

std::size_t qd_extra_checks(double failure) {
    if (failure <= 0) return 0;
    if (failure >= 1) throw Error("qd_extra_checks: failure bound must be below 1");
    return static_cast<std::size_t>(std::ceil(50.0 / -std::log2(failure)));
}

namespace {

FFPoly charpoly_residue(const IntMatrix& a, std::uint64_t p, std::uint64_t seed) {
    const PrimeField f(p);
    OpCounter scratch;
    return luk_charpoly(a.reduce(f), substream(seed, "residue") ^ splitmix64(p), scratch);
}

IntPoly iluk_driver(const IntMatrix& a, double epsilon, std::uint64_t seed, bool early_stop,
                    std::size_t* primes_used) {
    if (a.rows() != a.cols()) throw DimensionMismatchError("charpoly: square input required");
    const std::size_t n = a.rows();
    if (n == 0) return IntPoly::one();

    const std::size_t bound = coeff_bit_bound(n, a.entry_bound());
    const double log2_u = static_cast<double>(bound) + 1.0;  // symmetric-range target
    PrimeSampler sampler(n, substream(seed, "primes"), log2_u + 64.0);
    CrtAccumulator acc;
    double fail_prod = 1.0;

    while (true) {
        const double before = acc.started() ? log2_mpz(acc.modulus()) : 0.0;
        if (acc.started() && before > log2_u) break;  // deterministic certainty

        // batch of residues, combined in draw order
        const std::size_t need = acc.started()
            ? static_cast<std::size_t>(std::ceil((log2_u - before) / sampler.exponent())) + 1
            : 1;
        const std::size_t batch = early_stop ? 1 : std::max<std::size_t>(need, 1);
        std::vector<std::uint64_t> ps(batch);
        for (auto& p : ps) p = sampler.next();
        std::vector<std::unique_ptr<FFPoly>> res(batch);
#pragma omp parallel for schedule(dynamic) if (batch > 1 && n > 16)
        for (std::size_t i = 0; i < batch; ++i)
            res[i] = std::make_unique<FFPoly>(charpoly_residue(a, ps[i], seed));

        for (std::size_t i = 0; i < batch; ++i) {
            const double log2_before = acc.started() ? log2_mpz(acc.modulus()) : 0.0;
            const std::size_t streak_before = acc.stable_streak();
            acc.combine(ps[i], *res[i]);
            if (log2_mpz(acc.modulus()) > log2_u) {
                if (primes_used) *primes_used = acc.primes_used();
                return acc.to_poly();
            }
            if (!early_stop) continue;
            if (acc.stable_streak() > streak_before && acc.primes_used() >= 2) {
                const double conf = et_confidence(log2_before, log2_u,
                                                  sampler.log2_lower_bound(),
                                                  sampler.pool_size());
                fail_prod *= std::clamp(1.0 - conf, 0.0, 1.0);
                if (fail_prod <= epsilon) {
                    if (primes_used) *primes_used = acc.primes_used();
                    return acc.to_poly();
                }
            } else if (acc.stable_streak() == 0) {
                fail_prod = 1.0;
            }
        }
    }
    if (primes_used) *primes_used = acc.primes_used();
    return acc.to_poly();
}

}  // namespace

IntPoly iluk_det(const IntMatrix& a, std::uint64_t seed, std::size_t* primes_used) {
    return iluk_driver(a, 0.0, seed, false, primes_used);
}

IntPoly iluk_prob(const IntMatrix& a, double epsilon, std::uint64_t seed,
                  std::size_t* primes_used) {
    return iluk_driver(a, epsilon, seed, true, primes_used);
}

IntPoly iluk_qd(const IntMatrix& a, std::uint64_t seed, std::size_t* primes_used) {
    return iluk_prob(a, std::ldexp(1.0, -50), seed, primes_used);
}

}  // namespace cpoly
