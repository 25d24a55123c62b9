#include "cmcheck/fp.hpp"

#include <algorithm>
#include <sstream>

#include "cmcheck/rng.hpp"

namespace cmcheck {

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    const std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return std::uint64_t((unsigned __int128)a * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    // extended Euclid; a must be a unit
    std::int64_t t = 0, nt = 1;
    std::int64_t r = std::int64_t(p), nr = std::int64_t(a % p);
    while (nr != 0) {
        const std::int64_t q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw std::invalid_argument("invmod: not a unit");
    if (t < 0) t += std::int64_t(p);
    return std::uint64_t(t);
}

std::uint64_t reduce_mod(const BigInt& a, std::uint64_t p) {
    return mpz_fdiv_ui(a.get_mpz_t(), p);
}

std::optional<std::uint64_t> reduce_mod(const Rational& a, std::uint64_t p) {
    const std::uint64_t den = mpz_fdiv_ui(a.get_den_mpz_t(), p);
    if (den == 0) return std::nullopt;
    const std::uint64_t num = mpz_fdiv_ui(a.get_num_mpz_t(), p);
    return mulmod(num, invmod(den, p), p);
}

int legendre(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (legendre(a, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    std::uint64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (legendre(z, p) != -1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = powmod(z, q, p);
    std::uint64_t t = powmod(a, q, p);
    std::uint64_t r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

// --------------------------------------------------------------- PolyFp ----

PolyFp::PolyFp(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= p_;
    normalize();
}

void PolyFp::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyFp PolyFp::x(std::uint64_t p) { return PolyFp(p, {0, 1}); }

PolyFp PolyFp::constant(std::uint64_t p, std::uint64_t c) { return PolyFp(p, {c}); }

PolyFp PolyFp::from(const PolyZ& f, std::uint64_t p) {
    std::vector<std::uint64_t> r;
    r.reserve(f.coeffs().size());
    for (const auto& v : f.coeffs()) r.push_back(reduce_mod(v, p));
    return PolyFp(p, std::move(r));
}

PolyFp PolyFp::operator+(const PolyFp& o) const {
    std::vector<std::uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = addmod(r[i], o.c_[i], p_ ? p_ : o.p_);
    return PolyFp(p_ ? p_ : o.p_, std::move(r));
}

PolyFp PolyFp::operator-(const PolyFp& o) const {
    std::vector<std::uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = submod(r[i], o.c_[i], p_ ? p_ : o.p_);
    return PolyFp(p_ ? p_ : o.p_, std::move(r));
}

PolyFp PolyFp::operator*(const PolyFp& o) const {
    if (is_zero() || o.is_zero()) return PolyFp(p_ ? p_ : o.p_);
    std::vector<std::uint64_t> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = addmod(r[i + j], mulmod(c_[i], o.c_[j], p_), p_);
    }
    return PolyFp(p_, std::move(r));
}

PolyFp PolyFp::monic() const {
    if (is_zero() || c_.back() == 1) return *this;
    const std::uint64_t inv = invmod(c_.back(), p_);
    std::vector<std::uint64_t> r(c_);
    for (auto& v : r) v = mulmod(v, inv, p_);
    return PolyFp(p_, std::move(r));
}

std::pair<PolyFp, PolyFp> PolyFp::divrem(const PolyFp& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("PolyFp::divrem: division by zero");
    const int dd = divisor.degree();
    if (degree() < dd) return {PolyFp(p_), *this};
    std::vector<std::uint64_t> rem(c_);
    std::vector<std::uint64_t> quot(c_.size() - dd, 0);
    const std::uint64_t lead_inv = invmod(divisor.lead(), p_);
    for (int i = int(rem.size()) - 1; i >= dd; --i) {
        if (rem[i] == 0) continue;
        const std::uint64_t f = mulmod(rem[i], lead_inv, p_);
        quot[i - dd] = f;
        for (int j = 0; j <= dd; ++j)
            rem[i - dd + j] = submod(rem[i - dd + j], mulmod(f, divisor.c_[j], p_), p_);
    }
    return {PolyFp(p_, std::move(quot)), PolyFp(p_, std::move(rem))};
}

PolyFp PolyFp::derivative() const {
    if (c_.size() <= 1) return PolyFp(p_);
    std::vector<std::uint64_t> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = mulmod(c_[i], i % p_, p_);
    return PolyFp(p_, std::move(r));
}

std::uint64_t PolyFp::eval(std::uint64_t x) const {
    std::uint64_t acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = addmod(mulmod(acc, x, p_), *it, p_);
    return acc;
}

std::string PolyFp::str() const {
    std::ostringstream os;
    if (is_zero()) return "0";
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        if (c_[i] != 1 || i == 0) os << c_[i];
        if (i >= 1) {
            os << "x";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

PolyFp gcd(PolyFp a, PolyFp b) {
    while (!b.is_zero()) {
        PolyFp r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

PolyFp powmod(const PolyFp& base, const BigInt& e, const PolyFp& m) {
    PolyFp result = PolyFp::constant(m.p(), 1);
    PolyFp b = base.mod(m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result).mod(m);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b).mod(m);
    }
    return result;
}

// ---------------------------------------------------------- factorization --

namespace {

// p-th root of f when f = g(x^p); over the prime field coefficients are
// their own p-th roots.
PolyFp pth_root(const PolyFp& f) {
    const std::uint64_t p = f.p();
    std::vector<std::uint64_t> r;
    for (int i = 0; i * std::int64_t(p) <= f.degree(); ++i) r.push_back(f.coeff(i * p));
    return PolyFp(p, std::move(r));
}

// f = prod g_i^i with each g_i squarefree; f monic.
void squarefree_decompose(const PolyFp& f, int mult_scale, std::vector<std::pair<PolyFp, int>>& out) {
    if (f.degree() <= 0) return;
    const PolyFp d = f.derivative();
    if (d.is_zero()) {
        squarefree_decompose(pth_root(f), mult_scale * int(f.p()), out);
        return;
    }
    PolyFp c = gcd(f, d);
    PolyFp w = f.divrem(c).first;
    int i = 1;
    while (w.degree() > 0) {
        PolyFp y = gcd(w, c);
        PolyFp z = w.divrem(y).first;
        if (z.degree() > 0) out.emplace_back(z.monic(), i * mult_scale);
        ++i;
        w = std::move(y);
        c = c.divrem(w).first;
    }
    if (c.degree() > 0) squarefree_decompose(pth_root(c), mult_scale * int(f.p()), out);
}

// Distinct-degree split of a monic squarefree polynomial.
std::vector<std::pair<PolyFp, int>> distinct_degree(const PolyFp& f) {
    std::vector<std::pair<PolyFp, int>> out;
    const std::uint64_t p = f.p();
    PolyFp rest = f;
    PolyFp h = PolyFp::x(p);  // x^(p^k) mod rest, updated incrementally
    int k = 0;
    while (rest.degree() > 0) {
        ++k;
        if (2 * k > rest.degree()) {
            out.emplace_back(rest, rest.degree());
            break;
        }
        h = powmod(h, BigInt(static_cast<unsigned long>(p)), rest);
        const PolyFp g = gcd(h - PolyFp::x(p), rest);
        if (g.degree() > 0) {
            out.emplace_back(g, k);
            rest = rest.divrem(g).first;
            h = h.mod(rest);
        }
    }
    return out;
}

std::uint64_t fnv_seed(const PolyFp& f) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(f.p());
    for (auto c : f.coeffs()) mix(c + 1);
    return h;
}

// Equal-degree splitting (Cantor-Zassenhaus) of a monic squarefree product
// of irreducibles of degree k.
void equal_degree(const PolyFp& f, int k, Rng& rng, std::vector<PolyFp>& out) {
    if (f.degree() == k) {
        out.push_back(f.monic());
        return;
    }
    const std::uint64_t p = f.p();
    BigInt e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, k);
    e = (e - 1) / 2;
    while (true) {
        std::vector<std::uint64_t> rc(f.degree());
        for (auto& v : rc) v = rng.below(p);
        const PolyFp t(p, std::move(rc));
        if (t.degree() < 1) continue;
        PolyFp g = gcd(t, f);
        if (g.degree() == 0) {
            if (p == 2) {
                // char-2 splitting via the trace map sum t^(2^i)
                PolyFp cur = t.mod(f);
                PolyFp tr = cur;
                for (int i = 1; i < k; ++i) {
                    cur = (cur * cur).mod(f);
                    tr = tr + cur;
                }
                g = gcd(tr, f);
            } else {
                g = gcd(powmod(t, e, f) - PolyFp::constant(p, 1), f);
            }
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, k, rng, out);
            equal_degree(f.divrem(g).first, k, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<FpFactor> factor_mod_p(const PolyFp& f) {
    if (f.is_zero()) throw std::invalid_argument("factor_mod_p: zero polynomial");
    std::vector<FpFactor> result;
    if (f.degree() == 0) return result;
    Rng rng(fnv_seed(f));
    std::vector<std::pair<PolyFp, int>> sqf;
    squarefree_decompose(f.monic(), 1, sqf);
    for (const auto& [part, mult] : sqf) {
        for (const auto& [g, k] : distinct_degree(part)) {
            std::vector<PolyFp> irr;
            equal_degree(g, k, rng, irr);
            for (auto& u : irr) result.push_back({std::move(u), mult});
        }
    }
    std::sort(result.begin(), result.end(), [](const FpFactor& a, const FpFactor& b) {
        if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
        return a.factor.coeffs() < b.factor.coeffs();
    });
    return result;
}

bool is_irreducible_mod_p(const PolyFp& f) {
    const int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const std::uint64_t p = f.p();
    const PolyFp fm = f.monic();
    // x^(p^n) == x mod f, and x^(p^(n/q)) - x coprime to f for prime q | n.
    BigInt pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
    if (powmod(PolyFp::x(p), pn, fm) != PolyFp::x(p).mod(fm)) return false;
    for (int q = 2; q <= n; ++q) {
        if (n % q != 0 || !is_prime(BigInt(q))) continue;
        BigInt e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, n / q);
        const PolyFp h = powmod(PolyFp::x(p), e, fm) - PolyFp::x(p);
        if (gcd(h, fm).degree() != 0) return false;
    }
    return true;
}

PolyFp find_irreducible(std::uint64_t p, int d) {
    if (d == 1) return PolyFp::x(p);
    BigInt total;
    mpz_ui_pow_ui(total.get_mpz_t(), p, d);
    for (BigInt v(0); v < total; ++v) {
        std::vector<std::uint64_t> c(d + 1, 0);
        BigInt t = v;
        for (int i = 0; i < d; ++i) {
            c[i] = mpz_fdiv_ui(t.get_mpz_t(), p);
            t /= static_cast<unsigned long>(p);
        }
        c[d] = 1;
        PolyFp candidate(p, std::move(c));
        if (is_irreducible_mod_p(candidate)) return candidate;
    }
    throw std::logic_error("find_irreducible: exhausted search space");
}

}  // namespace cmcheck
