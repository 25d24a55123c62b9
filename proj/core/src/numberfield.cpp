#include "cmcheck/numberfield.hpp"

#include <algorithm>

#include "cmcheck/errors.hpp"
#include "cmcheck/real.hpp"

namespace cmcheck {

namespace {

// Complex roots of a squarefree monic integer polynomial by the
// Aberth-Ehrlich iteration. Precision chosen by the caller.
std::vector<Complex> complex_roots(const PolyZ& T, mpfr_prec_t prec) {
    const int n = T.degree();
    std::vector<Complex> z;
    z.reserve(n);
    // Cauchy bound 1 + max |a_i| as the start circle radius.
    BigInt maxc(0);
    for (int i = 0; i < n; ++i) maxc = std::max(maxc, BigInt(abs(T.coeff(i))));
    const Real radius = Real::of(maxc, prec) + Real::of(1L, prec);
    const Real two_pi = Real::of(2L, prec) * Real::pi(prec);
    for (int k = 0; k < n; ++k) {
        Real angle = two_pi * Real::of(double(k) / n + 0.137, prec);
        z.emplace_back(radius * angle.cos(), radius * angle.sin());
    }
    std::vector<Complex> tc, dc;
    for (int i = 0; i <= n; ++i)
        tc.emplace_back(Real::of(T.coeff(i), prec), Real(prec));
    const PolyZ D = T.derivative();
    for (int i = 0; i <= D.degree(); ++i)
        dc.emplace_back(Real::of(D.coeff(i), prec), Real(prec));
    auto eval = [](const std::vector<Complex>& c, const Complex& x) {
        Complex acc = Complex::zero(x.re.prec());
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    const int iterations = 60 + int(prec) / 8;
    for (int iter = 0; iter < iterations; ++iter) {
        for (int i = 0; i < n; ++i) {
            const Complex fv = eval(tc, z[i]);
            const Complex dv = eval(dc, z[i]);
            if (dv.abs2().is_zero()) continue;
            const Complex newton = fv / dv;
            Complex sum = Complex::zero(prec);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                sum = sum + Complex::one(prec) / (z[i] - z[j]);
            }
            const Complex denom = Complex::one(prec) - newton * sum;
            z[i] = z[i] - newton / denom;
        }
    }
    return z;
}

// Exhaustive factor search for monic squarefree T of degree <= 8: every
// candidate monic factor corresponds to a subset of complex roots; round its
// coefficients and verify divisibility exactly over Q.
bool has_proper_factor(const PolyZ& T) {
    const int n = T.degree();
    std::size_t maxbits = 0;
    for (int i = 0; i <= n; ++i)
        maxbits = std::max(maxbits, mpz_sizeinbase(T.coeff(i).get_mpz_t(), 2));
    const mpfr_prec_t prec = mpfr_prec_t(256 + 2 * n * (maxbits + 4));
    const auto roots = complex_roots(T, prec);
    const PolyQ TQ = PolyQ::from(T);
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size > n / 2) continue;  // complement covers the rest
        // expand prod (x - z_s), coefficients low-to-high
        std::vector<Complex> c{Complex::one(prec)};
        for (int s = 0; s < n; ++s) {
            if (!(mask & (1u << s))) continue;
            std::vector<Complex> next(c.size() + 1, Complex::zero(prec));
            for (std::size_t i = 0; i < c.size(); ++i) {
                next[i + 1] = next[i + 1] + c[i];
                next[i] = next[i] - c[i] * roots[s];
            }
            c = std::move(next);
        }
        // c is low-to-high with lead 1
        std::vector<Rational> cand(c.size());
        bool clean = true;
        for (std::size_t i = 0; i < c.size() && clean; ++i) {
            double err = 0;
            const BigInt zi = c[i].re.round_to_integer(&err);
            if (err > 0.25 || c[i].im.abs() > Real::of(0.25, 64)) clean = false;
            cand[i] = Rational(zi);
        }
        if (!clean) continue;
        const PolyQ candidate((std::vector<Rational>(cand)));
        if (candidate.degree() < 1) continue;
        auto [q, r] = TQ.divrem(candidate);
        (void)q;
        if (r.is_zero()) return true;
    }
    return false;
}

bool verify_irreducible(const PolyZ& T) {
    const int n = T.degree();
    if (n == 1) return true;
    // squarefree over Q?
    const PolyQ TQ = PolyQ::from(T);
    PolyQ g = TQ, h = PolyQ::from(T.derivative());
    while (!h.is_zero()) {
        PolyQ r = g.divrem(h).second;
        g = std::move(h);
        h = std::move(r);
    }
    if (g.degree() > 0) return false;  // repeated factor
    // rational roots: integer divisors of the constant term (monic T)
    if (T.coeff(0) == 0) return false;
    for (const BigInt& cand : {BigInt(1), BigInt(-1)}) {
        if (T.eval(cand) == 0) return false;
    }
    BigInt a0 = abs(T.coeff(0));
    for (const auto& [prime, e] : factorize(a0)) {
        (void)e;
        BigInt d = prime;
        while (d <= a0 && a0 % d == 0) {
            if (T.eval(d) == 0 || T.eval(-d) == 0) return false;
            d *= prime;
        }
    }
    // certificate: irreducible modulo a small prime
    static const PrimeSieve sieve(2000);
    const std::size_t budget = n <= 8 ? 25 : sieve.primes().size();
    std::size_t tried = 0;
    for (std::uint64_t p : sieve.primes()) {
        if (tried >= budget) break;
        const PolyFp Tp = PolyFp::from(T, p);
        if (Tp.degree() != n) continue;  // cannot happen for monic T, kept for safety
        ++tried;
        if (is_irreducible_mod_p(Tp)) return true;
    }
    if (n > 8)
        throw InputError("NumberField: cannot certify irreducibility of degree-" +
                         std::to_string(n) + " polynomial (no modular certificate found)");
    return !has_proper_factor(T);
}

}  // namespace

std::shared_ptr<const NumberField> NumberField::make(const PolyZ& T) {
    if (T.degree() < 1) throw InputError("NumberField: minimal polynomial must be nonconstant");
    if (!T.is_monic()) throw InputError("NumberField: minimal polynomial must be monic");
    if (!verify_irreducible(T)) throw InputError("NumberField: minimal polynomial is reducible");
    BigInt disc = discriminant_of_monic(T);
    return std::shared_ptr<const NumberField>(new NumberField(T, T.degree(), std::move(disc)));
}

// ---------------------------------------------------------------- NfElem ---

NfElem::NfElem(NumberFieldPtr field, PolyQ rep) : field_(std::move(field)) {
    rep_ = rep.divrem(PolyQ::from(field_->minpoly())).second;
}

NfElem NfElem::zero(NumberFieldPtr field) { return NfElem(std::move(field), PolyQ()); }

NfElem NfElem::one(NumberFieldPtr field) {
    return NfElem(std::move(field), PolyQ::constant(Rational(1)));
}

NfElem NfElem::from_rational(NumberFieldPtr field, const Rational& v) {
    return NfElem(std::move(field), PolyQ::constant(v));
}

NfElem NfElem::theta(NumberFieldPtr field) { return NfElem(std::move(field), PolyQ::x()); }

Rational NfElem::rational_value() const {
    if (!is_rational()) throw std::invalid_argument("NfElem: not a rational element");
    return rep_.is_zero() ? Rational(0) : rep_.coeff(0);
}

NfElem NfElem::operator+(const NfElem& o) const { return NfElem(field_, rep_ + o.rep_); }
NfElem NfElem::operator-(const NfElem& o) const { return NfElem(field_, rep_ - o.rep_); }
NfElem NfElem::operator*(const NfElem& o) const { return NfElem(field_, rep_ * o.rep_); }
NfElem NfElem::operator-() const { return NfElem(field_, -rep_); }
NfElem NfElem::operator/(const NfElem& o) const { return *this * o.inverse(); }

bool NfElem::operator==(const NfElem& o) const { return rep_ == o.rep_; }

NfElem NfElem::inverse() const {
    if (is_zero()) throw std::invalid_argument("NfElem::inverse: zero element");
    // extended Euclid with T in Q[x]
    PolyQ r0 = PolyQ::from(field_->minpoly()), r1 = rep_;
    PolyQ s0, s1 = PolyQ::constant(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        PolyQ s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r0 is a nonzero constant (T irreducible)
    const Rational scale = 1 / r0.coeff(0);
    return NfElem(field_, s0 * PolyQ::constant(scale));
}

PolyQ NfElem::minpoly() const {
    const int n = field_->degree();
    // Krylov sequence 1, a, a^2, ... with dependence tracking.
    struct Row {
        std::vector<Rational> vec;    // length n, leading nonzero at pivot
        std::vector<Rational> combo;  // coefficients over the powers a^0..a^k
        int pivot;
    };
    std::vector<Row> rows;
    NfElem power = one(field_);
    for (int k = 0; k <= n; ++k) {
        std::vector<Rational> v(n, Rational(0));
        for (int i = 0; i <= power.rep_.degree(); ++i) v[i] = power.rep_.coeff(i);
        std::vector<Rational> combo(k + 1, Rational(0));
        combo[k] = 1;
        for (const Row& row : rows) {
            const Rational f = v[row.pivot];
            if (f == 0) continue;
            for (int i = 0; i < n; ++i) v[i] -= f * row.vec[i];
            for (std::size_t i = 0; i < row.combo.size(); ++i) combo[i] -= f * row.combo[i];
        }
        int pivot = -1;
        for (int i = 0; i < n; ++i)
            if (v[i] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) {
            // dependence: sum combo_i a^i = 0 with combo_k = 1
            return PolyQ(std::move(combo));
        }
        const Rational inv = 1 / v[pivot];
        for (auto& x : v) x *= inv;
        for (auto& x : combo) x *= inv;
        rows.push_back({std::move(v), std::move(combo), pivot});
        power = power * *this;
    }
    throw std::logic_error("NfElem::minpoly: no dependence found");
}

Rational NfElem::norm() const {
    if (is_zero()) throw std::invalid_argument("NfElem::norm: zero element");
    if (is_rational()) {
        Rational acc(1);
        for (int i = 0; i < field_->degree(); ++i) acc *= rep_.coeff(0);
        return acc;
    }
    return resultant(PolyQ::from(field_->minpoly()), rep_);
}

NfElem make_const(const NfElem& like, long v) {
    return NfElem::from_rational(like.field(), Rational(v));
}

// ----------------------------------------------------------- PrimeIdeal ----

std::vector<PrimeIdeal> split_prime_unchecked(const NumberFieldPtr& F, std::uint64_t p) {
    const PolyFp Tp = PolyFp::from(F->minpoly(), p);
    std::vector<PrimeIdeal> out;
    int total = 0;
    for (const auto& [g, mult] : factor_mod_p(Tp)) {
        PrimeIdeal P;
        P.field = F;
        P.p = p;
        P.g = g;
        P.residue_degree = g.degree();
        P.ramification = mult;
        mpz_ui_pow_ui(P.norm.get_mpz_t(), p, g.degree());
        total += mult * g.degree();
        out.push_back(std::move(P));
    }
    if (total != F->degree())
        throw std::logic_error("split_prime: factor degrees do not sum to n");
    return out;
}

std::optional<std::vector<PrimeIdeal>> split_prime(const NumberFieldPtr& F, std::uint64_t p) {
    if (mpz_fdiv_ui(F->disc().get_mpz_t(), p) == 0) return std::nullopt;  // IndexRisk
    return split_prime_unchecked(F, p);
}

FqContextPtr residue_field_of(const PrimeIdeal& P) { return FqContext::make(P.g); }

std::optional<FqElem> reduce_element(const NfElem& alpha, const PrimeIdeal& P,
                                     const FqContextPtr& residue_field) {
    const std::uint64_t p = P.p;
    std::vector<std::uint64_t> c;
    const PolyQ& rep = alpha.rep();
    c.reserve(rep.degree() + 1);
    for (int i = 0; i <= rep.degree(); ++i) {
        const auto img = reduce_mod(rep.coeff(i), p);
        if (!img) return std::nullopt;  // denominator hit p
        c.push_back(*img);
    }
    return FqElem(residue_field, PolyFp(p, std::move(c)));
}

bool is_algebraic_integer(const PolyZ& primitive_minpoly) {
    if (primitive_minpoly.is_zero())
        throw std::invalid_argument("is_algebraic_integer: zero polynomial");
    return primitive_minpoly.is_monic();
}

bool is_algebraic_integer(const PolyQ& monic_minpoly) {
    if (monic_minpoly.is_zero())
        throw std::invalid_argument("is_algebraic_integer: zero polynomial");
    return monic_minpoly.is_integral();
}

}  // namespace cmcheck
