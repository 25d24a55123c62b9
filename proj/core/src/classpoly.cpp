#include "cmcheck/classpoly.hpp"

#include <algorithm>
#include <cmath>

namespace cmcheck {

// ----------------------------------------------------------------- forms ---

std::vector<QuadForm> reduced_forms(const BigInt& D) {
    if (!is_imaginary_discriminant(D))
        throw std::invalid_argument("reduced_forms: D must be negative and 0,1 mod 4");
    if (!D.fits_slong_p())
        throw CapabilityError("reduced_forms: |D| too large for enumeration");
    const std::int64_t d = D.get_si();
    const std::int64_t absd = -d;
    std::vector<QuadForm> out;
    for (std::int64_t a = 1; 3 * a * a <= absd; ++a) {
        for (std::int64_t b = -a; b <= a; ++b) {
            if (((b - d) & 1) != 0) continue;  // b = D mod 2
            const std::int64_t num = b * b - d;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (-b == a || a == c)) continue;  // boundary sign rule
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadForm& x, const QuadForm& y) {
        if (x.a != y.a) return x.a < y.a;
        if (std::abs(x.b) != std::abs(y.b)) return std::abs(x.b) < std::abs(y.b);
        return x.b > y.b;
    });
    return out;
}

long class_number(const BigInt& D) { return long(reduced_forms(D).size()); }

double gzgo_bound(const BigInt& D) {
    if (!is_fundamental_discriminant(D))
        throw std::invalid_argument("gzgo_bound: D must be a negative fundamental discriminant");
    const BigInt absd = -D;
    const double coef = (gcd(absd, BigInt(5077)) != 1) ? 1.0 / 7000.0 : 1.0 / 55.0;
    double prod = 1.0;
    for (const auto& [p, e] : factorize(absd)) {
        (void)e;
        const std::uint64_t pv = to_u64(p);
        const std::uint64_t floor2sqrt = to_u64(BigInt(sqrt(BigInt(4 * p))));
        prod *= 1.0 - double(floor2sqrt) / double(pv + 1);
    }
    return coef * ln_abs(D) * prod;
}

double effective_h_lower_bound(const BigInt& D) {
    if (!is_imaginary_discriminant(D))
        throw std::invalid_argument("effective_h_lower_bound: invalid discriminant");
    const auto split = split_discriminant(D);
    if (split.conductor == 1) {
        const long t = long(factorize(D).size());
        const double genus = std::pow(2.0, double(t - 1));
        return std::max(gzgo_bound(D), genus);
    }
    // non-fundamental: exact count is affordable at the sizes we scan
    return double(class_number(D));
}

// ---------------------------------------------------------------- eval_j ---

Tau tau_of_form(const QuadForm& f, const BigInt& D, mpfr_prec_t prec) {
    const Real a2 = Real::of(2 * f.a, prec);
    Real re = Real::of(-f.b, prec) / a2;
    Real im = Real::of(-D, prec).sqrt() / a2;
    return Tau{std::move(re), std::move(im)};
}

namespace {

std::vector<unsigned long long> sigma3_table(std::size_t n) {
    std::vector<unsigned long long> s(n + 1, 0);
    for (std::size_t d = 1; d <= n; ++d) {
        const unsigned long long d3 = 1ull * d * d * d;
        for (std::size_t m = d; m <= n; m += d) s[m] += d3;
    }
    return s;
}

Complex complex_pow_ui(Complex base, unsigned long e, mpfr_prec_t prec) {
    Complex result = Complex::one(prec);
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

}  // namespace

Complex eval_j(const Tau& tau, mpfr_prec_t prec) {
    const Real pi = Real::pi(prec);
    const Real two_pi = Real::of(2L, prec) * pi;
    // q = e^{2 pi i tau}
    const Real qabs = (-(two_pi * tau.im)).exp();
    const Real arg = two_pi * tau.re;
    const Complex q{qabs * arg.cos(), qabs * arg.sin()};

    // truncation: |q|^N below 2^-(prec/2 + 32)
    const double lq = std::log(qabs.to_double());
    if (!(lq < -1e-9)) throw PrecisionError("eval_j: |q| too close to 1 (tau outside domain?)");
    const double needed = (double(prec) / 2.0 + 32.0) * std::log(2.0);
    const std::size_t N = std::size_t(needed / -lq) + 2;
    if (N > 2'000'000) throw PrecisionError("eval_j: tail bound needs too many terms");

    const auto sigma3 = sigma3_table(N);
    Complex e4 = Complex::one(prec);
    Complex eta_prod = Complex::one(prec);  // prod (1 - q^n)
    Complex qn = Complex::one(prec);
    const Complex c240{Real::of(240L, prec), Real(prec)};
    for (std::size_t n = 1; n <= N; ++n) {
        qn = qn * q;
        const Complex term{Real::of(BigInt(static_cast<unsigned long>(sigma3[n])), prec),
                           Real(prec)};
        e4 = e4 + c240 * term * qn;
        eta_prod = eta_prod - eta_prod * qn;
    }
    const Complex delta = q * complex_pow_ui(eta_prod, 24, prec);
    const Complex e4cubed = e4 * e4 * e4;
    return e4cubed / delta;
}

// ---------------------------------------------------------- Hilbert poly ---

mpfr_prec_t hilbert_default_precision(const BigInt& D, long h) {
    const double bits = 3.14159265358979323846 * std::sqrt(double(-D.get_si())) * double(h) /
                        std::log(2.0);
    return mpfr_prec_t(bits) + 64;
}

namespace {

std::optional<HilbertPoly> hilbert_attempt(const BigInt& D, const std::vector<QuadForm>& forms,
                                           mpfr_prec_t prec) {
    // prod (x - j_i) over complex coefficients
    std::vector<Complex> poly{Complex::one(prec)};
    for (const QuadForm& f : forms) {
        const Complex jv = eval_j(tau_of_form(f, D, prec), prec);
        std::vector<Complex> next(poly.size() + 1, Complex::zero(prec));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = next[i + 1] + poly[i];
            next[i] = next[i] - poly[i] * jv;
        }
        poly = std::move(next);
    }
    double max_err = 0;
    std::vector<BigInt> coeffs;
    coeffs.reserve(poly.size());
    for (const auto& cv : poly) {
        double err = 0;
        BigInt z = cv.re.round_to_integer(&err);
        max_err = std::max(max_err, err);
        max_err = std::max(max_err, std::fabs(cv.im.to_double()));
        // a coefficient wider than the working precision cannot be certified
        // to 0.5 absolute even if the representable value is an integer
        if (z != 0 && mpfr_prec_t(mpz_sizeinbase(z.get_mpz_t(), 2)) + 2 > prec)
            return std::nullopt;
        coeffs.push_back(std::move(z));
    }
    if (!(max_err < 0.5)) return std::nullopt;
    HilbertPoly out{D, PolyZ(std::move(coeffs)), long(forms.size()), max_err};
    if (!out.poly.is_monic() || out.poly.degree() != long(forms.size()))
        return std::nullopt;
    return out;
}

}  // namespace

HilbertPoly hilbert_class_poly(const BigInt& D, std::optional<mpfr_prec_t> precision) {
    const auto forms = reduced_forms(D);
    const long h = long(forms.size());
    if (precision) {
        auto r = hilbert_attempt(D, forms, *precision);
        if (!r) throw PrecisionError("hilbert_class_poly: rounding margin violated");
        return *r;
    }
    mpfr_prec_t prec = hilbert_default_precision(D, h);
    for (int tries = 0; tries < 6; ++tries) {
        auto r = hilbert_attempt(D, forms, prec);
        if (r) return *r;
        prec *= 2;
    }
    throw PrecisionError("hilbert_class_poly: rounding did not certify after adaptive doubling");
}

// ------------------------------------------------------------ direct test --

namespace {

// Worst-case genus factor product over t primes (the minimizing primes are
// the small ones; factors approach 1 as p grows).
double genus_product_floor(int t) {
    static const std::vector<double> sorted_factors = [] {
        std::vector<double> f;
        const PrimeSieve sieve(200);
        for (std::uint64_t p : sieve.primes()) {
            const std::uint64_t fl = std::uint64_t(2.0 * std::sqrt(double(p)));
            f.push_back(1.0 - double(fl) / double(p + 1));
        }
        std::sort(f.begin(), f.end());
        return f;
    }();
    double prod = 1.0;
    for (int i = 0; i < t && i < int(sorted_factors.size()); ++i) prod *= sorted_factors[i];
    return prod;
}

bool fundamental_tail_ok(long n, double lnX) {
    if (lnX <= 0) return false;
    int t_max = 0;
    while (std::pow(2.0, double(t_max)) <= double(n)) ++t_max;  // 2^(t-1) <= n for t <= t_max
    for (int t = 1; t <= t_max; ++t) {
        if ((1.0 / 7000.0) * lnX * genus_product_floor(t) <= double(n)) return false;
    }
    return true;
}

}  // namespace

bool nocm_tail_certified(long n, const BigInt& scanned) {
    if (scanned <= 16) return false;
    const double lnX = ln_abs(scanned);
    // conductors f with phi(f) <= 3n could still hide small fundamental parts
    long F = 1;
    for (long f = 1; f <= 2 * (3 * n + 1) * (3 * n + 1) + 16; ++f) {
        long phi = f, m = f;
        for (long p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            phi -= phi / p;
            while (m % p == 0) m /= p;
        }
        if (m > 1) phi -= phi / m;
        if (phi <= 3 * n) F = std::max(F, f);
    }
    const double lnX_reduced = lnX - 2.0 * std::log(double(F));
    return fundamental_tail_ok(n, lnX) && fundamental_tail_ok(3 * n, lnX_reduced);
}

DirectCmResult direct_cm_test(const CurveNF& E, const BigInt& d_cap) {
    const PolyQ jmin = E.j.minpoly();
    if (!is_algebraic_integer(jmin))
        return {DirectCmResult::Kind::no_cm, BigInt(0), BigInt(0), 0};
    const PolyZ jz = jmin.to_integer();
    const long n = jz.degree();

    DirectCmResult result{DirectCmResult::Kind::inconclusive, BigInt(0), BigInt(0), 0};
    for (BigInt absd(3);; ++absd) {
        const unsigned long r4 = mpz_fdiv_ui(absd.get_mpz_t(), 4);
        if (r4 != 0 && r4 != 3) continue;
        if (absd > d_cap) break;
        const BigInt D = -absd;
        result.scanned_upto = absd;
        if (class_number(D) != n) {
            if (nocm_tail_certified(n, absd)) {
                result.kind = DirectCmResult::Kind::no_cm;
                return result;
            }
            continue;
        }
        ++result.candidates_checked;
        const HilbertPoly H = hilbert_class_poly(D);
        if (H.poly == jz) {
            result.kind = DirectCmResult::Kind::cm;
            result.disc = D;
            return result;
        }
        if (nocm_tail_certified(n, absd)) {
            result.kind = DirectCmResult::Kind::no_cm;
            return result;
        }
    }
    return result;
}

}  // namespace cmcheck
