#include "cmcheck/real.hpp"

#include <algorithm>
#include <cmath>

namespace cmcheck {

Real::Real(mpfr_prec_t prec) { mpfr_init2(v_, std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN)); mpfr_set_zero(v_, 1); }

Real::Real(const Real& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, o.prec());
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::of(long v, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

Real Real::of(double v, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}

Real Real::of(const BigInt& v, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real Real::pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

namespace {
mpfr_prec_t join(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

Real Real::operator+(const Real& o) const {
    Real r(join(*this, o));
    mpfr_add(r.raw(), v_, o.v_, MPFR_RNDN);
    return r;
}

Real Real::operator-(const Real& o) const {
    Real r(join(*this, o));
    mpfr_sub(r.raw(), v_, o.v_, MPFR_RNDN);
    return r;
}

Real Real::operator*(const Real& o) const {
    Real r(join(*this, o));
    mpfr_mul(r.raw(), v_, o.v_, MPFR_RNDN);
    return r;
}

Real Real::operator/(const Real& o) const {
    Real r(join(*this, o));
    mpfr_div(r.raw(), v_, o.v_, MPFR_RNDN);
    return r;
}

Real Real::operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::abs() const {
    Real r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::sqrt() const {
    Real r(prec());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::exp() const {
    Real r(prec());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::log() const {
    Real r(prec());
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::sin() const {
    Real r(prec());
    mpfr_sin(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::cos() const {
    Real r(prec());
    mpfr_cos(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::pow_ui(unsigned long e) const {
    Real r(prec());
    mpfr_pow_ui(r.v_, v_, e, MPFR_RNDN);
    return r;
}

BigInt Real::round_to_integer(double* error) const {
    Real rounded(prec());
    mpfr_round(rounded.v_, v_);
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), rounded.v_, MPFR_RNDN);
    if (error) {
        Real diff = *this - rounded;
        *error = std::fabs(diff.to_double());
    }
    return z;
}

std::string Real::str(std::size_t digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", int(digits), v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Complex Complex::zero(mpfr_prec_t prec) { return {Real(prec), Real(prec)}; }

Complex Complex::one(mpfr_prec_t prec) { return {Real::of(1L, prec), Real(prec)}; }

Complex Complex::operator+(const Complex& o) const { return {re + o.re, im + o.im}; }

Complex Complex::operator-(const Complex& o) const { return {re - o.re, im - o.im}; }

Complex Complex::operator*(const Complex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
}

Complex Complex::operator/(const Complex& o) const {
    const Real n = o.abs2();
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
}

}  // namespace cmcheck
