#ifndef CMCHECK_REAL_HPP
#define CMCHECK_REAL_HPP

#include <string>

#include <mpfr.h>

#include "cmcheck/integers.hpp"

namespace cmcheck {

/// RAII wrapper over an mpfr_t with value semantics. Binary operations
/// compute at the larger of the operand precisions.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 64);
    Real(const Real&);
    Real(Real&&) noexcept;
    Real& operator=(const Real&);
    Real& operator=(Real&&) noexcept;
    ~Real();

    static Real of(long v, mpfr_prec_t prec);
    static Real of(double v, mpfr_prec_t prec);
    static Real of(const BigInt& v, mpfr_prec_t prec);
    static Real pi(mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    Real operator+(const Real&) const;
    Real operator-(const Real&) const;
    Real operator*(const Real&) const;
    Real operator/(const Real&) const;
    Real operator-() const;

    Real& operator+=(const Real& o) { return *this = *this + o; }
    Real& operator-=(const Real& o) { return *this = *this - o; }
    Real& operator*=(const Real& o) { return *this = *this * o; }
    Real& operator/=(const Real& o) { return *this = *this / o; }

    int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const Real& o) const { return cmp(o) < 0; }
    bool operator>(const Real& o) const { return cmp(o) > 0; }
    bool operator<=(const Real& o) const { return cmp(o) <= 0; }
    bool operator>=(const Real& o) const { return cmp(o) >= 0; }

    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }

    Real abs() const;
    Real sqrt() const;
    Real exp() const;
    Real log() const;
    Real sin() const;
    Real cos() const;
    Real pow_ui(unsigned long e) const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Nearest integer and the distance to it.
    BigInt round_to_integer(double* error = nullptr) const;

    std::string str(std::size_t digits = 20) const;

  private:
    mpfr_t v_;
};

struct Complex {
    Real re, im;

    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    static Complex zero(mpfr_prec_t prec);
    static Complex one(mpfr_prec_t prec);

    Complex operator+(const Complex&) const;
    Complex operator-(const Complex&) const;
    Complex operator*(const Complex&) const;
    Complex operator/(const Complex&) const;

    Real abs2() const { return re * re + im * im; }
    Real abs() const { return abs2().sqrt(); }
};

}  // namespace cmcheck

#endif
