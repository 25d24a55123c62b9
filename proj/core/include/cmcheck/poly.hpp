#ifndef CMCHECK_POLY_HPP
#define CMCHECK_POLY_HPP

#include <string>
#include <vector>

#include "cmcheck/integers.hpp"

namespace cmcheck {

/// Dense univariate polynomial over Z, coefficients low-to-high,
/// normalized so the top coefficient is nonzero (zero poly has no coefficients).
class PolyZ {
  public:
    PolyZ() = default;
    explicit PolyZ(std::vector<BigInt> coeffs);
    static PolyZ x();
    static PolyZ constant(const BigInt& c);

    int degree() const { return int(c_.size()) - 1; }  // -1 for the zero polynomial
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const BigInt& lead() const { return c_.back(); }
    const BigInt& coeff(std::size_t i) const;
    const std::vector<BigInt>& coeffs() const { return c_; }

    PolyZ operator+(const PolyZ&) const;
    PolyZ operator-(const PolyZ&) const;
    PolyZ operator*(const PolyZ&) const;
    PolyZ operator-() const;
    bool operator==(const PolyZ&) const = default;

    BigInt eval(const BigInt& x) const;
    PolyZ derivative() const;
    BigInt content() const;  // gcd of coefficients, 0 for zero poly
    PolyZ primitive_part() const;

    std::string str() const;  // human-readable, for diagnostics

  private:
    std::vector<BigInt> c_;
    void normalize();
};

/// Dense univariate polynomial over Q.
class PolyQ {
  public:
    PolyQ() = default;
    explicit PolyQ(std::vector<Rational> coeffs);
    static PolyQ from(const PolyZ&);
    static PolyQ x();
    static PolyQ constant(const Rational& c);

    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const Rational& lead() const { return c_.back(); }
    const Rational& coeff(std::size_t i) const;
    const std::vector<Rational>& coeffs() const { return c_; }

    PolyQ operator+(const PolyQ&) const;
    PolyQ operator-(const PolyQ&) const;
    PolyQ operator*(const PolyQ&) const;
    PolyQ operator-() const;
    bool operator==(const PolyQ&) const = default;

    Rational eval(const Rational& x) const;
    PolyQ derivative() const;
    PolyQ monic() const;

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<PolyQ, PolyQ> divrem(const PolyQ& divisor) const;

    /// Multiplies through by the lcm of denominators; result is primitive
    /// times the returned scale: this = (num / den) * primitive-ish PolyZ.
    PolyZ clear_denominators() const;
    /// True when every coefficient is an integer.
    bool is_integral() const;
    PolyZ to_integer() const;

  private:
    std::vector<Rational> c_;
    void normalize();
};

/// Encoding length sum over all indices 0..deg: max(1, ln |a_i|), with zero
/// coefficients contributing 1. Throws for the zero polynomial.
double encoding_length(const PolyZ& f);

struct WeilWeight {
    BigInt coefficient_sum;  // w = sum |a_i|
    double height_bound;     // (1/deg) ln w
};

/// Coefficient-sum weight of a minimal polynomial and the induced upper
/// bound on the Weil height of its roots. Throws for the zero polynomial.
WeilWeight weil_weight(const PolyZ& f);

/// Resultant of two nonzero rational polynomials (Euclidean algorithm).
Rational resultant(PolyQ a, PolyQ b);

/// Discriminant of a monic integer polynomial:
/// (-1)^{n(n-1)/2} Res(T, T').
BigInt discriminant_of_monic(const PolyZ& T);

}  // namespace cmcheck

#endif
