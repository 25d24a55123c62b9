#ifndef CMCHECK_NUMBERFIELD_HPP
#define CMCHECK_NUMBERFIELD_HPP

#include <memory>
#include <optional>

#include "cmcheck/fq.hpp"
#include "cmcheck/poly.hpp"

namespace cmcheck {

/// L = Q[x]/(T) for a monic irreducible integer polynomial T, elements on the
/// power basis of theta = x. Immutable; handed around by shared_ptr.
class NumberField {
  public:
    /// Verifies that T is monic and irreducible over Q. Irreducibility is
    /// certified by a prime p with T irreducible mod p when one exists below
    /// the search bound, otherwise by an exhaustive complex-root factor
    /// reconstruction (degree <= 8). Throws InputError on failure.
    static std::shared_ptr<const NumberField> make(const PolyZ& T);

    const PolyZ& minpoly() const { return T_; }
    int degree() const { return n_; }
    const BigInt& disc() const { return disc_; }
    bool is_rationals() const { return n_ == 1; }

  private:
    NumberField(PolyZ T, int n, BigInt disc)
        : T_(std::move(T)), n_(n), disc_(std::move(disc)) {}
    PolyZ T_;
    int n_;
    BigInt disc_;
};

using NumberFieldPtr = std::shared_ptr<const NumberField>;

/// Element of L as a rational polynomial in theta of degree < n.
class NfElem {
  public:
    NfElem(NumberFieldPtr field, PolyQ rep);
    static NfElem zero(NumberFieldPtr field);
    static NfElem one(NumberFieldPtr field);
    static NfElem from_rational(NumberFieldPtr field, const Rational& v);
    static NfElem theta(NumberFieldPtr field);

    const NumberFieldPtr& field() const { return field_; }
    const PolyQ& rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }
    bool is_rational() const { return rep_.degree() <= 0; }
    Rational rational_value() const;  // requires is_rational()

    NfElem operator+(const NfElem&) const;
    NfElem operator-(const NfElem&) const;
    NfElem operator*(const NfElem&) const;
    NfElem operator-() const;
    NfElem operator/(const NfElem&) const;
    bool operator==(const NfElem&) const;

    NfElem inverse() const;  // throws std::invalid_argument on zero

    /// Monic minimal polynomial over Q (degree divides n), via the Krylov
    /// sequence of multiplication by the element.
    PolyQ minpoly() const;

    /// Field norm N_{L/Q} as an exact rational (resultant of T with the
    /// denominator-cleared representative).
    Rational norm() const;

  private:
    NumberFieldPtr field_;
    PolyQ rep_;
};

NfElem make_const(const NfElem& like, long v);

/// Prime of O_L above p, presented by a monic irreducible factor g of
/// T mod p (Dedekind-Kummer). Residue degree d = deg g, norm p^d.
struct PrimeIdeal {
    NumberFieldPtr field;
    std::uint64_t p;
    PolyFp g;
    int residue_degree;
    int ramification;
    BigInt norm;
};

/// Dedekind-Kummer splitting of (p). Returns nullopt when p divides disc(T):
/// p could divide the index [O_L : Z[theta]] and the factorisation shape is
/// not trustworthy, so callers resample ("IndexRisk").
std::optional<std::vector<PrimeIdeal>> split_prime(const NumberFieldPtr& F, std::uint64_t p);

/// Splitting shape without the index guard; Sum e_i d_i = n always holds but
/// primes above p | disc(T) may be wrong about O_L. Survey denominators use it.
std::vector<PrimeIdeal> split_prime_unchecked(const NumberFieldPtr& F, std::uint64_t p);

/// Image of alpha in O_L/P = F_{p^d}. Nullopt when a coefficient denominator
/// is divisible by p (bad reduction signal).
std::optional<FqElem> reduce_element(const NfElem& alpha, const PrimeIdeal& P,
                                     const FqContextPtr& residue_field);

/// Residue field attached to a prime ideal.
FqContextPtr residue_field_of(const PrimeIdeal& P);

/// True iff the (primitive, content-normalised) minimal polynomial is monic,
/// i.e. the algebraic number is an algebraic integer.
bool is_algebraic_integer(const PolyZ& primitive_minpoly);
/// Convenience overload on the monic rational minimal polynomial.
bool is_algebraic_integer(const PolyQ& monic_minpoly);

}  // namespace cmcheck

#endif
