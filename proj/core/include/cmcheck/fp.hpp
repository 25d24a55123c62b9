#ifndef CMCHECK_FP_HPP
#define CMCHECK_FP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "cmcheck/integers.hpp"
#include "cmcheck/poly.hpp"

namespace cmcheck {

// Scalar arithmetic mod p for p < 2^62.
std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);
std::uint64_t reduce_mod(const BigInt& a, std::uint64_t p);
/// Image of a rational with denominator coprime to p; nullopt otherwise.
std::optional<std::uint64_t> reduce_mod(const Rational& a, std::uint64_t p);

/// Legendre symbol (a|p) for odd prime p, in {-1, 0, 1}.
int legendre(std::uint64_t a, std::uint64_t p);
/// Square root mod odd prime p (Tonelli-Shanks); nullopt for non-residues.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

/// Dense polynomial over F_p, coefficients low-to-high in [0, p).
class PolyFp {
  public:
    PolyFp() : p_(0) {}
    explicit PolyFp(std::uint64_t p) : p_(p) {}
    PolyFp(std::uint64_t p, std::vector<std::uint64_t> coeffs);
    static PolyFp x(std::uint64_t p);
    static PolyFp constant(std::uint64_t p, std::uint64_t c);
    /// Reduction of an integer polynomial mod p.
    static PolyFp from(const PolyZ& f, std::uint64_t p);

    std::uint64_t p() const { return p_; }
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::uint64_t lead() const { return c_.back(); }
    std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    PolyFp operator+(const PolyFp&) const;
    PolyFp operator-(const PolyFp&) const;
    PolyFp operator*(const PolyFp&) const;
    bool operator==(const PolyFp&) const = default;

    PolyFp monic() const;
    std::pair<PolyFp, PolyFp> divrem(const PolyFp& divisor) const;
    PolyFp mod(const PolyFp& m) const { return divrem(m).second; }
    PolyFp derivative() const;
    std::uint64_t eval(std::uint64_t x) const;

    std::string str() const;

  private:
    std::uint64_t p_;
    std::vector<std::uint64_t> c_;
    void normalize();
};

PolyFp gcd(PolyFp a, PolyFp b);  // monic gcd
/// base^e mod m with a big-integer exponent.
PolyFp powmod(const PolyFp& base, const BigInt& e, const PolyFp& m);

struct FpFactor {
    PolyFp factor;  // monic irreducible
    int multiplicity;
};

/// Full factorisation over F_p (squarefree split, distinct-degree, then
/// equal-degree splitting). The internal randomness is seeded from the input,
/// so the result is a pure function of (f, p). Factors are sorted.
std::vector<FpFactor> factor_mod_p(const PolyFp& f);

bool is_irreducible_mod_p(const PolyFp& f);

/// Monic irreducible of degree d over F_p, first in lexicographic order of
/// the non-leading coefficient vector (low coefficients most significant).
PolyFp find_irreducible(std::uint64_t p, int d);

}  // namespace cmcheck

#endif
