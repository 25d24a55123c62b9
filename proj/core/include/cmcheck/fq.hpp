#ifndef CMCHECK_FQ_HPP
#define CMCHECK_FQ_HPP

#include <memory>

#include "cmcheck/fp.hpp"

namespace cmcheck {

/// Residue field F_{p^d} = F_p[x]/(modulus). Characteristic >= 5 only.
struct FqContext {
    std::uint64_t p;
    int d;
    PolyFp modulus;  // monic irreducible of degree d
    BigInt q;        // p^d

    /// Canonical context: modulus from the deterministic lexicographic search,
    /// so the same (p, d) always yields the same field presentation.
    static std::shared_ptr<const FqContext> make(std::uint64_t p, int d);
    /// Context with a caller-supplied modulus (e.g. the factor of T mod p
    /// attached to a prime ideal).
    static std::shared_ptr<const FqContext> make(PolyFp modulus);
};

using FqContextPtr = std::shared_ptr<const FqContext>;

class FqElem {
  public:
    FqElem(FqContextPtr ctx, PolyFp rep);
    static FqElem zero(FqContextPtr ctx);
    static FqElem one(FqContextPtr ctx);
    static FqElem from_int(FqContextPtr ctx, std::uint64_t v);

    const FqContextPtr& ctx() const { return ctx_; }
    const PolyFp& rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }

    FqElem operator+(const FqElem&) const;
    FqElem operator-(const FqElem&) const;
    FqElem operator*(const FqElem&) const;
    FqElem operator-() const;
    bool operator==(const FqElem&) const;

    FqElem inverse() const;  // throws std::invalid_argument on zero
    FqElem pow(const BigInt& e) const;
    bool is_square() const;  // true for zero

    /// Flat index sum c_i p^i in [0, p^d); inverse of decode.
    std::uint64_t encode() const;
    static FqElem decode(FqContextPtr ctx, std::uint64_t index);

  private:
    FqContextPtr ctx_;
    PolyFp rep_;  // reduced mod modulus
};

FqElem make_const(const FqElem& like, long v);

/// Dense polynomial over F_q (used for division polynomials and root counts).
class PolyFq {
  public:
    explicit PolyFq(FqContextPtr ctx) : ctx_(std::move(ctx)) {}
    PolyFq(FqContextPtr ctx, std::vector<FqElem> coeffs);
    static PolyFq x(FqContextPtr ctx);
    static PolyFq constant(const FqElem& c);

    const FqContextPtr& ctx() const { return ctx_; }
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const FqElem& lead() const { return c_.back(); }
    FqElem coeff(std::size_t i) const;
    const std::vector<FqElem>& coeffs() const { return c_; }

    PolyFq operator+(const PolyFq&) const;
    PolyFq operator-(const PolyFq&) const;
    PolyFq operator*(const PolyFq&) const;
    bool operator==(const PolyFq&) const;

    PolyFq monic() const;
    std::pair<PolyFq, PolyFq> divrem(const PolyFq& divisor) const;
    PolyFq mod(const PolyFq& m) const { return divrem(m).second; }
    FqElem eval(const FqElem& x) const;

  private:
    FqContextPtr ctx_;
    std::vector<FqElem> c_;
    void normalize();
};

PolyFq gcd(PolyFq a, PolyFq b);
PolyFq powmod(const PolyFq& base, const BigInt& e, const PolyFq& m);

/// Number of distinct roots of f in F_q, via deg gcd(x^q - x, f).
int count_roots(const PolyFq& f);

}  // namespace cmcheck

#endif
