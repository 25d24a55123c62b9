#ifndef CMCHECK_ELLCURVE_HPP
#define CMCHECK_ELLCURVE_HPP

#include "cmcheck/numberfield.hpp"
#include "cmcheck/rng.hpp"

namespace cmcheck {

struct SingularCurveError : InputError {
    SingularCurveError() : InputError("singular curve: 4A^3 + 27B^2 = 0") {}
};

/// y^2 = x^3 + Ax + B over a number field, with the cached invariants
/// disc = -16(4A^3 + 27B^2) and j = -1728 (4A)^3 / disc.
struct CurveNF {
    NumberFieldPtr field;
    NfElem A, B;
    NfElem disc;
    NfElem j;
};

CurveNF make_curve(const NfElem& A, const NfElem& B);  // throws SingularCurveError

/// A model with the prescribed j-invariant: (3c, 2c) for c = j/(1728-j),
/// with the usual special cases at j = 0 and j = 1728.
CurveNF curve_from_j(const NfElem& j);

CurveNF quadratic_twist_nf(const CurveNF& E, const Rational& d);

/// y^2 = x^3 + ax + b over F_q, q = p^d, p >= 5.
struct CurveFq {
    FqContextPtr ctx;
    FqElem a, b;
};

/// Reduction of E at P. Nullopt when a coefficient denominator meets p, the
/// reduced curve is singular, or the residue characteristic is < 5
/// (all "bad reduction" for the caller's resampling loop).
std::optional<CurveFq> reduce_at_prime(const CurveNF& E, const PrimeIdeal& P);

/// #E(F_q) by exhaustive character sum; any q, intended for q <= ~2^20.
BigInt count_points_naive(const CurveFq& E);

/// #E(F_p) by baby-step/giant-step order finding in the Hasse interval.
/// Prime fields only; ambiguity is resolved by more points, then the
/// quadratic twist, then (as a last resort) the naive count.
BigInt count_points_bsgs(const CurveFq& E, Rng& rng);

/// Dispatch: naive below 2^16, BSGS above (prime fields); extension fields
/// are always counted naively.
BigInt count_points(const CurveFq& E, Rng& rng);
BigInt count_points(const CurveFq& E);  // deterministic internal seed

struct FrobeniusData {
    BigInt trace;        // a_P = q + 1 - #E(F_q)
    BigInt q;            // norm of the prime
    BigInt point_count;  // #E(F_q)
    bool supersingular;  // a_P = 0 mod p
};

FrobeniusData frobenius_data(const CurveFq& E, Rng& rng);
FrobeniusData frobenius_data(const CurveFq& E);

/// Twist by a non-square (deterministically chosen): a' = a g^2, b' = b g^3.
CurveFq quadratic_twist(const CurveFq& E);

/// l-division polynomial psi_l(x) for odd l >= 3 (degree (l^2-1)/2), via the
/// standard recurrence with y^2 folded to x^3 + Ax + B.
PolyFq division_polynomial(const CurveFq& E, int ell);
std::vector<NfElem> division_polynomial(const CurveNF& E, int ell);

}  // namespace cmcheck

#endif
