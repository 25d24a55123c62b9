#ifndef CMCHECK_CLASSPOLY_HPP
#define CMCHECK_CLASSPOLY_HPP

#include <optional>

#include "cmcheck/ellcurve.hpp"
#include "cmcheck/real.hpp"

namespace cmcheck {

/// Primitive reduced binary quadratic form (a, b, c), b^2 - 4ac = D < 0,
/// |b| <= a <= c with b >= 0 on the boundary.
struct QuadForm {
    std::int64_t a, b, c;
    auto operator<=>(const QuadForm&) const = default;
};

/// All primitive reduced forms of discriminant D (enumeration by bounds,
/// no reduction algorithm involved). Throws for D >= 0 or D != 0,1 mod 4.
std::vector<QuadForm> reduced_forms(const BigInt& D);

/// h(D) = number of primitive reduced forms.
long class_number(const BigInt& D);

/// Explicit class number lower bound for a negative fundamental discriminant:
/// (1/7000 or 1/55) ln|D| prod_{p|D} (1 - floor(2 sqrt p)/(p+1)), the
/// constant depending on gcd(D, 5077).
double gzgo_bound(const BigInt& D);

/// Lower bound on h(D) for any negative discriminant: for fundamental D the
/// maximum of gzgo_bound and the genus-theory divisor 2^(t-1); for
/// non-fundamental D the exact class number by enumeration.
double effective_h_lower_bound(const BigInt& D);

/// Upper half-plane point (-b + sqrt(D)) / (2a) attached to a form.
struct Tau {
    Real re, im;
};

Tau tau_of_form(const QuadForm& f, const BigInt& D, mpfr_prec_t prec);

/// j(tau) = E4(q)^3 / Delta(q), q = e^{2 pi i tau}, with the q-series
/// truncated so the tail is below 2^-(prec/2). tau must lie in the standard
/// fundamental domain range (as produced by reduced forms). Throws
/// PrecisionError if the tail bound cannot be met.
Complex eval_j(const Tau& tau, mpfr_prec_t prec);

struct HilbertPoly {
    BigInt D;
    PolyZ poly;  // monic, degree h(D)
    long h;
    double max_rounding_error;  // max distance of any coefficient from Z (and from R)
};

/// Default working precision for H_D: pi sqrt|D| h / ln 2 + 64 bits.
mpfr_prec_t hilbert_default_precision(const BigInt& D, long h);

/// H_D = prod (x - j(tau_F)) over reduced forms F, rounded to Z[x]. With an
/// explicit precision a rounding margin >= 0.5 throws PrecisionError; with
/// the default, precision doubles adaptively until the rounding certifies.
HilbertPoly hilbert_class_poly(const BigInt& D, std::optional<mpfr_prec_t> precision = {});

struct DirectCmResult {
    enum class Kind { cm, no_cm, inconclusive } kind;
    BigInt disc;          // set when kind == cm
    BigInt scanned_upto;  // largest |D| examined
    long candidates_checked = 0;
};

/// Exhaustive scan over discriminants |D| ascending: CM(D) on an exact
/// minimal-polynomial match with H_D; NoCM when j is not an algebraic
/// integer or the class-number lower bound certifies exhaustion below the
/// cap; Inconclusive when |D| passes d_cap first.
DirectCmResult direct_cm_test(const CurveNF& E, const BigInt& d_cap);

/// Whether the bound-based tail argument certifies h(D') > n for every
/// discriminant with |D'| > scanned (exposed for tests; at desk scale this
/// only holds for astronomically large `scanned`).
bool nocm_tail_certified(long n, const BigInt& scanned);

}  // namespace cmcheck

#endif
