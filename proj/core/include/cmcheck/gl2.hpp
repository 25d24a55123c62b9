#ifndef CMCHECK_GL2_HPP
#define CMCHECK_GL2_HPP

#include <array>
#include <optional>

#include "cmcheck/ellcurve.hpp"

namespace cmcheck {

/// Invertible 2x2 matrix over F_ell, row-major [a b; c d].
struct GL2 {
    std::uint16_t ell;
    std::array<std::uint16_t, 4> m;

    std::uint32_t trace() const { return (m[0] + m[3]) % ell; }
    std::uint32_t det() const;
    std::uint32_t encode() const;  // ((a ell + b) ell + c) ell + d
    static GL2 decode(std::uint16_t ell, std::uint32_t code);
    static GL2 identity(std::uint16_t ell);

    GL2 operator*(const GL2&) const;
    GL2 inverse() const;
    bool operator==(const GL2&) const = default;
};

struct Subgroup {
    std::uint16_t ell;
    std::vector<GL2> generators;
    std::vector<std::uint32_t> elements;  // sorted encodes, closed set

    std::size_t order() const { return elements.size(); }
    bool contains(const GL2& g) const;
};

inline constexpr int kMaxClosureEll = 13;

/// Closure of the generators under multiplication (finiteness gives
/// inverses). Throws CapabilityError for ell > 13.
Subgroup generate_subgroup(const std::vector<GL2>& gens);

/// Closure that abandons once more than `cap` elements appear (for sweeps
/// that only care about subgroups below a size bound).
std::optional<Subgroup> generate_subgroup_capped(const std::vector<GL2>& gens, std::size_t cap);

/// Derived series G > [G,G] > ... reaches {1}.
bool is_solvable(const Subgroup& G);

/// (#invertible trace-zero matrices) / #GL2(F_ell), exact. ell odd prime <= 97.
Rational trace_zero_ratio(std::uint16_t ell);

/// Frobenius observation: (a_P mod ell, N(P) mod ell) at a prime of good
/// reduction with p != ell.
struct CharPolyObs {
    std::uint16_t ell;
    std::uint16_t t;  // trace mod ell
    std::uint16_t n;  // norm mod ell (determinant of Frobenius), nonzero
    std::uint64_t source_p;
    int source_degree;

    std::uint16_t disc() const;  // t^2 - 4n mod ell
};

/// Nullopt is the "skip" signal: p = ell or bad reduction.
std::optional<CharPolyObs> frobenius_obs(const CurveNF& E, const PrimeIdeal& P, std::uint16_t ell);
CharPolyObs obs_from_frobenius(const FrobeniusData& frob, std::uint64_t p, int degree,
                               std::uint16_t ell);

/// The three element classes that jointly rule out every solvable subgroup
/// of GL2(F_ell), ell >= 5:
///  (i)  t != 0 and t^2 - 4n a nonzero square   (kills nonsplit Cartan normalizers)
///  (ii) t != 0 and t^2 - 4n a nonsquare        (kills Borel and split Cartan normalizers)
///  (iii) u = t^2/n outside {0,1,2,4} with u^2 - 3u + 1 != 0
///       (projective order > 5 and != ell: kills the exceptional groups)
struct WitnessState {
    bool split_semisimple = false;    // (i)
    bool nonsplit_semisimple = false; // (ii)
    bool large_projective_order = false;  // (iii)

    bool complete() const {
        return split_semisimple && nonsplit_semisimple && large_projective_order;
    }
    void absorb(const CharPolyObs& o);
};

/// Which witness classes an observation falls into (same predicate used by
/// the exhaustive soundness sweep).
WitnessState classify_obs(std::uint16_t ell, std::uint16_t t, std::uint16_t n);

enum class CertOutcome { certified, insufficient };

struct NonsolvableCertificate {
    CertOutcome outcome;
    WitnessState witnesses;
    long observations = 0;
};

/// Certified means: the observed Frobenius traces cannot all lie in a
/// solvable subgroup, so the mod-ell image is non-solvable and the curve has
/// no CM. ell must be >= 5 (SL2(F_3) is solvable).
NonsolvableCertificate nonsolvable_certificate(const std::vector<CharPolyObs>& obs,
                                               std::uint16_t ell);

/// Smallest prime >= max(c max(d,h)^gamma, 5) not dividing disc(L).
std::uint64_t mw_ell_floor(long degree, double height, double c, double gamma,
                           const BigInt& field_disc);

}  // namespace cmcheck

#endif
