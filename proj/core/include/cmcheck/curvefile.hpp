#ifndef CMCHECK_CURVEFILE_HPP
#define CMCHECK_CURVEFILE_HPP

#include <string>

#include "cmcheck/ellcurve.hpp"

namespace cmcheck {

/// Parsed curve-input document: the field as a monic integer minimal
/// polynomial (coefficients low-to-high) and either (A, B) or j as rational
/// coordinate lists in the power basis of theta. Exactly one of the two
/// forms is present.
struct CurveSpec {
    std::vector<BigInt> field_minpoly;
    std::optional<std::vector<Rational>> A;
    std::optional<std::vector<Rational>> B;
    std::optional<std::vector<Rational>> j;
};

/// Parses the JSON document (integers may be JSON numbers or strings;
/// rationals are strings "n" or "n/d", canonical form). Throws InputError.
CurveSpec parse_curve_spec(const std::string& json_text);
CurveSpec load_curve_file(const std::string& path);

/// Canonical serialisation; parse(spec_to_json(s)) round-trips bit-exactly.
std::string spec_to_json(const CurveSpec& spec);

/// Field construction + curve assembly (curve_from_j when only j is given).
CurveNF build_curve(const CurveSpec& spec);

/// Convenience writers used by tests and the table-reproduction command.
CurveSpec spec_of_curve(const CurveNF& E);
CurveSpec spec_from_j_poly(const PolyZ& j_minpoly);

}  // namespace cmcheck

#endif
