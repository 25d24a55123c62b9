#include "cmcheck/curvefile.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cmcheck {

namespace {

using json = nlohmann::ordered_json;

BigInt parse_integer(const json& v, const char* where) {
    try {
        if (v.is_number_integer()) return BigInt(v.get<long>());
        if (v.is_string()) return BigInt(v.get<std::string>());
    } catch (const std::exception&) {
    }
    throw InputError(std::string("curve file: bad integer in ") + where);
}

Rational parse_rational(const json& v, const char* where) {
    try {
        if (v.is_number_integer()) return Rational(BigInt(v.get<long>()));
        if (v.is_string()) {
            Rational r(v.get<std::string>());
            if (r.get_den() == 0)
                throw InputError(std::string("curve file: zero denominator in ") + where);
            r.canonicalize();
            return r;
        }
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("curve file: bad rational in ") + where);
}

std::vector<Rational> parse_rational_list(const json& v, const char* where) {
    if (!v.is_array()) throw InputError(std::string("curve file: ") + where + " must be a list");
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(parse_rational(e, where));
    return out;
}

std::string rational_str(const Rational& r) {
    return r.get_den() == 1 ? r.get_num().get_str() : r.get_str();
}

json rational_list_json(const std::vector<Rational>& v) {
    json arr = json::array();
    for (const auto& r : v) arr.push_back(rational_str(r));
    return arr;
}

}  // namespace

CurveSpec parse_curve_spec(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const std::exception& e) {
        throw InputError(std::string("curve file: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("curve file: top level must be an object");
    if (!doc.contains("field_minpoly"))
        throw InputError("curve file: missing field_minpoly");
    CurveSpec spec;
    const auto& mp = doc["field_minpoly"];
    if (!mp.is_array() || mp.empty())
        throw InputError("curve file: field_minpoly must be a nonempty list");
    for (const auto& e : mp) spec.field_minpoly.push_back(parse_integer(e, "field_minpoly"));

    const bool has_ab = doc.contains("A") || doc.contains("B");
    const bool has_j = doc.contains("j");
    if (has_ab == has_j)
        throw InputError("curve file: exactly one of (A, B) or j must be present");
    if (has_ab) {
        if (!doc.contains("A") || !doc.contains("B"))
            throw InputError("curve file: A and B must both be present");
        spec.A = parse_rational_list(doc["A"], "A");
        spec.B = parse_rational_list(doc["B"], "B");
    } else {
        spec.j = parse_rational_list(doc["j"], "j");
    }
    return spec;
}

CurveSpec load_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("curve file: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_curve_spec(buf.str());
}

std::string spec_to_json(const CurveSpec& spec) {
    json doc;
    json mp = json::array();
    for (const auto& c : spec.field_minpoly) {
        if (c.fits_slong_p())
            mp.push_back(c.get_si());
        else
            mp.push_back(c.get_str());
    }
    doc["field_minpoly"] = std::move(mp);
    if (spec.A) {
        doc["A"] = rational_list_json(*spec.A);
        doc["B"] = rational_list_json(*spec.B);
    } else {
        doc["j"] = rational_list_json(*spec.j);
    }
    return doc.dump();
}

CurveNF build_curve(const CurveSpec& spec) {
    PolyZ T((std::vector<BigInt>(spec.field_minpoly)));
    NumberFieldPtr F = NumberField::make(T);
    auto element = [&](const std::vector<Rational>& coords) {
        if (int(coords.size()) > F->degree())
            throw InputError("curve file: coordinate list longer than the field degree");
        return NfElem(F, PolyQ((std::vector<Rational>(coords))));
    };
    if (spec.A) {
        try {
            return make_curve(element(*spec.A), element(*spec.B));
        } catch (const SingularCurveError&) {
            throw InputError("curve file: singular curve (4A^3 + 27B^2 = 0)");
        }
    }
    return curve_from_j(element(*spec.j));
}

namespace {

std::vector<Rational> coords_of(const NfElem& v, int n) {
    std::vector<Rational> out(std::size_t(n), Rational(0));
    for (int i = 0; i <= v.rep().degree(); ++i) out[std::size_t(i)] = v.rep().coeff(i);
    // trim trailing zeros for a canonical short form
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

}  // namespace

CurveSpec spec_of_curve(const CurveNF& E) {
    CurveSpec spec;
    for (const auto& c : E.field->minpoly().coeffs()) spec.field_minpoly.push_back(c);
    spec.A = coords_of(E.A, E.field->degree());
    spec.B = coords_of(E.B, E.field->degree());
    return spec;
}

CurveSpec spec_from_j_poly(const PolyZ& j_minpoly) {
    CurveSpec spec;
    for (const auto& c : j_minpoly.coeffs()) spec.field_minpoly.push_back(c);
    // j = theta, the root of the supplied polynomial
    std::vector<Rational> j(std::size_t(std::max(1, j_minpoly.degree())), Rational(0));
    if (j_minpoly.degree() >= 2)
        j[1] = 1;
    else
        j[0] = -Rational(j_minpoly.coeff(0));  // degree 1: theta = -a0
    while (j.size() > 1 && j.back() == 0) j.pop_back();
    spec.j = std::move(j);
    return spec;
}

}  // namespace cmcheck
