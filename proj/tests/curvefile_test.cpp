#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmcheck/curvefile.hpp"
#include "cmcheck/rng.hpp"
#include "testutil.hpp"

using namespace cmcheck;

TEST_CASE("curve files parse and build") {
    const std::string doc = R"({
        "field_minpoly": [1, 0, 1],
        "A": ["1", "1/2"],
        "B": ["2"]
    })";
    const CurveSpec spec = parse_curve_spec(doc);
    REQUIRE(spec.A.has_value());
    CHECK(spec.field_minpoly.size() == 3);
    CHECK((*spec.A)[1] == Rational(1, 2));
    const CurveNF E = build_curve(spec);
    CHECK(E.field->degree() == 2);
    CHECK(E.B == testutil::nf_rat(E.field, 2));
}

TEST_CASE("curve files accept a j-invariant form") {
    const std::string doc = R"({"field_minpoly": [0, 1], "j": ["3456"]})";
    const CurveNF E = build_curve(parse_curve_spec(doc));
    CHECK(E.j == testutil::nf_rat(E.field, 3456));
}

TEST_CASE("curve file validation errors") {
    CHECK_THROWS_AS(parse_curve_spec("not json"), InputError);
    CHECK_THROWS_AS(parse_curve_spec("[]"), InputError);
    CHECK_THROWS_AS(parse_curve_spec(R"({"field_minpoly": [0, 1]})"), InputError);
    CHECK_THROWS_AS(parse_curve_spec(R"({"field_minpoly": [0, 1], "A": ["1"]})"), InputError);
    CHECK_THROWS_AS(
        parse_curve_spec(R"({"field_minpoly": [0, 1], "A": ["1"], "B": ["2"], "j": ["3"]})"),
        InputError);
    CHECK_THROWS_AS(parse_curve_spec(R"({"field_minpoly": [0, 1], "j": ["1/0"]})"), InputError);
    CHECK_THROWS_AS(parse_curve_spec(R"({"field_minpoly": [0, 1], "j": [true]})"), InputError);
    // singular curve
    CHECK_THROWS_AS(build_curve(parse_curve_spec(
                        R"({"field_minpoly": [0, 1], "A": ["0"], "B": ["0"]})")),
                    InputError);
    // reducible field polynomial
    CHECK_THROWS_AS(build_curve(parse_curve_spec(
                        R"({"field_minpoly": [-1, 0, 1], "A": ["1"], "B": ["1"]})")),
                    InputError);
}

TEST_CASE("serialisation round-trips bit-exactly") {
    Rng rng(2024);
    for (int i = 0; i < 50; ++i) {
        CurveSpec spec;
        spec.field_minpoly = {BigInt(1), BigInt(0), BigInt(1)};
        std::vector<Rational> a(2), b(1);
        for (auto& v : a) {
            v = Rational(long(rng.below(2001)) - 1000, 1 + long(rng.below(40)));
            v.canonicalize();
        }
        b[0] = Rational(long(rng.below(2001)) - 1000);
        spec.A = a;
        spec.B = b;
        const std::string text = spec_to_json(spec);
        const CurveSpec back = parse_curve_spec(text);
        CHECK(back.field_minpoly == spec.field_minpoly);
        CHECK(*back.A == *spec.A);
        CHECK(*back.B == *spec.B);
        CHECK(spec_to_json(back) == text);  // canonical form is a fixed point
    }
}

TEST_CASE("spec_of_curve inverts build_curve") {
    const auto Qi = testutil::gaussian();
    const CurveNF E = make_curve(NfElem::theta(Qi) + testutil::nf_rat(Qi, 1),
                                 testutil::nf_rat(Qi, 3, 7));
    const CurveSpec spec = spec_of_curve(E);
    const CurveNF F = build_curve(spec);
    CHECK(F.A == E.A);
    CHECK(F.B == E.B);
    CHECK(F.j == E.j);
}

TEST_CASE("spec_from_j_poly builds the root field") {
    const CurveSpec spec = spec_from_j_poly(testutil::zpoly({-51, -22, -33, -65, -12, 1}));
    const CurveNF E = build_curve(spec);
    CHECK(E.field->degree() == 5);
    CHECK(E.j == NfElem::theta(E.field));
}
