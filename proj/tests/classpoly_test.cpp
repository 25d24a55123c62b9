#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "cmcheck/classpoly.hpp"
#include "testutil.hpp"

using namespace cmcheck;

TEST_CASE("reduced form enumeration") {
    {
        const auto forms = reduced_forms(BigInt(-4));
        REQUIRE(forms.size() == 1);
        CHECK(forms[0] == QuadForm{1, 0, 1});
    }
    {
        const auto forms = reduced_forms(BigInt(-3));
        REQUIRE(forms.size() == 1);
        CHECK(forms[0] == QuadForm{1, 1, 1});
    }
    {
        const auto forms = reduced_forms(BigInt(-23));
        REQUIRE(forms.size() == 3);
        CHECK(forms[0] == QuadForm{1, 1, 6});
        CHECK(forms[1] == QuadForm{2, 1, 3});
        CHECK(forms[2] == QuadForm{2, -1, 3});
    }
    CHECK(class_number(BigInt(-47)) == 5);
    CHECK_THROWS_AS(reduced_forms(BigInt(5)), std::invalid_argument);
    CHECK_THROWS_AS(reduced_forms(BigInt(-5)), std::invalid_argument);  // -5 = 3 mod 4
}

TEST_CASE("form counts agree with the reduction-classifier oracle") {
    for (long absd = 3; absd <= 2000; ++absd) {
        if (absd % 4 != 0 && absd % 4 != 3) continue;
        CHECK(class_number(BigInt(-absd)) == testutil::class_number_oracle(absd));
    }
}

TEST_CASE("explicit class number lower bound") {
    // (1/55) ln 23 (1 - 9/24)
    CHECK(gzgo_bound(BigInt(-23)) == doctest::Approx(0.0356276).epsilon(1e-4));
    // (1/55) ln 4 (1 - 2/3)
    CHECK(gzgo_bound(BigInt(-4)) == doctest::Approx(0.0084018).epsilon(1e-4));
    // multiples of 5077 take the 1/7000 constant
    {
        const BigInt D(-3 * 5077);
        REQUIRE(is_fundamental_discriminant(D));
        const double f3 = 1.0 - 3.0 / 4.0;
        const double f5077 = 1.0 - 142.0 / 5078.0;
        CHECK(gzgo_bound(D) ==
              doctest::Approx((1.0 / 7000.0) * std::log(3.0 * 5077.0) * f3 * f5077).epsilon(1e-9));
    }
    CHECK_THROWS_AS(gzgo_bound(BigInt(-12)), std::invalid_argument);
}

TEST_CASE("effective lower bound") {
    CHECK(effective_h_lower_bound(BigInt(-4)) == doctest::Approx(1.0));
    // non-fundamental: exact enumeration (h(-12) = 1, the genus shortcut
    // would overshoot)
    CHECK(effective_h_lower_bound(BigInt(-12)) == doctest::Approx(1.0));
    CHECK(class_number(BigInt(-12)) == 1);
    // -5460 = -4 * 3 * 5 * 7 * 13: five prime divisors, h = 16
    CHECK(is_fundamental_discriminant(BigInt(-5460)));
    CHECK(class_number(BigInt(-5460)) == 16);
    CHECK(effective_h_lower_bound(BigInt(-5460)) >= 8.0);
    CHECK(double(class_number(BigInt(-5460))) >= effective_h_lower_bound(BigInt(-5460)));
}

TEST_CASE("h(D) respects the lower bound for fundamental D down to -3000") {
    for (long absd = 3; absd <= 3000; ++absd) {
        const BigInt D(-absd);
        if (!is_fundamental_discriminant(D)) continue;
        CHECK(double(class_number(D)) >= effective_h_lower_bound(D) - 1e-9);
    }
}

TEST_CASE("modular j values at CM points") {
    const mpfr_prec_t prec = 256;
    {
        // tau = i
        Tau tau{Real::of(0L, prec), Real::of(1L, prec)};
        const Complex j = eval_j(tau, prec);
        CHECK(j.re.to_double() == doctest::Approx(1728.0).epsilon(1e-20));
        CHECK(std::fabs(j.im.to_double()) < 1e-30);
    }
    {
        // tau = (1 + sqrt(-3))/2
        Tau tau{Real::of(0.5, prec), Real::of(3L, prec).sqrt() / Real::of(2L, prec)};
        const Complex j = eval_j(tau, prec);
        CHECK(std::fabs(j.re.to_double()) < 1e-30);
        CHECK(std::fabs(j.im.to_double()) < 1e-30);
    }
    {
        // tau = (1 + sqrt(-7))/2
        Tau tau{Real::of(0.5, prec), Real::of(7L, prec).sqrt() / Real::of(2L, prec)};
        const Complex j = eval_j(tau, prec);
        CHECK(j.re.to_double() == doctest::Approx(-3375.0).epsilon(1e-20));
    }
}

TEST_CASE("Hilbert class polynomials") {
    CHECK(hilbert_class_poly(BigInt(-4)).poly == testutil::zpoly({-1728, 1}));
    CHECK(hilbert_class_poly(BigInt(-3)).poly == testutil::zpoly({0, 1}));
    CHECK(hilbert_class_poly(BigInt(-7)).poly == testutil::zpoly({3375, 1}));

    // H_-23: roots reproduce eval_j at the three forms
    const HilbertPoly H = hilbert_class_poly(BigInt(-23));
    CHECK(H.h == 3);
    CHECK(H.max_rounding_error < 1e-6);
    const mpfr_prec_t prec = 384;
    for (const QuadForm& f : reduced_forms(BigInt(-23))) {
        const Complex jv = eval_j(tau_of_form(f, BigInt(-23), prec), prec);
        // evaluate H at jv
        Complex acc = Complex::zero(prec);
        for (int i = H.poly.degree(); i >= 0; --i) {
            acc = acc * jv;
            acc.re += Real::of(H.poly.coeff(i), prec);
        }
        const double rel = acc.abs().to_double() / std::max(1.0, jv.abs().pow_ui(3).to_double());
        CHECK(rel < 1e-6);
    }

    // too little precision cannot certify
    CHECK_THROWS_AS(hilbert_class_poly(BigInt(-23), mpfr_prec_t(16)), PrecisionError);
}

TEST_CASE("direct CM decision") {
    {
        const auto r = direct_cm_test(testutil::rational_curve(1, 0), BigInt(200));
        CHECK(r.kind == DirectCmResult::Kind::cm);
        CHECK(r.disc == -4);
    }
    {
        const auto r = direct_cm_test(testutil::rational_curve(0, 1), BigInt(200));
        CHECK(r.kind == DirectCmResult::Kind::cm);
        CHECK(r.disc == -3);
    }
    {
        // j = 1: no H_D ever equals x - 1; the scan checks every class-number-1
        // discriminant (all 13 lie above -200) and reports the cap honestly
        const auto F = testutil::rationals();
        const auto r = direct_cm_test(curve_from_j(testutil::nf_rat(F, 1)), BigInt(200));
        CHECK(r.kind == DirectCmResult::Kind::inconclusive);
        CHECK(r.candidates_checked == 13);
    }
    {
        // non-integral j short-circuits to a certified no
        const auto F = testutil::rationals();
        const auto r = direct_cm_test(curve_from_j(testutil::nf_rat(F, 1, 2)), BigInt(200));
        CHECK(r.kind == DirectCmResult::Kind::no_cm);
    }
}

TEST_CASE("CM round trip through a root of H_D") {
    // fundamental D with h <= 3, |D| <= 200: build L = Q[x]/H_D, take j = theta
    for (long absd : {3, 4, 7, 8, 11, 19, 43, 67, 163, 15, 20, 24, 35, 40, 51, 52, 88,
                      91, 115, 123, 148, 187, 23, 31, 59, 83, 107, 139}) {
        const BigInt D(-absd);
        REQUIRE(is_fundamental_discriminant(D));
        const HilbertPoly H = hilbert_class_poly(D);
        if (H.h > 3) continue;
        const auto spec = spec_from_j_poly(H.poly);
        const CurveNF E = build_curve(spec);
        const auto r = direct_cm_test(E, BigInt(absd + 8));
        CHECK(r.kind == DirectCmResult::Kind::cm);
        CHECK(r.disc == D);
    }
}

TEST_CASE("tail certification is honest about desk scale") {
    CHECK(!nocm_tail_certified(1, BigInt(1000)));
    CHECK(!nocm_tail_certified(1, BigInt(10'000'000)));
    // even 10^13000 fails the conductor-side condition
    BigInt enormous;
    mpz_ui_pow_ui(enormous.get_mpz_t(), 10, 13000);
    CHECK(!nocm_tail_certified(1, enormous));
    // the bound finally certifies around 10^110000
    BigInt huge;
    mpz_ui_pow_ui(huge.get_mpz_t(), 10, 120000);
    CHECK(nocm_tail_certified(1, huge));
}
