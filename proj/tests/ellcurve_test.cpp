#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmcheck/ellcurve.hpp"
#include "testutil.hpp"

using namespace cmcheck;
using testutil::rational_curve;

namespace {

// oracle: count points by scanning all (x, y) pairs
BigInt count_by_pairs(const CurveFq& E) {
    const std::uint64_t q = E.ctx->q.get_ui();
    BigInt n = 1;  // infinity
    for (std::uint64_t xi = 0; xi < q; ++xi) {
        const FqElem x = FqElem::decode(E.ctx, xi);
        const FqElem fx = x * x * x + E.a * x + E.b;
        for (std::uint64_t yi = 0; yi < q; ++yi) {
            const FqElem y = FqElem::decode(E.ctx, yi);
            if (y * y == fx) ++n;
        }
    }
    return n;
}

CurveFq curve_over_fp(std::uint64_t p, std::uint64_t a, std::uint64_t b) {
    const auto ctx = FqContext::make(p, 1);
    return CurveFq{ctx, FqElem::from_int(ctx, a), FqElem::from_int(ctx, b)};
}

}  // namespace

TEST_CASE("curve invariants") {
    {
        const CurveNF E = rational_curve(0, 1);
        CHECK(E.disc == testutil::nf_rat(E.field, -432));
        CHECK(E.j.is_zero());
    }
    {
        const CurveNF E = rational_curve(1, 0);
        CHECK(E.disc == testutil::nf_rat(E.field, -64));
        CHECK(E.j == testutil::nf_rat(E.field, 1728));
    }
    const auto F = testutil::rationals();
    CHECK_THROWS_AS(make_curve(testutil::nf_rat(F, 0), testutil::nf_rat(F, 0)),
                    SingularCurveError);
    // j disc identity: j * disc = -1728 (4A)^3
    const CurveNF E = rational_curve(-6, -4);
    const NfElem lhs = E.j * E.disc;
    const NfElem fourA = testutil::nf_rat(F, 4) * E.A;
    CHECK(lhs == testutil::nf_rat(F, -1728) * fourA * fourA * fourA);
}

TEST_CASE("curve_from_j") {
    const auto F = testutil::rationals();
    {
        const CurveNF E = curve_from_j(testutil::nf_rat(F, 0));
        CHECK(E.A.is_zero());
        CHECK(E.B == NfElem::one(F));
    }
    {
        const CurveNF E = curve_from_j(testutil::nf_rat(F, 1728));
        CHECK(E.A == NfElem::one(F));
        CHECK(E.B.is_zero());
    }
    {
        // c = 3456 / (1728 - 3456) = -2, so (A, B) = (-6, -4)
        const CurveNF E = curve_from_j(testutil::nf_rat(F, 3456));
        CHECK(E.A == testutil::nf_rat(F, -6));
        CHECK(E.B == testutil::nf_rat(F, -4));
        CHECK(E.j == testutil::nf_rat(F, 3456));
    }
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const Rational j(long(rng.below(100000)) - 50000, 1 + long(rng.below(97)));
        if (j == 0 || j == 1728) continue;
        const CurveNF E = curve_from_j(NfElem::from_rational(F, j));
        CHECK(E.j == NfElem::from_rational(F, j));
    }
}

TEST_CASE("point counts over small fields match the pair-scan oracle") {
    CHECK(count_points_naive(curve_over_fp(5, 1, 0)) == 4);
    CHECK(count_points_naive(curve_over_fp(7, 1, 0)) == 8);
    CHECK(count_points_naive(curve_over_fp(5, 0, 1)) == 6);
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull}) {
        for (std::uint64_t a = 0; a < 4; ++a) {
            for (std::uint64_t b = 1; b < 4; ++b) {
                const CurveFq E = curve_over_fp(p, a, b);
                CHECK(count_points_naive(E) == count_by_pairs(E));
            }
        }
    }
    // extension field: q = 25
    const auto ctx = FqContext::make(5, 2);
    const CurveFq E{ctx, FqElem::decode(ctx, 7), FqElem::decode(ctx, 11)};
    CHECK(count_points_naive(E) == count_by_pairs(E));
}

TEST_CASE("frobenius data") {
    {
        const auto f = frobenius_data(curve_over_fp(5, 1, 0));
        CHECK(f.trace == 2);
        CHECK(!f.supersingular);
        CHECK(f.point_count == 4);
    }
    {
        const auto f = frobenius_data(curve_over_fp(7, 1, 0));
        CHECK(f.trace == 0);
        CHECK(f.supersingular);
    }
    {
        // j = 0 curve at 7 = 2 mod 3: supersingular by the CM-by-(-3) law
        const auto f = frobenius_data(curve_over_fp(7, 0, 1));
        CHECK(f.supersingular);
        CHECK(f.point_count == count_by_pairs(curve_over_fp(7, 0, 1)));
    }
}

TEST_CASE("BSGS equals the naive count on random curves") {
    Rng rng(12345);
    for (std::uint64_t p : {101ull, 1009ull, 10007ull}) {
        const auto ctx = FqContext::make(p, 1);
        for (int i = 0; i < 167; ++i) {
            const std::uint64_t a = rng.below(p), b = rng.below(p);
            if ((4 * powmod(a, 3, p) + 27 * mulmod(b, b, p)) % p == 0) continue;
            const CurveFq E{ctx, FqElem::from_int(ctx, a), FqElem::from_int(ctx, b)};
            Rng prng = rng.fork(i);
            CHECK(count_points_bsgs(E, prng) == count_points_naive(E));
        }
    }
}

TEST_CASE("Deuring's law for y^2 = x^3 + x (CM by -4)") {
    const PrimeSieve sieve(2000);
    for (std::uint64_t p : sieve.primes()) {
        if (p < 5) continue;
        const auto f = frobenius_data(curve_over_fp(p, 1, 0));
        CHECK(f.supersingular == (p % 4 == 3));
    }
}

TEST_CASE("quadratic twist trace cancellation") {
    Rng rng(99);
    for (std::uint64_t p : {101ull, 1009ull}) {
        const auto ctx = FqContext::make(p, 1);
        for (int i = 0; i < 25; ++i) {
            const std::uint64_t a = rng.below(p), b = rng.below(p);
            if ((4 * powmod(a, 3, p) + 27 * mulmod(b, b, p)) % p == 0) continue;
            const CurveFq E{ctx, FqElem::from_int(ctx, a), FqElem::from_int(ctx, b)};
            const auto f = frobenius_data(E);
            const auto ft = frobenius_data(quadratic_twist(E));
            CHECK(f.trace + ft.trace == 0);
        }
    }
}

TEST_CASE("division polynomials") {
    const auto F = testutil::rationals();
    {
        const CurveNF E = rational_curve(2, 3);
        CHECK(division_polynomial(E, 1).size() == 1);
        // psi_3 = 3x^4 + 6Ax^2 + 12Bx - A^2
        const auto psi3 = division_polynomial(E, 3);
        REQUIRE(psi3.size() == 5);
        CHECK(psi3[0] == testutil::nf_rat(F, -4));
        CHECK(psi3[1] == testutil::nf_rat(F, 36));
        CHECK(psi3[2] == testutil::nf_rat(F, 12));
        CHECK(psi3[3].is_zero());
        CHECK(psi3[4] == testutil::nf_rat(F, 3));
        // degree (l^2 - 1)/2
        CHECK(division_polynomial(E, 5).size() == 13);
        CHECK(division_polynomial(E, 7).size() == 25);
        CHECK_THROWS_AS(division_polynomial(E, 4), std::invalid_argument);
    }
    {
        // root counts: gcd route equals brute evaluation
        for (auto [p, a, b] : std::vector<std::array<std::uint64_t, 3>>{
                 {7, 1, 0}, {7, 0, 1}, {11, 3, 5}, {13, 2, 2}}) {
            const CurveFq E = curve_over_fp(p, a, b);
            for (int ell : {3, 5}) {
                const PolyFq psi = division_polynomial(E, ell);
                int brute = 0;
                for (std::uint64_t x = 0; x < p; ++x)
                    if (psi.eval(FqElem::from_int(E.ctx, x)).is_zero()) ++brute;
                CHECK(count_roots(psi) == brute);
            }
        }
    }
    {
        // y^2 = x^3 + x over F_7: #E(F_7) = 8 and #E(F_49) = 64 are prime to 3,
        // and every root of psi_3 in F_7 would lift to 3-torsion over F_49,
        // so psi_3 has no roots in F_7
        const CurveFq E = curve_over_fp(7, 1, 0);
        const auto f7 = frobenius_data(E);
        CHECK(f7.point_count == 8);
        const BigInt n49 = f7.q * f7.q + 1 - (f7.trace * f7.trace - 2 * f7.q);
        CHECK(n49 == 64);
        CHECK(count_roots(division_polynomial(E, 3)) == 0);
    }
}

TEST_CASE("twist over the number field") {
    const CurveNF E = rational_curve(1, 0);
    const CurveNF Et = quadratic_twist_nf(E, Rational(3));
    CHECK(Et.j == E.j);  // twist preserves j
    CHECK(!(Et.A == E.A));
}
