#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmcheck/cmtest.hpp"
#include "cmcheck/gl2.hpp"
#include "testutil.hpp"

using namespace cmcheck;

namespace {

GL2 mat(std::uint16_t ell, int a, int b, int c, int d) {
    auto norm = [ell](int v) { return std::uint16_t(((v % ell) + ell) % ell); };
    return GL2{ell, {norm(a), norm(b), norm(c), norm(d)}};
}

std::vector<GL2> gl2_generators(std::uint16_t ell) {
    // SL2 generators plus a determinant-surjective diagonal
    std::uint16_t g = 2;
    while (true) {
        // primitive root search
        std::uint64_t x = g;
        std::size_t order = 1;
        while (x != 1) {
            x = x * g % ell;
            ++order;
        }
        if (order == std::size_t(ell - 1)) break;
        ++g;
    }
    return {mat(ell, 1, 1, 0, 1), mat(ell, 0, -1, 1, 0), mat(ell, g, 0, 0, 1)};
}

Subgroup borel(std::uint16_t ell) {
    std::vector<GL2> gens;
    for (std::uint16_t a = 1; a < ell; ++a)
        for (std::uint16_t d = 1; d < ell; ++d) gens.push_back(mat(ell, a, 0, 0, d));
    gens.push_back(mat(ell, 1, 1, 0, 1));
    return generate_subgroup(gens);
}

// brute oracle over all ell^4 matrices
Rational trace_zero_ratio_oracle(std::uint16_t ell) {
    std::uint64_t zero_trace = 0, invertible = 0;
    for (std::uint32_t a = 0; a < ell; ++a)
        for (std::uint32_t b = 0; b < ell; ++b)
            for (std::uint32_t c = 0; c < ell; ++c)
                for (std::uint32_t d = 0; d < ell; ++d) {
                    const std::uint32_t det = (a * d % ell + ell - b * c % ell) % ell;
                    if (det == 0) continue;
                    ++invertible;
                    if ((a + d) % ell == 0) ++zero_trace;
                }
    Rational r(BigInt(static_cast<unsigned long>(zero_trace)),
               BigInt(static_cast<unsigned long>(invertible)));
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("subgroup generation") {
    CHECK(generate_subgroup({GL2::identity(5)}).order() == 1);
    CHECK(generate_subgroup({mat(5, 0, -1, 1, 0)}).order() == 4);
    // SL2(F_5) from the standard generators
    const Subgroup sl2 = generate_subgroup({mat(5, 1, 1, 0, 1), mat(5, 0, -1, 1, 0)});
    CHECK(sl2.order() == 120);
    for (std::uint16_t ell : {3, 5, 7}) {
        const Subgroup full = generate_subgroup(gl2_generators(ell));
        const std::uint64_t e2 = std::uint64_t(ell) * ell;
        CHECK(full.order() == (e2 - 1) * (e2 - ell));
    }
    CHECK_THROWS_AS(generate_subgroup({mat(17, 1, 1, 0, 1)}), CapabilityError);
    CHECK_THROWS_AS(generate_subgroup({mat(5, 1, 1, 1, 1)}), std::invalid_argument);
}

TEST_CASE("solvability by derived series") {
    CHECK(is_solvable(generate_subgroup(gl2_generators(3))));            // GL2(F_3)
    CHECK(!is_solvable(generate_subgroup({mat(5, 1, 1, 0, 1), mat(5, 0, -1, 1, 0)})));
    CHECK(is_solvable(borel(7)));
    CHECK(!is_solvable(generate_subgroup(gl2_generators(5))));
    CHECK(!is_solvable(generate_subgroup(gl2_generators(7))));
}

TEST_CASE("trace-zero ratio") {
    {
        const Rational r3 = trace_zero_ratio(3);
        CHECK(r3 == Rational(3, 8));
    }
    {
        const Rational r5 = trace_zero_ratio(5);
        CHECK(r5 == Rational(5, 24));
    }
    const PrimeSieve sieve(31);
    Rational prev(1);
    for (std::uint64_t ell : sieve.primes()) {
        if (ell < 3) continue;
        const Rational r = trace_zero_ratio(std::uint16_t(ell));
        CHECK(r == trace_zero_ratio_oracle(std::uint16_t(ell)));
        CHECK(r * Rational(long(ell)) <= 2);
        CHECK(r < prev);  // decreasing along the computed range
        prev = r;
    }
    CHECK_THROWS_AS(trace_zero_ratio(4), std::invalid_argument);
    CHECK_THROWS_AS(trace_zero_ratio(101), std::invalid_argument);
}

TEST_CASE("frobenius observations") {
    const CurveNF E = testutil::rational_curve(1, 0);
    const auto split5 = split_prime(E.field, 5);
    REQUIRE(split5.has_value());
    {
        const auto obs = frobenius_obs(E, split5->front(), 7);
        REQUIRE(obs.has_value());
        CHECK(obs->t == 2);
        CHECK(obs->n == 5);
        CHECK(obs->disc() == 5);  // 4 - 20 = -16 = 5 mod 7
    }
    {
        const auto split7 = split_prime(E.field, 7);
        REQUIRE(split7.has_value());
        CHECK(!frobenius_obs(E, split7->front(), 7).has_value());  // p = ell: skip
    }
    {
        const auto split13 = split_prime(E.field, 13);
        REQUIRE(split13.has_value());
        const auto obs = frobenius_obs(E, split13->front(), 5);
        REQUIRE(obs.has_value());
        const auto frob = frobenius_data(*reduce_at_prime(E, split13->front()));
        CHECK((frob.trace == 6 || frob.trace == -6));
        CHECK(obs->t == std::uint16_t(mpz_fdiv_ui(frob.trace.get_mpz_t(), 5)));
        CHECK(obs->n == 3);
    }
}

TEST_CASE("witness classification matches the stated predicate") {
    const std::uint16_t ell = 7;
    // squares mod 7: 1, 2, 4
    {
        const auto w = classify_obs(ell, 3, 1);  // disc 9 - 4 = 5: nonsquare
        CHECK(!w.split_semisimple);
        CHECK(w.nonsplit_semisimple);
    }
    {
        const auto w = classify_obs(ell, 3, 2);  // disc 9 - 8 = 1: square
        CHECK(w.split_semisimple);
        CHECK(!w.nonsplit_semisimple);
    }
    {
        const auto w = classify_obs(ell, 0, 3);  // trace zero: neither
        CHECK(!w.split_semisimple);
        CHECK(!w.nonsplit_semisimple);
    }
    // u = t^2/n = 3 (projective order 6) qualifies for the order witness
    {
        const auto w = classify_obs(ell, 3, 3);  // u = 9/3 = 3
        CHECK(w.large_projective_order);
    }
    // u = 4 is a unipotent/scalar marker: excluded
    {
        const auto w = classify_obs(ell, 2, 1);  // u = 4
        CHECK(!w.large_projective_order);
    }
}

TEST_CASE("nonsolvable certificate on curves") {
    SamplerConfig cfg;
    cfg.x_max = 10000;
    cfg.mode = SamplerMode::exact_uniform;
    const PrimeSieve sieve(10000);

    auto gather = [&](const CurveNF& E, std::uint16_t ell, int want, Rng& rng) {
        std::vector<CharPolyObs> obs;
        for (int i = 0; i < want; ++i) {
            const auto P = sample_prime(E.field, sieve, cfg, 10000, rng, nullptr);
            if (P.p == ell) continue;
            const auto o = frobenius_obs(E, P, ell);
            if (o) obs.push_back(*o);
        }
        return obs;
    };

    {
        // CM curve: never certified (images are solvable)
        Rng rng(501);
        const auto obs = gather(testutil::rational_curve(1, 0), 7, 100, rng);
        const auto cert = nonsolvable_certificate(obs, 7);
        CHECK(cert.outcome == CertOutcome::insufficient);
        // witness (i) and (ii) require nonzero trace off the Cartan coset
        CHECK(!(cert.witnesses.split_semisimple && cert.witnesses.nonsplit_semisimple &&
                cert.witnesses.large_projective_order));
    }
    {
        // generic curve: certified quickly
        const auto F = testutil::rationals();
        Rng rng(502);
        const auto obs = gather(curve_from_j(testutil::nf_rat(F, 1)), 7, 100, rng);
        const auto cert = nonsolvable_certificate(obs, 7);
        CHECK(cert.outcome == CertOutcome::certified);
    }
    CHECK_THROWS_AS(nonsolvable_certificate({}, 3), std::invalid_argument);
}

TEST_CASE("maximal solvable subgroups never carry a full witness triple") {
    // Borel and the two Cartan normalizers at ell = 7
    const std::uint16_t ell = 7;
    std::vector<Subgroup> groups;
    groups.push_back(borel(ell));
    {
        // split Cartan normalizer: diagonals + the swap
        std::vector<GL2> gens;
        for (std::uint16_t a = 1; a < ell; ++a)
            for (std::uint16_t d = 1; d < ell; ++d) gens.push_back(mat(ell, a, 0, 0, d));
        gens.push_back(mat(ell, 0, 1, 1, 0));
        groups.push_back(generate_subgroup(gens));
    }
    {
        // nonsplit Cartan normalizer: x + y sqrt(eps) acting on F_49, eps = 3
        // (3 is a non-residue mod 7), plus the conjugation
        std::vector<GL2> gens;
        const int eps = 3;
        for (int x = 0; x < ell; ++x)
            for (int y = 0; y < ell; ++y) {
                if (x == 0 && y == 0) continue;
                gens.push_back(mat(ell, x, y * eps, y, x));
            }
        gens.push_back(mat(ell, 1, 0, 0, -1));
        groups.push_back(generate_subgroup(gens));
    }
    for (const auto& G : groups) {
        CHECK(is_solvable(G));
        WitnessState ws;
        for (std::uint32_t code : G.elements) {
            const GL2 g = GL2::decode(ell, code);
            const auto w = classify_obs(ell, std::uint16_t(g.trace()), std::uint16_t(g.det()));
            ws.split_semisimple |= w.split_semisimple;
            ws.nonsplit_semisimple |= w.nonsplit_semisimple;
            ws.large_projective_order |= w.large_projective_order;
        }
        CHECK(!ws.complete());
    }
}

TEST_CASE("Masser-Wustholz floor") {
    CHECK(mw_ell_floor(1, 1.0, 1.0, 1.0, BigInt(1)) == 5);
    CHECK(mw_ell_floor(3, 10.0, 2.0, 1.0, BigInt(-8)) == 23);
    CHECK_THROWS_AS(mw_ell_floor(3, 10.0, 2.0, 0.0, BigInt(-8)), ConfigError);
    // skips primes dividing the field discriminant
    CHECK(mw_ell_floor(1, 1.0, 1.0, 1.0, BigInt(-5)) == 7);
}
