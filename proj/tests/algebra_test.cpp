#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmcheck/fp.hpp"
#include "cmcheck/fq.hpp"
#include "cmcheck/integers.hpp"
#include "cmcheck/poly.hpp"
#include "cmcheck/rng.hpp"
#include "testutil.hpp"

using namespace cmcheck;

namespace {

// oracle: quadratic character by exhaustive square enumeration mod an odd prime
int legendre_by_enumeration(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    for (long t = 1; t < p; ++t)
        if (t * t % p == a) return 1;
    return -1;
}

}  // namespace

TEST_CASE("kronecker symbol matches square enumeration at odd primes") {
    CHECK(kronecker(BigInt(-4), BigInt(5)) == legendre_by_enumeration(-4, 5));
    CHECK(kronecker(BigInt(-4), BigInt(5)) == 1);
    CHECK(kronecker(BigInt(-4), BigInt(7)) == legendre_by_enumeration(-4, 7));
    CHECK(kronecker(BigInt(-4), BigInt(7)) == -1);
    CHECK(kronecker(BigInt(9), BigInt(3)) == 0);
    CHECK_THROWS_AS(kronecker(BigInt(3), BigInt(0)), std::invalid_argument);

    for (long p : {5L, 13L, 97L, 101L}) {
        for (long a = -2 * p; a <= 2 * p; ++a) {
            CHECK(kronecker(BigInt(a), BigInt(p)) == legendre_by_enumeration(a, p));
        }
    }
}

TEST_CASE("kronecker equals the Euler criterion at odd primes") {
    Rng rng(7);
    for (std::uint64_t p : {5ull, 97ull, 1009ull}) {
        for (int i = 0; i < 200; ++i) {
            const std::uint64_t a = rng.below(10 * p);
            const std::uint64_t e = powmod(a % p, (p - 1) / 2, p);
            const int expected = (a % p == 0) ? 0 : (e == 1 ? 1 : -1);
            CHECK(kronecker(BigInt(static_cast<unsigned long>(a)),
                            BigInt(static_cast<unsigned long>(p))) == expected);
        }
    }
}

TEST_CASE("factorization mod p: spec instances") {
    {
        // x^2 + 1 mod 5 = (x+2)(x+3): derived by root search over F_5;
        // 3^2+1 = 10 = 0, (-2)^2+1 = 0
        const auto f = PolyFp(5, {1, 0, 1});
        const auto factors = factor_mod_p(f);
        REQUIRE(factors.size() == 2);
        CHECK(factors[0].factor == PolyFp(5, {2, 1}));
        CHECK(factors[1].factor == PolyFp(5, {3, 1}));
        CHECK(factors[0].multiplicity == 1);
    }
    {
        // x^2 + 1 mod 7: no root in F_7 (checked by the oracle below), degree 2
        for (long t = 0; t < 7; ++t) CHECK((t * t + 1) % 7 != 0);
        const auto factors = factor_mod_p(PolyFp(7, {1, 0, 1}));
        REQUIRE(factors.size() == 1);
        CHECK(factors[0].factor.degree() == 2);
        CHECK(factors[0].multiplicity == 1);
        CHECK(is_irreducible_mod_p(PolyFp(7, {1, 0, 1})));
    }
    {
        // x^2 mod 3 = (x)^2
        const auto factors = factor_mod_p(PolyFp(3, {0, 0, 1}));
        REQUIRE(factors.size() == 1);
        CHECK(factors[0].factor == PolyFp(3, {0, 1}));
        CHECK(factors[0].multiplicity == 2);
    }
}

TEST_CASE("factorization mod p: multiply-back on random polynomials") {
    Rng rng(42);
    for (std::uint64_t p : {5ull, 97ull, 1009ull}) {
        for (int trial = 0; trial < 334; ++trial) {
            const int deg = 1 + int(rng.below(8));
            std::vector<std::uint64_t> c(deg + 1);
            for (auto& v : c) v = rng.below(p);
            if (c.back() == 0) c.back() = 1;
            const PolyFp f(p, std::move(c));
            if (f.degree() < 1) continue;
            const auto factors = factor_mod_p(f);
            PolyFp prod = PolyFp::constant(p, f.lead());
            for (const auto& [g, m] : factors) {
                CHECK(g.is_monic());
                CHECK(is_irreducible_mod_p(g));
                for (int i = 0; i < m; ++i) prod = prod * g;
            }
            CHECK(prod == f);
        }
    }
}

TEST_CASE("encoding length") {
    CHECK(encoding_length(testutil::zpoly({-2, 1})) == doctest::Approx(2.0));
    CHECK(encoding_length(testutil::zpoly({0, 1})) == doctest::Approx(2.0));
    CHECK(encoding_length(testutil::zpoly({1, 0, 10})) ==
          doctest::Approx(std::log(10.0) + 2.0));
    CHECK_THROWS_AS(encoding_length(PolyZ()), std::invalid_argument);
}

TEST_CASE("weil weight and height bound") {
    {
        const auto w = weil_weight(testutil::zpoly({-2, 1}));
        CHECK(w.coefficient_sum == 3);
        CHECK(w.height_bound == doctest::Approx(std::log(3.0)));
    }
    {
        const auto w = weil_weight(testutil::zpoly({0, 1}));
        CHECK(w.coefficient_sum == 1);
        CHECK(w.height_bound == doctest::Approx(0.0));
    }
    {
        const auto w = weil_weight(testutil::zpoly({-1, -1, 1}));
        CHECK(w.coefficient_sum == 3);
        CHECK(w.height_bound == doctest::Approx(0.5 * std::log(3.0)));
    }
}

TEST_CASE("squarefree split") {
    {
        const auto s = squarefree_part(BigInt(-16));
        CHECK(s.squarefree == -1);
        CHECK(s.square_root == 4);
    }
    {
        const auto s = squarefree_part(BigInt(-12));
        CHECK(s.squarefree == -3);
        CHECK(s.square_root == 2);
    }
    {
        const auto s = squarefree_part(BigInt(7));
        CHECK(s.squarefree == 7);
        CHECK(s.square_root == 1);
    }
    CHECK_THROWS_AS(squarefree_part(BigInt(0)), std::invalid_argument);
}

TEST_CASE("fundamentalize") {
    CHECK(fundamentalize(BigInt(-16)) == -4);
    CHECK(fundamentalize(BigInt(-7)) == -7);
    CHECK(fundamentalize(BigInt(-64)) == -4);
    CHECK_THROWS_AS(fundamentalize(BigInt(4)), std::invalid_argument);

    // divisibility with square quotient holds on discriminant-shaped inputs
    // (w = a^2 - 4q is always 0 or 1 mod 4, which is the domain that matters)
    for (long w = -1; w >= -20000; --w) {
        const long r = ((w % 4) + 4) % 4;
        if (r != 0 && r != 1) continue;
        const BigInt d = fundamentalize(BigInt(w));
        CHECK(is_imaginary_discriminant(d));
        CHECK(BigInt(w) % d == 0);
        const BigInt q = BigInt(w) / d;
        CHECK(mpz_perfect_square_p(q.get_mpz_t()) != 0);
    }
}

TEST_CASE("fundamental discriminant recognition") {
    CHECK(is_fundamental_discriminant(BigInt(-4)));
    CHECK(is_fundamental_discriminant(BigInt(-3)));
    CHECK(is_fundamental_discriminant(BigInt(-163)));
    CHECK(!is_fundamental_discriminant(BigInt(-12)));
    CHECK(!is_fundamental_discriminant(BigInt(-16)));
    CHECK(!is_fundamental_discriminant(BigInt(-1)));
    const auto split = split_discriminant(BigInt(-48));
    CHECK(split.fundamental == -3);
    CHECK(split.conductor == 4);
}

TEST_CASE("extension field arithmetic: exhaustive inverses up to q = 121") {
    for (auto [p, d] : std::vector<std::pair<std::uint64_t, int>>{
             {5, 1}, {7, 1}, {11, 1}, {13, 1}, {113, 1}, {5, 2}, {7, 2}, {11, 2}}) {
        const auto ctx = FqContext::make(p, d);
        const std::uint64_t q = ctx->q.get_ui();
        REQUIRE(q <= 121 + 12673);  // guard against accidental huge loops
        const FqElem one = FqElem::one(ctx);
        for (std::uint64_t i = 1; i < q; ++i) {
            const FqElem x = FqElem::decode(ctx, i);
            CHECK(x * x.inverse() == one);
        }
    }
}

TEST_CASE("extension field arithmetic: field axioms on random triples") {
    Rng rng(11);
    const auto ctx = FqContext::make(7, 3);
    const std::uint64_t q = ctx->q.get_ui();
    for (int i = 0; i < 200; ++i) {
        const FqElem a = FqElem::decode(ctx, rng.below(q));
        const FqElem b = FqElem::decode(ctx, rng.below(q));
        const FqElem c = FqElem::decode(ctx, rng.below(q));
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
    // reproducible modulus choice
    const auto ctx2 = FqContext::make(7, 3);
    CHECK(ctx->modulus == ctx2->modulus);
}

TEST_CASE("prime sieve and factorization helpers") {
    const PrimeSieve sieve(100);
    CHECK(sieve.primes().size() == 25);
    CHECK(sieve.contains(97));
    CHECK(!sieve.contains(91));
    CHECK(sieve.count_upto(10) == 4);

    const auto f = factorize(BigInt(-277200));  // 2^4 3^2 5^2 7 11
    BigInt back(1);
    for (const auto& [p, e] : f) {
        CHECK(is_prime(p));
        for (int i = 0; i < e; ++i) back *= p;
    }
    CHECK(back == 277200);
}
