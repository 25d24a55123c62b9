#include "cmcheck/integers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

namespace cmcheck {

int kronecker(const BigInt& a, const BigInt& n) {
    if (n == 0) throw std::invalid_argument("kronecker: n must be nonzero");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return std::uint64_t((unsigned __int128)a * b % m);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Brent's variant of Pollard rho; n composite, odd, not a prime power issue
// handled by the caller's recursion.
std::uint64_t pollard_brent(std::uint64_t n, std::uint64_t salt) {
    if (n % 2 == 0) return 2;
    std::uint64_t y = salt % n, c = 1 + salt % (n - 1), m = 128;
    std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
        for (std::uint64_t k = 0; k < r && g == 1; k += m) {
            ys = y;
            const std::uint64_t bound = std::min(m, r - k);
            for (std::uint64_t i = 0; i < bound; ++i) {
                y = (mulmod_u64(y, y, n) + c) % n;
                q = mulmod_u64(q, x > y ? x - y : y - x, n);
            }
            g = gcd_u64(q, n);
        }
        r <<= 1;
    }
    if (g == n) {
        do {
            ys = (mulmod_u64(ys, ys, n) + c) % n;
            g = gcd_u64(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

void factor_u64_into(std::uint64_t n, std::map<std::uint64_t, int>& out) {
    if (n == 1) return;
    BigInt nz(static_cast<unsigned long>(n));
    if (is_prime(nz)) {
        out[n]++;
        return;
    }
    std::uint64_t d = n;
    for (std::uint64_t salt = 2; d == n; ++salt) d = pollard_brent(n, salt);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

}  // namespace

std::vector<std::pair<BigInt, int>> factorize(const BigInt& n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be nonzero");
    BigInt m = abs(n);
    std::map<std::uint64_t, int> small;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            small[p]++;
        }
    }
    for (std::uint64_t p = 17; p < 10000 && m > 1; p += 2) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                small[p]++;
            }
        }
    }
    if (m > 1) {
        if (!m.fits_ulong_p())
            throw CapabilityError("factorize: residual cofactor exceeds 64 bits");
        factor_u64_into(m.get_ui(), small);
    }
    std::vector<std::pair<BigInt, int>> result;
    result.reserve(small.size());
    for (const auto& [p, e] : small) result.emplace_back(BigInt(static_cast<unsigned long>(p)), e);
    return result;
}

SquarefreeSplit squarefree_part(const BigInt& n) {
    if (n == 0) throw std::invalid_argument("squarefree_part: n must be nonzero");
    BigInt s = 1, f = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e % 2 == 1) s *= p;
        BigInt half;
        mpz_pow_ui(half.get_mpz_t(), p.get_mpz_t(), e / 2);
        f *= half;
    }
    if (n < 0) s = -s;
    return {s, f};
}

bool is_imaginary_discriminant(const BigInt& d) {
    if (d >= 0) return false;
    const unsigned long r = mpz_fdiv_ui(d.get_mpz_t(), 4);
    return r == 0 || r == 1;
}

bool is_fundamental_discriminant(const BigInt& d) {
    if (!is_imaginary_discriminant(d)) return false;
    if (mpz_fdiv_ui(d.get_mpz_t(), 4) == 1) {
        return squarefree_part(d).square_root == 1;
    }
    BigInt m = d / 4;
    const unsigned long r = mpz_fdiv_ui(m.get_mpz_t(), 4);
    return (r == 2 || r == 3) && squarefree_part(m).square_root == 1;
}

BigInt fundamentalize(const BigInt& w) {
    if (w >= 0) throw std::invalid_argument("fundamentalize: w must be negative");
    const BigInt s = squarefree_part(w).squarefree;
    if (mpz_fdiv_ui(s.get_mpz_t(), 4) == 1) return s;
    return 4 * s;
}

DiscriminantSplit split_discriminant(const BigInt& d) {
    if (!is_imaginary_discriminant(d))
        throw std::invalid_argument("split_discriminant: not an imaginary quadratic discriminant");
    const BigInt d0 = fundamentalize(d);
    BigInt ratio = d / d0;
    // d = f^2 d0: the ratio is an exact square because d and d0 are both
    // 0 or 1 mod 4 with the same squarefree kernel.
    BigInt f = sqrt(ratio);
    if (f * f != ratio)
        throw std::logic_error("split_discriminant: conductor extraction failed");
    return {d0, f};
}

PrimeSieve::PrimeSieve(std::uint64_t limit) : limit_(limit) {
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
        if (composite[i]) continue;
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) primes_.push_back(i);
}

bool PrimeSieve::contains(std::uint64_t n) const {
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::size_t PrimeSieve::count_upto(std::uint64_t x) const {
    return std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin();
}

std::uint64_t to_u64(const BigInt& n) {
    if (n < 0 || !n.fits_ulong_p()) throw std::invalid_argument("to_u64: out of range");
    return n.get_ui();
}

long to_long(const BigInt& n) {
    if (!n.fits_slong_p()) throw std::invalid_argument("to_long: out of range");
    return n.get_si();
}

double ln_abs(const BigInt& n) {
    if (n == 0) throw std::invalid_argument("ln_abs: zero");
    signed long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(std::fabs(mant)) + double(exp2) * std::log(2.0);
}

}  // namespace cmcheck
