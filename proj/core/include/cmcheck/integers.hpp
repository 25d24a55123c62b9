#ifndef CMCHECK_INTEGERS_HPP
#define CMCHECK_INTEGERS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cmcheck/errors.hpp"

namespace cmcheck {

// Exact arithmetic is delegated to GMP; these aliases are the only spelling
// used by the rest of the library.
using BigInt = mpz_class;
using Rational = mpq_class;

/// Extended Kronecker symbol (a|n). Equals the Legendre symbol for odd prime n.
/// Throws std::invalid_argument for n = 0.
int kronecker(const BigInt& a, const BigInt& n);

/// Primality test (BPSW + Miller-Rabin rounds; deterministic for the 64-bit
/// magnitudes used here).
bool is_prime(const BigInt& n);

/// Prime factorisation by trial division and Brent's cycle-finding rho.
/// Intended for the magnitudes arising from traces (|n| up to ~2^60).
/// Returns (prime, exponent) pairs for |n|; the sign is dropped.
std::vector<std::pair<BigInt, int>> factorize(const BigInt& n);

struct SquarefreeSplit {
    BigInt squarefree;   // s, sign matches the input
    BigInt square_root;  // f >= 1 with n = f^2 * s
};

/// Splits n = f^2 * s with s squarefree. Throws for n = 0.
SquarefreeSplit squarefree_part(const BigInt& n);

/// d < 0 and d = 0 or 1 (mod 4).
bool is_imaginary_discriminant(const BigInt& d);

/// d is the discriminant of the maximal order of an imaginary quadratic field.
bool is_fundamental_discriminant(const BigInt& d);

/// Discriminant of Q(sqrt(w)) for w < 0: with w = f^2 s, returns s when
/// s = 1 (mod 4) and 4s otherwise. Throws for w >= 0.
BigInt fundamentalize(const BigInt& w);

/// Fundamental part of a discriminant: d = f^2 * d0 with d0 fundamental.
struct DiscriminantSplit {
    BigInt fundamental;  // d0
    BigInt conductor;    // f
};
DiscriminantSplit split_discriminant(const BigInt& d);

/// Eratosthenes table of all primes <= limit.
class PrimeSieve {
  public:
    explicit PrimeSieve(std::uint64_t limit);

    const std::vector<std::uint64_t>& primes() const { return primes_; }
    std::uint64_t limit() const { return limit_; }
    bool contains(std::uint64_t n) const;
    /// Number of primes <= x (x <= limit).
    std::size_t count_upto(std::uint64_t x) const;

  private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
};

std::uint64_t to_u64(const BigInt& n);
long to_long(const BigInt& n);

/// Natural log of |n| as a double (n != 0), safe for values beyond double range.
double ln_abs(const BigInt& n);

}  // namespace cmcheck

#endif
