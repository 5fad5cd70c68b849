#ifndef MULTDEP_ARITH_HPP
#define MULTDEP_ARITH_HPP

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace multdep {

using Integer = mpz_class;
using Rational = mpq_class;

/// Sign plus sorted (prime, exponent) pairs. value() reconstructs the
/// original integer exactly; 1 is (+1, []) and -1 is (-1, []).
struct Factorization {
    int sign = 1;
    std::vector<std::pair<Integer, unsigned>> factors;

    Integer value() const;
};

// Exact factorization of a nonzero integer: trial division by primes
// <= 10^4, then Pollard rho (Brent) with deterministic Miller-Rabin.
// Throws std::domain_error on zero input.
Factorization factorize(const Integer& n);

// Deterministic Miller-Rabin with a fixed small-prime witness set.
bool is_prime(const Integer& n);

// P+(n): the largest prime factor. Requires |n| >= 2; units are a
// domain error, callers treating them specially must branch first.
Integer largest_prime_factor(const Integer& n);

// p_i, 1-based: nth_prime(1) = 2. Throws on i = 0.
Integer nth_prime(std::uint64_t i);

// Shared growable sieve. The returned snapshot is immutable; concurrent
// callers may hold snapshots of different lengths.
std::shared_ptr<const std::vector<std::uint64_t>> primes_upto(std::uint64_t limit);

// psi(x, y) = #{1 <= k <= x : P+(k) <= y}, with P+(1) = 1 counted as
// smooth. psi_exact uses the recurrence
//   psi(x, p_k) = psi(x, p_{k-1}) + psi(x/p_k, p_k)
// with a process-wide memo table; psi_sieve enumerates with a
// largest-prime-factor sieve (x <= 10^7). The two paths cross-check
// each other.
std::uint64_t psi_exact(std::uint64_t x, std::uint64_t y);
std::uint64_t psi_sieve(std::uint64_t x, std::uint64_t y);

// table[k] = psi(k, y) for 0 <= k <= x_max (table[0] = 0).
std::vector<std::uint64_t> psi_sieve_table(std::uint64_t x_max, std::uint64_t y);

/// De Bruijn's main term for log psi(x,y), natural logarithms, together
/// with u = log x / log y.
struct BruijnZ {
    double Z;
    double u;
};

// Requires 2 < y <= x (and x > e so the logarithms behave).
BruijnZ bruijn_Z(double x, double y);

}  // namespace multdep

#endif
