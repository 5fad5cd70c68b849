#include "multdep/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace multdep {

namespace {

constexpr std::uint64_t kTrialDivisionBound = 10000;

// Witnesses 2..37 make Miller-Rabin deterministic below 3.3e24
// (Sorenson-Webster); the tail extends the set for larger inputs.
const unsigned kWitnesses[] = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                               29, 31, 37, 41, 43, 47, 53, 59, 61,
                               67, 71, 73, 79, 83, 89, 97};

std::mutex g_sieve_mutex;
std::shared_ptr<const std::vector<std::uint64_t>> g_sieve;  // guarded by g_sieve_mutex
std::uint64_t g_sieve_limit = 0;

std::vector<std::uint64_t> sieve_eratosthenes(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (std::uint64_t q = p * p; q <= limit; q += p) composite[q] = true;
    }
    return primes;
}

bool miller_rabin_witness(const Integer& n, const Integer& a, const Integer& d, unsigned long r) {
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Integer n1 = n - 1;
    if (x == 1 || x == n1) return false;
    for (unsigned long i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == n1) return false;
    }
    return true;  // composite witness found
}

// Pollard rho with Brent cycle detection. Deterministic parameter
// schedule so factorizations are reproducible. Input must be odd,
// composite and not a prime power of a tiny prime.
Integer pollard_rho_brent(const Integer& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned c = 1;; ++c) {
        Integer y = 2, g = 1, q = 1, x, ys;
        unsigned long r = 1;
        const unsigned long m = 128;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            for (unsigned long k = 0; k < r && g == 1; k += m) {
                ys = y;
                unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            do {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
        // cycle degenerated for this c, retry with the next increment
    }
}

void factor_recursive(const Integer& n, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Integer d = pollard_rho_brent(n);
    factor_recursive(d, out);
    factor_recursive(n / d, out);
}

std::mutex g_psi_mutex;
std::unordered_map<std::uint64_t, std::uint64_t> g_psi_memo;  // key = x * 2^17 + k

// rec(x, k) = psi(x, p_k) with the canonical prime ordering, so memo
// entries are shared between calls with different y.
std::uint64_t psi_rec(std::uint64_t x, std::uint32_t k,
                      const std::vector<std::uint64_t>& primes) {
    if (x == 0) return 0;
    if (k == 0 || x == 1) return 1;
    while (k > 0 && primes[k - 1] > x) --k;  // primes above x contribute nothing
    if (k == 0) return 1;
    std::uint64_t key = (x << 17) | k;
    {
        std::lock_guard<std::mutex> lock(g_psi_mutex);
        auto it = g_psi_memo.find(key);
        if (it != g_psi_memo.end()) return it->second;
    }
    std::uint64_t value = psi_rec(x, k - 1, primes) + psi_rec(x / primes[k - 1], k, primes);
    {
        std::lock_guard<std::mutex> lock(g_psi_mutex);
        g_psi_memo.emplace(key, value);
    }
    return value;
}

}  // namespace

Integer Factorization::value() const {
    Integer v = sign;
    for (const auto& [p, e] : factors) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

std::shared_ptr<const std::vector<std::uint64_t>> primes_upto(std::uint64_t limit) {
    std::lock_guard<std::mutex> lock(g_sieve_mutex);
    if (!g_sieve || g_sieve_limit < limit) {
        std::uint64_t new_limit = std::max<std::uint64_t>(limit, std::max<std::uint64_t>(2 * g_sieve_limit, 1024));
        g_sieve = std::make_shared<const std::vector<std::uint64_t>>(sieve_eratosthenes(new_limit));
        g_sieve_limit = new_limit;
    }
    return g_sieve;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (mpz_even_p(n.get_mpz_t())) return false;
    for (unsigned a : kWitnesses)
        if (n == a) return true;

    Integer d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
    for (unsigned a : kWitnesses) {
        if (mpz_cmp_ui(n.get_mpz_t(), a) == 0) return true;
        if (miller_rabin_witness(n, Integer(a), d, r)) return false;
    }
    return true;
}

Factorization factorize(const Integer& n) {
    if (n == 0) throw std::domain_error("factorize: input must be nonzero");

    Factorization result;
    result.sign = sgn(n) < 0 ? -1 : 1;

    Integer m = abs(n);
    if (m == 1) return result;

    std::map<Integer, unsigned> acc;
    auto primes = primes_upto(kTrialDivisionBound);
    for (std::uint64_t p : *primes) {
        if (p > kTrialDivisionBound) break;
        if (Integer(p) * p > m) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        if (e) acc.emplace(Integer(p), e);
        if (m == 1) break;
    }
    if (m > 1) factor_recursive(m, acc);

    result.factors.assign(acc.begin(), acc.end());
    return result;
}

Integer largest_prime_factor(const Integer& n) {
    if (abs(n) < 2)
        throw std::domain_error("largest_prime_factor: undefined for 0 and units");
    return factorize(n).factors.back().first;
}

Integer nth_prime(std::uint64_t i) {
    if (i == 0) throw std::domain_error("nth_prime: index is 1-based");
    // p_i < i (ln i + ln ln i) for i >= 6
    std::uint64_t bound = 16;
    if (i >= 6) {
        double di = static_cast<double>(i);
        bound = static_cast<std::uint64_t>(di * (std::log(di) + std::log(std::log(di)))) + 2;
    }
    auto primes = primes_upto(bound);
    while (primes->size() < i) {
        bound *= 2;
        primes = primes_upto(bound);
    }
    return Integer(static_cast<unsigned long>((*primes)[i - 1]));
}

std::uint64_t psi_exact(std::uint64_t x, std::uint64_t y) {
    if (x < 1) throw std::domain_error("psi_exact: x must be >= 1");
    if (y < 2) throw std::domain_error("psi_exact: y must be >= 2");
    if (y >= x) return x;
    if (x >= (std::uint64_t{1} << 47)) throw std::domain_error("psi_exact: x too large");
    auto primes = primes_upto(y);
    std::uint32_t k = 0;
    while (k < primes->size() && (*primes)[k] <= y) ++k;
    if (k >= (1u << 17)) throw std::domain_error("psi_exact: y too large");
    return psi_rec(x, k, *primes);
}

std::vector<std::uint64_t> psi_sieve_table(std::uint64_t x_max, std::uint64_t y) {
    if (x_max < 1) throw std::domain_error("psi_sieve: x must be >= 1");
    if (y < 2) throw std::domain_error("psi_sieve: y must be >= 2");
    if (x_max > 10'000'000) throw std::domain_error("psi_sieve: x capped at 10^7, use psi_exact");

    // lpf[k] ends up holding P+(k); lpf[1] stays 1.
    std::vector<std::uint32_t> lpf(x_max + 1, 1);
    for (std::uint64_t p = 2; p <= x_max; ++p) {
        if (lpf[p] != 1) continue;
        for (std::uint64_t q = p; q <= x_max; q += p) lpf[q] = static_cast<std::uint32_t>(p);
    }
    std::vector<std::uint64_t> table(x_max + 1, 0);
    for (std::uint64_t k = 1; k <= x_max; ++k)
        table[k] = table[k - 1] + (lpf[k] <= y ? 1 : 0);
    return table;
}

std::uint64_t psi_sieve(std::uint64_t x, std::uint64_t y) {
    return psi_sieve_table(x, y).back();
}

BruijnZ bruijn_Z(double x, double y) {
    if (!(y > 2.0) || !(y <= x) || !(x > std::exp(1.0)))
        throw std::domain_error("bruijn_Z: requires 2 < y <= x, x > e");
    double lx = std::log(x);
    double ly = std::log(y);
    double Z = std::log1p(y / lx) * (lx / ly) + std::log1p(lx / y) * (y / ly);
    return {Z, lx / ly};
}

}  // namespace multdep
