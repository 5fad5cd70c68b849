#include "multdep/relations.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace multdep {

namespace {

void check_vector(const std::vector<Rational>& nu) {
    if (nu.empty()) throw std::invalid_argument("need at least one coordinate");
    for (const auto& v : nu)
        if (v == 0) throw std::domain_error("coordinates must be nonzero");
}

Rational canonical(const Rational& v) {
    Rational c = v;
    c.canonicalize();
    return c;
}

// Fraction-free (Bareiss) elimination to row echelon form, in place.
// Returns the pivot column of each eliminated row.
std::vector<std::size_t> echelonize(std::vector<std::vector<Integer>>& a) {
    std::vector<std::size_t> pivot_cols;
    if (a.empty()) return pivot_cols;
    std::size_t rows = a.size(), cols = a[0].size();
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Integer t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivot_cols.push_back(c);
        ++r;
    }
    return pivot_cols;
}

// Machine-word Bareiss; false return means an intermediate overflowed
// and the caller must redo the elimination with big integers.
bool rank_i64(std::vector<std::vector<std::int64_t>>& a, std::size_t& rank_out) {
    std::size_t rows = a.size(), cols = a[0].size();
    std::int64_t prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                std::int64_t x, y;
                if (__builtin_mul_overflow(a[r][c], a[i][j], &x)) return false;
                if (__builtin_mul_overflow(a[i][c], a[r][j], &y)) return false;
                if (__builtin_sub_overflow(x, y, &x)) return false;
                a[i][j] = x / prev;  // exact by Bareiss
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    rank_out = r;
    return true;
}

void primitivize(std::vector<Integer>& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    if (g > 1)
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
}

}  // namespace

ExponentVector exponent_vector(const Rational& value) {
    if (value == 0) throw std::domain_error("exponent_vector: zero input");
    Rational v = canonical(value);
    ExponentVector ev;
    ev.sign = sgn(v) < 0 ? -1 : 1;
    for (const auto& [p, e] : factorize(v.get_num()).factors) ev.exps[p] += static_cast<long>(e);
    for (const auto& [p, e] : factorize(v.get_den()).factors) ev.exps[p] -= static_cast<long>(e);
    return ev;
}

bool integer_rows_dependent(std::vector<std::vector<Integer>> rows) {
    if (rows.empty()) throw std::invalid_argument("need at least one row");
    std::size_t n = rows.size(), cols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols) throw std::invalid_argument("ragged matrix");
    if (n > cols) return true;  // more vectors than dimensions
    auto pivots = echelonize(rows);
    return pivots.size() < n;
}

bool integer_rows_dependent(std::vector<std::vector<std::int64_t>> rows) {
    if (rows.empty()) throw std::invalid_argument("need at least one row");
    std::size_t n = rows.size(), cols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols) throw std::invalid_argument("ragged matrix");
    if (n > cols) return true;
    std::size_t rank = 0;
    std::vector<std::vector<std::int64_t>> work = rows;
    if (rank_i64(work, rank)) return rank < n;
    std::vector<std::vector<Integer>> big(n);
    for (std::size_t i = 0; i < n; ++i) big[i].assign(rows[i].begin(), rows[i].end());
    return integer_rows_dependent(std::move(big));
}

namespace {

// Dense absolute-value exponent matrix over the union of occurring primes.
std::vector<std::vector<Integer>> exponent_matrix(const std::vector<ExponentVector>& evs) {
    std::set<Integer> primes;
    for (const auto& ev : evs)
        for (const auto& [p, e] : ev.exps) primes.insert(p);
    std::vector<std::vector<Integer>> rows(evs.size());
    for (std::size_t i = 0; i < evs.size(); ++i) {
        rows[i].reserve(primes.size());
        for (const auto& p : primes) {
            auto it = evs[i].exps.find(p);
            rows[i].emplace_back(it == evs[i].exps.end() ? 0 : it->second);
        }
        if (primes.empty()) rows[i].emplace_back(0);  // keep matrix well-formed
    }
    return rows;
}

bool dependent_from_exponents(const std::vector<ExponentVector>& evs) {
    for (const auto& ev : evs)
        if (ev.exps.empty()) return true;  // a coordinate is +-1
    return integer_rows_dependent(exponent_matrix(evs));
}

}  // namespace

bool is_mult_dependent(const std::vector<Rational>& nu) {
    check_vector(nu);
    std::vector<ExponentVector> evs;
    evs.reserve(nu.size());
    for (const auto& v : nu) evs.push_back(exponent_vector(v));
    return dependent_from_exponents(evs);
}

std::vector<std::vector<Integer>> integer_kernel_basis(
    const std::vector<std::vector<Integer>>& rows) {
    if (rows.empty()) return {};
    std::size_t n = rows.size(), cols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols) throw std::invalid_argument("ragged matrix");

    // Kernel of the transpose: solve sum_i k_i * rows[i] = 0.
    std::vector<std::vector<Integer>> a(cols, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[j][i] = rows[i][j];
    auto pivots = echelonize(a);

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Integer>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> x(n, Rational(0));
        x[free] = 1;
        for (std::size_t i = pivots.size(); i-- > 0;) {
            std::size_t pc = pivots[i];
            Rational s(0);
            for (std::size_t j = pc + 1; j < n; ++j)
                if (a[i][j] != 0) s += Rational(a[i][j]) * x[j];
            x[pc] = -s / Rational(a[i][pc]);
            x[pc].canonicalize();
        }
        Integer lcm = 1;
        for (const auto& q : x) lcm = lcm * q.get_den() / gcd(lcm, q.get_den());
        std::vector<Integer> k(n);
        for (std::size_t j = 0; j < n; ++j) {
            Rational scaled = x[j] * Rational(lcm);
            scaled.canonicalize();
            k[j] = scaled.get_num();
        }
        primitivize(k);
        basis.push_back(std::move(k));
    }
    return basis;
}

namespace {

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

int lex_compare(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

Integer sup_norm(const std::vector<Integer>& v) {
    Integer m = 0;
    for (const auto& x : v)
        if (abs(x) > m) m = abs(x);
    return m;
}

}  // namespace

std::optional<Relation> find_relation(const std::vector<Rational>& nu, long search_bound) {
    check_vector(nu);
    if (search_bound < 1) throw std::invalid_argument("search bound must be positive");
    std::size_t n = nu.size();

    std::vector<ExponentVector> evs;
    std::vector<int> signs;
    for (const auto& v : nu) {
        evs.push_back(exponent_vector(v));
        signs.push_back(evs.back().sign);
    }
    auto basis = integer_kernel_basis(exponent_matrix(evs));
    if (basis.empty()) return std::nullopt;

    std::size_t r = basis.size();
    double combos = 1;
    for (std::size_t i = 0; i < r; ++i) combos *= 2.0 * static_cast<double>(search_bound) + 1.0;
    if (combos > 2e8)
        throw std::invalid_argument("relation search space too large; lower the search bound");

    std::optional<std::vector<Integer>> best;
    Integer best_norm = 0;
    std::vector<long> c(r, -search_bound);

    // c and -c give the same normalized candidate, so only visit vectors
    // whose first nonzero coefficient is positive.
    for (;;) {
        std::size_t lead = 0;
        while (lead < r && c[lead] == 0) ++lead;
        if (lead < r && c[lead] > 0) {
            std::vector<Integer> k(n, Integer(0));
            for (std::size_t i = 0; i < r; ++i) {
                if (c[i] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) k[j] += c[i] * basis[i][j];
            }
            bool zero = std::all_of(k.begin(), k.end(), [](const Integer& x) { return x == 0; });
            if (!zero) {
                int sigma = 1;
                for (std::size_t j = 0; j < n; ++j)
                    if (signs[j] < 0 && mpz_odd_p(k[j].get_mpz_t())) sigma = -sigma;
                if (sigma < 0)
                    for (auto& x : k) x *= 2;
                for (const auto& x : k) {
                    if (x == 0) continue;
                    if (x < 0)
                        for (auto& y : k) y = -y;
                    break;
                }
                Integer norm = sup_norm(k);
                if (!best || norm < best_norm ||
                    (norm == best_norm && lex_compare(k, *best) < 0)) {
                    best = std::move(k);
                    best_norm = norm;
                }
            }
        }
        std::size_t i = 0;
        while (i < r && ++c[i] > search_bound) c[i++] = -search_bound;
        if (i == r) break;
    }
    if (!best) return std::nullopt;
    return Relation{std::move(*best)};
}

RankResult mult_rank(const std::vector<Rational>& nu) {
    check_vector(nu);
    std::size_t n = nu.size();
    if (n > 20) throw std::invalid_argument("rank limited to 20 coordinates");

    std::vector<ExponentVector> evs;
    for (const auto& v : nu) evs.push_back(exponent_vector(v));

    for (std::size_t i = 0; i < n; ++i)
        if (evs[i].exps.empty())  // coordinate is a root of unity (+-1)
            return RankResult{0, std::vector<std::size_t>{i + 1}};

    // Smallest dependent subset, subsets of each size in lexicographic
    // order for deterministic witnesses.
    for (std::size_t size = 2; size <= n; ++size) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        do {
            std::vector<ExponentVector> sub;
            for (std::size_t i : idx) sub.push_back(evs[i]);
            if (dependent_from_exponents(sub)) {
                std::vector<std::size_t> witness(idx);
                for (auto& w : witness) ++w;
                return RankResult{static_cast<unsigned>(size - 1), std::move(witness)};
            }
        } while (next_combination(idx, n));
    }
    return RankResult{static_cast<unsigned>(n), std::nullopt};
}

}  // namespace multdep
