#include <doctest.h>

#include <cmath>
#include <random>

#include "multdep/relations.hpp"

using namespace multdep;

namespace {

Rational q(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational pow_exact(const Rational& base, const Integer& e) {
    Rational acc(1), b = e < 0 ? Rational(1) / base : base;
    Integer ea = abs(e);
    unsigned long n = mpz_get_ui(ea.get_mpz_t());
    for (unsigned long i = 0; i < n; ++i) acc *= b;
    return acc;
}

bool relation_holds(const std::vector<Rational>& nu, const std::vector<Integer>& k) {
    Rational prod(1);
    for (std::size_t i = 0; i < nu.size(); ++i) prod *= pow_exact(nu[i], k[i]);
    return prod == 1;
}

// Exhaustive dependence oracle over k in [-bound, bound]^n \ {0}: a float
// log prefilter (safe margin far above accumulated rounding error) picks
// candidates, which are then verified with exact rational arithmetic.
bool brute_dependent(const std::vector<Rational>& nu, int bound = 12) {
    std::size_t n = nu.size();
    std::vector<double> lg(n);
    for (std::size_t i = 0; i < n; ++i) lg[i] = std::log(std::fabs(nu[i].get_d()));
    std::vector<int> k(n, -bound);
    for (;;) {
        double dot = 0;
        bool zero = true;
        for (std::size_t i = 0; i < n; ++i) {
            dot += k[i] * lg[i];
            zero = zero && k[i] == 0;
        }
        if (!zero && std::fabs(dot) < 1e-9) {
            std::vector<Integer> kk(n);
            for (std::size_t i = 0; i < n; ++i) kk[i] = k[i];
            if (relation_holds(nu, kk)) return true;
        }
        std::size_t i = 0;
        while (i < n && ++k[i] > bound) k[i++] = -bound;
        if (i == n) break;
    }
    return false;
}

}  // namespace

TEST_SUITE("relations") {

TEST_CASE("exponent vectors") {
    auto e = exponent_vector(q(12));
    CHECK(e.sign == 1);
    CHECK(e.exps == std::map<Integer, long>{{Integer(2), 2}, {Integer(3), 1}});

    auto f = exponent_vector(q(-3, 4));
    CHECK(f.sign == -1);
    CHECK(f.exps == std::map<Integer, long>{{Integer(2), -2}, {Integer(3), 1}});

    CHECK(exponent_vector(q(1)).exps.empty());
    CHECK(exponent_vector(q(1)).sign == 1);
    CHECK(exponent_vector(q(-1)).sign == -1);
    CHECK(exponent_vector(q(-1)).exps.empty());

    auto g = exponent_vector(Rational(4, 6));  // not canonical on input
    CHECK(g.exps == std::map<Integer, long>{{Integer(2), 1}, {Integer(3), -1}});

    CHECK_THROWS_AS(exponent_vector(Rational(0)), std::domain_error);
}

TEST_CASE("exponent vector reconstructs its rational") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-300, 300), den(1, 300);
    for (int i = 0; i < 200; ++i) {
        long a = num(rng);
        if (a == 0) a = 7;
        Rational v = q(a, den(rng));
        auto ev = exponent_vector(v);
        Rational back(ev.sign);
        for (const auto& [p, e] : ev.exps) {
            CHECK(e != 0);
            back *= pow_exact(Rational(p), Integer(e));
        }
        CHECK(back == v);
    }
}

TEST_CASE("dependence decisions") {
    CHECK_FALSE(is_mult_dependent({q(2), q(3)}));
    CHECK(is_mult_dependent({q(2), q(8)}));
    CHECK(is_mult_dependent({q(-1), q(5)}));
    CHECK_FALSE(is_mult_dependent({q(6), q(10), q(15)}));
    CHECK(is_mult_dependent({q(2), q(-2)}));
    CHECK(is_mult_dependent({q(1)}));
    CHECK_FALSE(is_mult_dependent({q(5)}));
    CHECK(is_mult_dependent({q(2, 3), q(9, 4)}));  // (2/3)^2 * (9/4) = 1
    CHECK_THROWS_AS(is_mult_dependent({}), std::invalid_argument);
    CHECK_THROWS_AS(is_mult_dependent({q(2), Rational(0)}), std::domain_error);
}

TEST_CASE("dependence is invariant under permutation and inversion") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 50);
    for (int trial = 0; trial < 150; ++trial) {
        std::vector<Rational> nu;
        for (int i = 0; i < 3; ++i) {
            long a = num(rng);
            if (a == 0) a = 3;
            nu.push_back(q(a, den(rng)));
        }
        bool dep = is_mult_dependent(nu);

        auto perm = nu;
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(is_mult_dependent(perm) == dep);

        auto inv = nu;
        std::uniform_int_distribution<int> pick(0, 2);
        int j = pick(rng);
        inv[j] = 1 / inv[j];
        CHECK(is_mult_dependent(inv) == dep);
    }
}

TEST_CASE("dependence agrees with the exhaustive oracle") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 50);
    std::uniform_int_distribution<int> len(1, 4);
    int checked = 0;
    while (checked < 200) {
        int n = len(rng);
        std::vector<Rational> nu;
        for (int i = 0; i < n; ++i) {
            long a = num(rng);
            if (a == 0) continue;
            nu.push_back(q(a, den(rng)));
        }
        if (static_cast<int>(nu.size()) != n) continue;
        CAPTURE(checked);
        CHECK(is_mult_dependent(nu) == brute_dependent(nu));
        ++checked;
    }
}

TEST_CASE("kernel basis on fixed matrices") {
    using M = std::vector<std::vector<Integer>>;
    CHECK(integer_kernel_basis(M{{Integer(1), Integer(0)}, {Integer(0), Integer(1)}}).empty());

    auto k1 = integer_kernel_basis(M{{Integer(1)}, {Integer(1)}});
    REQUIRE(k1.size() == 1);
    CHECK(k1[0] == std::vector<Integer>{Integer(1), Integer(-1)});

    // rows are the exponent vectors of 8, 12, 18 over the primes 2, 3
    auto k2 = integer_kernel_basis(
        M{{Integer(3), Integer(0)}, {Integer(2), Integer(1)}, {Integer(1), Integer(2)}});
    REQUIRE(k2.size() == 1);
    CHECK(k2[0] == std::vector<Integer>{Integer(1), Integer(-2), Integer(1)});

    CHECK_THROWS_AS(integer_kernel_basis(M{{Integer(1)}, {Integer(1), Integer(2)}}),
                    std::invalid_argument);
}

TEST_CASE("kernel basis properties on random matrices") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> entry(-6, 6);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t n = dim(rng), c = dim(rng);
        std::vector<std::vector<Integer>> m(n, std::vector<Integer>(c));
        for (auto& row : m)
            for (auto& x : row) x = entry(rng);
        auto basis = integer_kernel_basis(m);
        for (const auto& k : basis) {
            // annihilates every column
            for (std::size_t j = 0; j < c; ++j) {
                Integer dot = 0;
                for (std::size_t i = 0; i < n; ++i) dot += k[i] * m[i][j];
                CHECK(dot == 0);
            }
            // primitive with positive first nonzero entry
            Integer g = 0;
            for (const auto& x : k) g = gcd(g, x);
            CHECK(g == 1);
            for (const auto& x : k) {
                if (x == 0) continue;
                CHECK(x > 0);
                break;
            }
        }
        // dimension check: basis size = n - rank
        bool dep = integer_rows_dependent(m);
        CHECK((basis.size() > 0) == dep);
    }
}

TEST_CASE("machine-word dependence matches big-integer dependence") {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<std::int64_t> entry(-20, 20);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = dim(rng), c = dim(rng);
        std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(c));
        std::vector<std::vector<Integer>> b(n, std::vector<Integer>(c));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                a[i][j] = entry(rng);
                b[i][j] = static_cast<long>(a[i][j]);
            }
        CHECK(integer_rows_dependent(a) == integer_rows_dependent(b));
    }
    // near-overflow entries exercise the fallback path
    std::vector<std::vector<std::int64_t>> big{
        {std::int64_t{1} << 40, (std::int64_t{1} << 40) + 1},
        {(std::int64_t{1} << 40) + 2, (std::int64_t{1} << 40) + 3}};
    CHECK_FALSE(integer_rows_dependent(big));  // determinant is -2
}

TEST_CASE("find_relation on fixed inputs") {
    auto r1 = find_relation({q(2), q(4)});
    REQUIRE(r1.has_value());
    CHECK(r1->k == std::vector<Integer>{Integer(2), Integer(-1)});

    auto r2 = find_relation({q(2), q(-2)});
    REQUIRE(r2.has_value());
    CHECK(r2->k == std::vector<Integer>{Integer(2), Integer(-2)});

    auto r3 = find_relation({q(8), q(12), q(18)});
    REQUIRE(r3.has_value());
    CHECK(r3->k == std::vector<Integer>{Integer(1), Integer(-2), Integer(1)});

    auto r4 = find_relation({q(2), q(8)});
    REQUIRE(r4.has_value());
    CHECK(r4->k == std::vector<Integer>{Integer(3), Integer(-1)});

    // minimal relation has an entry beyond small scan windows
    auto r5 = find_relation({q(32, 27), q(48), q(2)});
    REQUIRE(r5.has_value());
    CHECK(r5->k == std::vector<Integer>{Integer(1), Integer(3), Integer(-17)});

    CHECK_FALSE(find_relation({q(2), q(3)}).has_value());
    CHECK_FALSE(find_relation({q(5)}).has_value());

    auto u1 = find_relation({q(1), q(7)});
    REQUIRE(u1.has_value());
    CHECK(u1->k == std::vector<Integer>{Integer(1), Integer(0)});

    auto u2 = find_relation({q(-1), q(5)});
    REQUIRE(u2.has_value());
    CHECK(u2->k == std::vector<Integer>{Integer(2), Integer(0)});

    CHECK_THROWS_AS(find_relation({q(2), q(4)}, 0), std::invalid_argument);
}

TEST_CASE("found relations hold exactly and are minimal in the window") {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 50);
    int dependent_seen = 0;
    for (int trial = 0; trial < 400 && dependent_seen < 60; ++trial) {
        std::vector<Rational> nu;
        for (int i = 0; i < 3; ++i) {
            long a = num(rng);
            if (a == 0) a = 2;
            nu.push_back(q(a, den(rng)));
        }
        auto rel = find_relation(nu);
        CHECK(rel.has_value() == is_mult_dependent(nu));
        if (!rel) continue;
        ++dependent_seen;
        CHECK(relation_holds(nu, rel->k));
        // normalized: first nonzero entry positive
        for (const auto& x : rel->k) {
            if (x == 0) continue;
            CHECK(x > 0);
            break;
        }
        // no strictly smaller relation in the exhaustive window
        Integer norm = 0;
        for (const auto& x : rel->k)
            if (abs(x) > norm) norm = abs(x);
        if (norm > 1) {
            long w = norm.get_si() - 1;
            std::vector<long> k(nu.size(), -w);
            bool smaller = false;
            for (;;) {
                bool zero = true;
                for (long x : k) zero = zero && x == 0;
                if (!zero) {
                    std::vector<Integer> kk(k.size());
                    for (std::size_t i = 0; i < k.size(); ++i) kk[i] = k[i];
                    if (relation_holds(nu, kk)) {
                        smaller = true;
                        break;
                    }
                }
                std::size_t i = 0;
                while (i < k.size() && ++k[i] > w) k[i++] = -w;
                if (i == k.size()) break;
            }
            CHECK_FALSE(smaller);
        }
    }
    CHECK(dependent_seen >= 30);
}

TEST_CASE("rank on fixed inputs") {
    auto r1 = mult_rank({q(1), q(7)});
    CHECK(r1.rank == 0);
    REQUIRE(r1.witness.has_value());
    CHECK(*r1.witness == std::vector<std::size_t>{1});

    auto r2 = mult_rank({q(2), q(4), q(5)});
    CHECK(r2.rank == 1);
    REQUIRE(r2.witness.has_value());
    CHECK(*r2.witness == std::vector<std::size_t>{1, 2});

    auto r3 = mult_rank({q(2), q(3), q(6)});
    CHECK(r3.rank == 2);
    REQUIRE(r3.witness.has_value());
    CHECK(*r3.witness == std::vector<std::size_t>{1, 2, 3});

    auto r4 = mult_rank({q(2), q(3), q(5)});
    CHECK(r4.rank == 3);
    CHECK_FALSE(r4.witness.has_value());

    auto r5 = mult_rank({q(7), q(-1)});
    CHECK(r5.rank == 0);
    CHECK(*r5.witness == std::vector<std::size_t>{2});

    CHECK_THROWS_AS(mult_rank(std::vector<Rational>(21, q(2))), std::invalid_argument);
}

TEST_CASE("rank invariants on random vectors") {
    std::mt19937_64 rng(83);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 40);
    for (int trial = 0; trial < 150; ++trial) {
        std::vector<Rational> nu;
        for (int i = 0; i < 4; ++i) {
            long a = num(rng);
            if (a == 0) a = 5;
            nu.push_back(q(a, den(rng)));
        }
        auto r = mult_rank(nu);
        bool dep = is_mult_dependent(nu);
        if (dep)
            CHECK(r.rank <= nu.size() - 1);
        else
            CHECK(r.rank == nu.size());
        if (r.witness) {
            CHECK(r.witness->size() == r.rank + 1);
            std::vector<Rational> sub;
            for (std::size_t i : *r.witness) sub.push_back(nu.at(i - 1));
            CHECK(is_mult_dependent(sub));
            // every witness is a smallest dependent subset: proper
            // subsets of it of size >= 1 are independent
            if (r.rank >= 1) {
                for (std::size_t drop = 0; drop < sub.size(); ++drop) {
                    std::vector<Rational> smaller;
                    for (std::size_t i = 0; i < sub.size(); ++i)
                        if (i != drop) smaller.push_back(sub[i]);
                    CHECK_FALSE(is_mult_dependent(smaller));
                }
            }
        }

        // appending a coordinate cannot grow the smallest dependent subset
        long a = num(rng);
        if (a == 0) a = 3;
        auto extended = nu;
        extended.push_back(q(a, den(rng)));
        auto re = mult_rank(extended);
        if (r.witness) {
            REQUIRE(re.witness.has_value());
            CHECK(re.witness->size() <= r.witness->size());
        }
    }
}

}
