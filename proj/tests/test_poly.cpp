#include <doctest.h>

#include <random>

#include "multdep/poly.hpp"

using namespace multdep;

namespace {

MPoly p1(const std::string& s) { return parse_poly(s, 1); }

MPoly random_poly(std::mt19937_64& rng, unsigned m, unsigned max_deg, int max_terms) {
    std::uniform_int_distribution<int> coeff(-9, 9), nterms(1, max_terms);
    std::uniform_int_distribution<unsigned> expo(0, max_deg);
    std::vector<Term> terms;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Term t;
        t.coeff = coeff(rng);
        if (t.coeff == 0) t.coeff = 1;
        for (unsigned j = 0; j < m; ++j) t.exps.push_back(expo(rng));
        terms.push_back(std::move(t));
    }
    return MPoly::from_terms(m, std::move(terms));
}

// Exact division test over Q[X]: true iff d divides f with zero remainder.
bool divides_exactly(const MPoly& d, const MPoly& f) {
    std::vector<Rational> num(f.is_zero() ? 0 : f.total_degree() + 1);
    std::vector<Rational> den(d.total_degree() + 1);
    for (const auto& t : f.terms()) num[t.exps[0]] = Rational(t.coeff);
    for (const auto& t : d.terms()) den[t.exps[0]] = Rational(t.coeff);
    while (num.size() >= den.size() && !num.empty()) {
        Rational q = num.back() / den.back();
        for (std::size_t i = 0; i < den.size(); ++i)
            num[num.size() - den.size() + i] -= q * den[i];
        while (!num.empty() && num.back() == 0) num.pop_back();
        if (!num.empty() && num.size() >= den.size() && num.back() == 0) num.pop_back();
    }
    return num.empty();
}

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("parse basic forms") {
    MPoly f = p1("x0^2 - 1");
    REQUIRE(f.terms().size() == 2);
    CHECK(f.terms()[0].coeff == 1);
    CHECK(f.terms()[0].exps == std::vector<unsigned>{2});
    CHECK(f.terms()[1].coeff == -1);
    CHECK(f.terms()[1].exps == std::vector<unsigned>{0});

    MPoly g = parse_poly("3*x0*x1 + x2^4", 3);
    REQUIRE(g.terms().size() == 2);
    CHECK(g.terms()[0].exps == std::vector<unsigned>{0, 0, 4});  // degree 4 first
    CHECK(g.terms()[1].coeff == 3);
    CHECK(g.terms()[1].exps == std::vector<unsigned>{1, 1, 0});
}

TEST_CASE("parse expands products") {
    MPoly f = p1("x0*(x0-1)*(x0-2)*(x0-3) + 2");
    CHECK(f == p1("x0^4 - 6*x0^3 + 11*x0^2 - 6*x0 + 2"));
    CHECK(f.to_string() == "x0^4 - 6*x0^3 + 11*x0^2 - 6*x0 + 2");
}

TEST_CASE("parse handles signs, powers and whitespace") {
    CHECK(p1("-x0^2") == MPoly::constant(1, -1) * p1("x0^2"));
    CHECK(p1("- x0 + + 3") == p1("3 - x0"));
    CHECK(p1("2^3") == MPoly::constant(1, 8));
    CHECK(p1("(x0+1)^2") == p1("x0^2 + 2*x0 + 1"));
    CHECK(p1("  x0   ^   2  ") == p1("x0^2"));
    CHECK(p1("x0 - x0") == MPoly(1));
    CHECK(p1("x0 - x0").is_zero());
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(p1(""), poly_parse_error);
    CHECK_THROWS_AS(p1("x0 +"), poly_parse_error);
    CHECK_THROWS_AS(p1("(x0"), poly_parse_error);
    CHECK_THROWS_AS(p1("x0 x1"), poly_parse_error);
    CHECK_THROWS_AS(p1("x0^-2"), poly_parse_error);
    CHECK_THROWS_AS(p1("x0^(2)"), poly_parse_error);
    CHECK_THROWS_AS(parse_poly("x2 + 1", 2), poly_parse_error);

    try {
        parse_poly("x0 + x5", 2);
        FAIL("expected parse error");
    } catch (const poly_parse_error& e) {
        CHECK(e.position() == 5);
    }
    try {
        p1("x0 * * x0");
        FAIL("expected parse error");
    } catch (const poly_parse_error& e) {
        CHECK(e.position() == 5);
    }
}

TEST_CASE("evaluate") {
    CHECK(p1("x0^2 - 1").evaluate({Integer(1)}) == 0);
    CHECK(parse_poly("x0*x1 + 5", 2).evaluate({Integer(2), Integer(3)}) == 11);
    CHECK(example11_family(2).components[0].evaluate({Integer(10)}) == 5042);
    CHECK_THROWS_AS(p1("x0").evaluate({Integer(1), Integer(2)}), std::invalid_argument);
}

TEST_CASE("evaluate_i64 agrees and reports overflow") {
    MPoly f = parse_poly("x0^3*x1 - 7*x1^2 + 2", 2);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> dist(-50, 50);
    for (int i = 0; i < 200; ++i) {
        std::int64_t a = dist(rng), b = dist(rng);
        auto fast = f.evaluate_i64({a, b});
        REQUIRE(fast.has_value());
        CHECK(Integer(static_cast<long>(*fast)) == f.evaluate({Integer(static_cast<long>(a)), Integer(static_cast<long>(b))}));
    }
    CHECK_FALSE(p1("x0^5").evaluate_i64({100000}).has_value());
}

TEST_CASE("evaluate_bound dominates box values") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        MPoly f = random_poly(rng, 2, 4, 5);
        Integer bound = f.evaluate_bound(7);
        std::uniform_int_distribution<long> pt(-7, 7);
        for (int i = 0; i < 20; ++i) {
            Integer v = f.evaluate({Integer(pt(rng)), Integer(pt(rng))});
            CHECK(abs(v) <= bound);
        }
    }
}

TEST_CASE("degree and homogeneous parts") {
    MPoly f = parse_poly("x0^3 + x1", 2);
    CHECK(f.total_degree() == 3);
    CHECK(f.homogeneous_part(3) == parse_poly("x0^3", 2));
    CHECK(f.homogeneous_part(1) == parse_poly("x1", 2));
    CHECK(f.homogeneous_part(2).is_zero());

    CHECK(p1("5").total_degree() == 0);
    CHECK_THROWS_AS(MPoly(1).total_degree(), std::domain_error);

    MPoly e = example11_family(2).components[0];
    CHECK(e.total_degree() == 4);
    CHECK(e.homogeneous_part(4) == p1("x0^4"));
}

TEST_CASE("homogeneous parts sum back to the polynomial") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        MPoly f = random_poly(rng, 3, 5, 6);
        if (f.is_zero()) continue;
        MPoly sum(3);
        for (unsigned d = 0; d <= f.total_degree(); ++d) sum = sum + f.homogeneous_part(d);
        CHECK(sum == f);
    }
}

TEST_CASE("ring operations respect evaluation") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> pt(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
        MPoly f = random_poly(rng, 2, 3, 4), g = random_poly(rng, 2, 3, 4);
        std::vector<Integer> u{Integer(pt(rng)), Integer(pt(rng))};
        CHECK((f + g).evaluate(u) == f.evaluate(u) + g.evaluate(u));
        CHECK((f - g).evaluate(u) == f.evaluate(u) - g.evaluate(u));
        CHECK((f * g).evaluate(u) == f.evaluate(u) * g.evaluate(u));
        CHECK(f.pow(3).evaluate(u) == f.evaluate(u) * f.evaluate(u) * f.evaluate(u));
    }
}

TEST_CASE("univariate gcd basics") {
    CHECK(univariate_gcd(p1("x0^2-1"), p1("x0-1")) == p1("x0-1"));
    CHECK(univariate_gcd(p1("x0^2+1"), p1("x0^2-2")) == p1("1"));
    auto ex = example11_family(2);
    CHECK(univariate_gcd(ex.components[0], ex.components[1]) == p1("1"));
    CHECK_THROWS_AS(univariate_gcd(MPoly(1), p1("x0")), std::domain_error);
}

TEST_CASE("univariate gcd is primitive with positive lead") {
    // gcd of (x-1)^2 (x+2)(3x+5) and (x-1)(3x+5)(x+7)
    MPoly a = p1("3*x0^4 + 5*x0^3 - 9*x0^2 - 9*x0 + 10");
    MPoly b = p1("3*x0^3 + 23*x0^2 + 9*x0 - 35");
    CHECK(univariate_gcd(a, b) == p1("3*x0^2 + 2*x0 - 5"));

    CHECK(univariate_gcd(p1("2*x0^2 - 2"), p1("4*x0 - 4")) == p1("x0 - 1"));
    CHECK(univariate_gcd(p1("-x0 - 1"), p1("x0^2 - 1")) == p1("x0 + 1"));
    CHECK(univariate_gcd(p1("6"), p1("4*x0 + 2")) == p1("1"));
}

TEST_CASE("univariate gcd divides both inputs") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 60; ++trial) {
        MPoly a = random_poly(rng, 1, 6, 4), b = random_poly(rng, 1, 6, 4);
        if (a.is_zero() || b.is_zero()) continue;
        MPoly c = random_poly(rng, 1, 3, 3);
        if (c.is_zero()) c = p1("x0 + 1");
        MPoly f = a * c, g = b * c;
        MPoly d = univariate_gcd(f, g);
        CHECK(d.terms().back().coeff != 0);
        CHECK(d.terms().front().coeff > 0);
        CHECK(divides_exactly(d, f));
        CHECK(divides_exactly(d, g));
        CHECK(divides_exactly(c, d));  // common factor must appear in the gcd
    }
}

TEST_CASE("binary form linear factor detection") {
    CHECK(binary_form_has_linear_factor(parse_poly("x0^2 - x1^2", 2)));
    CHECK_FALSE(binary_form_has_linear_factor(parse_poly("x0^2 + x1^2", 2)));
    CHECK_FALSE(binary_form_has_linear_factor(parse_poly("x0^3 - 2*x1^3", 2)));
    CHECK(binary_form_has_linear_factor(parse_poly("x0^2*x1", 2)));
    CHECK(binary_form_has_linear_factor(parse_poly("x0^3 + x1^3", 2)));      // root -1
    CHECK(binary_form_has_linear_factor(parse_poly("2*x0^2 + 5*x0*x1 + 2*x1^2", 2)));  // (2x0+x1)(x0+2x1)
    CHECK(binary_form_has_linear_factor(parse_poly("2*x0 - 3*x1", 2)));
    CHECK_FALSE(binary_form_has_linear_factor(parse_poly("x0^4 + x0^2*x1^2 + x1^4", 2)));
    CHECK_FALSE(binary_form_has_linear_factor(parse_poly("7", 2)));

    CHECK_THROWS_AS(binary_form_has_linear_factor(parse_poly("x0^2 + x1", 2)), std::domain_error);
    CHECK_THROWS_AS(binary_form_has_linear_factor(MPoly(2)), std::domain_error);
    CHECK_THROWS_AS(binary_form_has_linear_factor(p1("x0^2")), std::invalid_argument);
}

TEST_CASE("shifted factorial family") {
    auto fam2 = example11_family(2);
    REQUIRE(fam2.size() == 2);
    CHECK(fam2.components[0] == p1("x0*(x0-1)*(x0-2)*(x0-3) + 2"));
    CHECK(fam2.components[1] == p1("x0*(x0-1)*(x0-2)*(x0-3) + 3"));
    CHECK(fam2.components[0].evaluate({Integer(0)}) == 2);

    auto fam3 = example11_family(3);
    REQUIRE(fam3.size() == 3);
    MPoly g5 = p1("x0^6 - 15*x0^5 + 85*x0^4 - 225*x0^3 + 274*x0^2 - 120*x0");
    CHECK(fam3.components[0] == g5 + MPoly::constant(1, 2));
    CHECK(fam3.components[1] == g5 + MPoly::constant(1, 3));
    CHECK(fam3.components[2] == g5 + MPoly::constant(1, 5));
    CHECK(fam3.components[2].total_degree() == 6);

    CHECK_THROWS_AS(example11_family(1), std::domain_error);
}

TEST_CASE("shifted factorial family divisibility pattern") {
    auto fam = example11_family(3);
    Integer primes[3] = {Integer(2), Integer(3), Integer(5)};
    for (long u = -200; u <= 200; ++u) {
        for (int i = 0; i < 3; ++i) {
            Integer v = fam.components[i].evaluate({Integer(u)});
            CHECK(v % primes[i] == 0);
            CHECK(v != 0);
            for (int j = 0; j < 3; ++j)
                if (j != i) CHECK(v % primes[j] != 0);
        }
    }
}

TEST_CASE("to_string round trips through the parser") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        MPoly f = random_poly(rng, 3, 4, 6);
        CHECK(parse_poly(f.to_string(), 3) == f);
    }
    CHECK(MPoly(2).to_string() == "0");
    CHECK(parse_poly("0", 2).is_zero());
    CHECK(p1("-x0 - 1").to_string() == "-x0 - 1");
}

TEST_CASE("system construction validates shape") {
    CHECK_THROWS_AS(make_system({}), std::invalid_argument);
    CHECK_THROWS_AS(make_system({p1("x0"), parse_poly("x0 + x1", 2)}), std::invalid_argument);
    auto s = make_system({p1("x0"), p1("x0^2")});
    CHECK(s.size() == 2);
    CHECK(s.num_vars() == 1);
}

}
