#include <doctest.h>

#include <random>

#include "posicert/error.hpp"
#include "posicert/polynomial.hpp"
#include "support/generators.hpp"

using namespace posicert;

namespace {

Polynomial uni(std::initializer_list<Rational> c) { return Polynomial::univariate(c); }

// Horner evaluation over dense coefficients, independent of poly_eval's
// term-by-term summation.
Rational horner(const Polynomial& p, const Rational& x) {
    const auto c = p.ascending_coefficients();
    Rational acc;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void require_no_zero_terms(const Polynomial& p) {
    for (const auto& [m, c] : p.terms()) {
        REQUIRE_FALSE(c.is_zero());
        REQUIRE(m.size() == p.var_count());
    }
}

}  // namespace

TEST_CASE("rational canonical form") {
    CHECK(Rational(6, 8).str() == "3/4");
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(0, 7).str() == "0/1");
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("-3") == Rational(-3));
    CHECK(Rational::parse_canonical("-5/1") == Rational(-5));
    CHECK_THROWS_AS(Rational::parse_canonical("5"), ParseError);
    CHECK_THROWS_AS(Rational::parse_canonical("2/4"), ParseError);
    CHECK_THROWS_AS(Rational::parse_canonical("-0/1"), ParseError);
    CHECK_THROWS_AS(Rational::parse_canonical("01/2"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("x"), ParseError);
}

TEST_CASE("poly_add") {
    const auto x_minus_1 = uni({-1, 1});
    CHECK(poly_add(x_minus_1, uni({1})) == uni({0, 1}));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const auto p = testing::random_polynomial(rng, 2, 4);
        CHECK(poly_add(p, Polynomial(2)) == p);
    }

    const auto sum = poly_add(uni({2, -3, 1}), uni({-2, 3}));
    CHECK(sum == uni({0, 0, 1}));
    const std::vector<Rational> five{Rational(5)};
    CHECK(poly_eval(uni({2, -3, 1}), five) + poly_eval(uni({-2, 3}), five) == Rational(25));
    CHECK(poly_eval(sum, five) == Rational(25));

    CHECK_THROWS_AS(poly_add(Polynomial(1), Polynomial(2)), StructuralError);
}

TEST_CASE("poly_mul") {
    const auto q = uni({1, -1, 1});
    CHECK(poly_mul(uni({1}), q) == q);
    const auto d = poly_mul(uni({-1, 1}), uni({-2, 1}));
    CHECK(d == uni({2, -3, 1}));
    const auto p1 = poly_mul(d, d);
    CHECK(p1 == uni({4, -12, 13, -6, 1}));
    CHECK(poly_eval(p1, std::vector<Rational>{Rational(0)}) == Rational(4));
    CHECK(poly_eval(p1, std::vector<Rational>{Rational(3)}) == Rational(4));
    CHECK_THROWS_AS(poly_mul(Polynomial(2), Polynomial(3)), StructuralError);
}

TEST_CASE("poly_eval") {
    CHECK(poly_eval(uni({1, -1, 1}), std::vector<Rational>{Rational(1)}) == Rational(1));
    const auto p1 = uni({4, -12, 13, -6, 1});
    CHECK(poly_eval(p1, std::vector<Rational>{Rational(2)}) == Rational(0));
    CHECK(poly_eval(p1, std::vector<Rational>{Rational(1, 2)}) == Rational(9, 16));
    CHECK_THROWS_AS(poly_eval(p1, std::vector<Rational>{Rational(1), Rational(2)}), StructuralError);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        const auto p = testing::random_polynomial(rng, 1, 6);
        const auto x = testing::random_rational(rng);
        CHECK(poly_eval(p, std::vector<Rational>{x}) == horner(p, x));
    }
}

TEST_CASE("poly_pow") {
    const auto d = uni({2, -3, 1});
    CHECK(poly_pow(d, 0) == uni({1}));
    CHECK(poly_pow(uni({-1, 1}), 2) == uni({1, -2, 1}));
    CHECK(poly_pow(d, 2) == poly_mul(d, d));
    CHECK(to_text(poly_pow(d, 2)) == to_text(poly_mul(d, d)));
    CHECK(poly_pow(d, 5) == poly_mul(poly_pow(d, 2), poly_pow(d, 3)));
}

TEST_CASE("poly_derivative") {
    CHECK(poly_derivative(uni({1, -1, 1})) == uni({-1, 2}));
    CHECK(poly_derivative(uni({7})).is_zero());
    CHECK(poly_derivative(uni({4, -12, 13, -6, 1})) == uni({-12, 26, -18, 4}));
    CHECK_THROWS_AS(poly_derivative(Polynomial::variable(2, 0)), StructuralError);
}

TEST_CASE("univariate division and gcd") {
    const auto a = uni({2, -3, 1});  // (x-1)(x-2)
    const auto b = uni({-1, 1});
    const auto [q, r] = poly_divmod(a, b);
    CHECK(q == uni({-2, 1}));
    CHECK(r.is_zero());
    CHECK(poly_gcd(poly_mul(a, uni({1, 0, 1})), poly_mul(b, uni({3, 1}))) == b);
    CHECK(poly_gcd(uni({1, 0, 1}), uni({-1, 1})) == uni({1}));

    std::mt19937_64 rng(9);
    for (int i = 0; i < 30; ++i) {
        const auto n = testing::random_polynomial(rng, 1, 6);
        auto d = testing::random_polynomial(rng, 1, 3);
        if (d.is_zero()) continue;
        const auto [quot, rem] = poly_divmod(n, d);
        CHECK(poly_add(poly_mul(quot, d), rem) == n);
        CHECK((rem.is_zero() || rem.degree() < d.degree()));
    }
}

TEST_CASE("ring axioms hold exactly on random polynomials") {
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 60; ++i) {
        const std::size_t u = 1 + i % 3;
        const auto a = testing::random_polynomial(rng, u, 4);
        const auto b = testing::random_polynomial(rng, u, 4);
        const auto c = testing::random_polynomial(rng, u, 4);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        require_no_zero_terms(a * b);
        require_no_zero_terms(a + b);
        require_no_zero_terms(a - b);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 200; ++i) {
        const std::size_t u = 1 + i % 3;
        const auto p = testing::random_polynomial(rng, u, 4);
        const auto q = testing::random_polynomial(rng, u, 4);
        const auto v = testing::random_point(rng, u);
        CHECK(poly_eval(p * q, v) == poly_eval(p, v) * poly_eval(q, v));
        CHECK(poly_eval(p + q, v) == poly_eval(p, v) + poly_eval(q, v));
    }
}

TEST_CASE("text format") {
    const auto p1 = uni({4, -12, 13, -6, 1});
    CHECK(to_text(p1) == "vars 1\n4/1 0\n-12/1 1\n13/1 2\n-6/1 3\n1/1 4\n");
    CHECK(to_text(Polynomial(3)) == "vars 3\n");

    // Graded-lex: degree first, then ascending exponent tuple.
    Polynomial p(2);
    p.add_term(Monomial{1, 0}, Rational(3, 2));
    p.add_term(Monomial{0, 1}, Rational(-1));
    p.add_term(Monomial{0, 0}, Rational(5));
    p.add_term(Monomial{0, 2}, Rational(1));
    CHECK(to_text(p) == "vars 2\n5/1 0 0\n-1/1 0 1\n3/2 1 0\n1/1 0 2\n");

    std::mt19937_64 rng(3);
    for (int i = 0; i < 40; ++i) {
        const auto q = testing::random_polynomial(rng, 1 + i % 3, 5) * Rational(1, 1 + i % 4);
        const auto text = to_text(q);
        CHECK(to_text(parse_polynomial(text)) == text);
        CHECK(parse_polynomial(text) == q);
    }
}

TEST_CASE("text format rejects malformed documents") {
    CHECK_THROWS_AS(parse_polynomial(""), ParseError);
    CHECK_THROWS_AS(parse_polynomial("var 1\n"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("vars 0\n"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("vars 1\n1/1 2\n3/1 2\n"), ParseError);  // duplicate monomial
    CHECK_THROWS_AS(parse_polynomial("vars 1\n0/1 2\n"), ParseError);         // zero coefficient
    CHECK_THROWS_AS(parse_polynomial("vars 1\n1 2\n"), ParseError);           // missing /1
    CHECK_THROWS_AS(parse_polynomial("vars 2\n1/1 2\n"), ParseError);         // arity
    CHECK_THROWS_AS(parse_polynomial("vars 1\n2/4 2\n"), ParseError);         // non-canonical
    CHECK_THROWS_AS(parse_polynomial("vars 1\n1/1 -2\n"), ParseError);
}

TEST_CASE("pretty printing") {
    CHECK(to_pretty(uni({1, 0, 0, 1})) == "x^3 + 1");
    CHECK(to_pretty(uni({Rational(1), Rational(-9, 5), Rational(1)})) == "x^2 - 9/5*x + 1");
    CHECK(to_pretty(Polynomial(2)) == "0");
    Polynomial p(2);
    p.add_term(Monomial{1, 1}, Rational(-2));
    CHECK(to_pretty(p) == "-2*x1*x2");
}
