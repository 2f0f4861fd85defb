#include <doctest.h>

#include <random>

#include "posicert/error.hpp"
#include "posicert/oracle.hpp"
#include "posicert/sat.hpp"
#include "support/generators.hpp"

using namespace posicert;
using namespace posicert::sat;

namespace {

Polynomial uni(std::initializer_list<Rational> c) { return Polynomial::univariate(c); }

std::vector<Rational> at(std::initializer_list<Rational> v) { return v; }

}  // namespace

TEST_CASE("parse_dimacs accepts well-formed input") {
    auto f = parse_dimacs("p cnf 1 1\n1 0\n");
    CHECK(f.var_count == 1);
    REQUIRE(f.clauses.size() == 1);
    CHECK(f.clauses[0] == Clause{{1, false}});

    f = parse_dimacs("c unsat pair\np cnf 1 2\n1 0\n-1 0\n");
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[1] == Clause{{1, true}});

    f = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
    CHECK(f.clauses[0] == Clause{{1, false}, {2, false}, {3, false}});

    // Clauses may span lines; duplicate literals collapse.
    f = parse_dimacs("p cnf 3 2\n1 -2\n 3 0 2 2 0\n");
    CHECK(f.clauses[0].size() == 3);
    CHECK(f.clauses[1] == Clause{{2, false}});

    f = parse_dimacs("p cnf 2 0\n");
    CHECK(f.clauses.empty());
}

TEST_CASE("parse_dimacs rejects malformed input") {
    CHECK_THROWS_AS(parse_dimacs(""), ParseError);
    CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p dnf 2 1\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n3 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 4 1\n1 2 3 4 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 0\n2 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);
    try {
        parse_dimacs("p cnf 2 3\n1 0\n0\n2 0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("clause 2 is empty") != std::string::npos);
    }
}

TEST_CASE("dimacs rendering round-trips") {
    const std::string text = "p cnf 3 2\n1 -2 3 0\n-3 0\n";
    CHECK(to_dimacs(parse_dimacs(text)) == text);
}

TEST_CASE("BoolDomain validation") {
    CHECK_THROWS_AS(BoolDomain(Rational(1), Rational(1)), StructuralError);
    CHECK_THROWS_AS(BoolDomain(Rational(0), Rational(1)), StructuralError);
    CHECK_THROWS_AS(BoolDomain(Rational(-1), Rational(1)), StructuralError);
}

TEST_CASE("encode_q single positive clause") {
    const auto q = encode_q(parse_dimacs("p cnf 1 1\n1 0\n"));
    const auto d = uni({2, -3, 1});
    CHECK(q == d * d + uni({2, -1}) * uni({2, -1}));
    CHECK(poly_eval(q, at({2})) == Rational(0));
    CHECK(poly_eval(q, at({1})) == Rational(1));
}

TEST_CASE("encode_q unsat pair") {
    const auto q = encode_q(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n"));
    CHECK(q == uni({9, -18, 15, -6, 1}));
    CHECK(q.term_count() == 5);
    CHECK(poly_eval(q, at({1})) == Rational(1));
    CHECK(poly_eval(q, at({2})) == Rational(1));
    CHECK(oracle::grid_roots(q, at({1, 2})).empty());
}

TEST_CASE("encode_q without clauses") {
    const auto q = encode_q(CnfFormula{1, {}});
    CHECK(q == uni({4, -12, 13, -6, 1}));
    const auto roots = oracle::grid_roots(q, at({1, 2}));
    CHECK(roots == std::vector<std::vector<Rational>>{at({1}), at({2})});
}

TEST_CASE("encode_q with a swapped or rescaled domain") {
    const auto f = parse_dimacs("p cnf 2 2\n1 -2 0\n2 0\n");
    const BoolDomain swapped(Rational(2), Rational(1));
    const auto q = encode_q(f, swapped);
    // x1 = true, x2 = true is the only model; true is now encoded as 1.
    CHECK(oracle::grid_roots(q, swapped.values()) == std::vector<std::vector<Rational>>{at({1, 1})});

    const BoolDomain scaled(Rational(1, 3), Rational(5, 2));
    const auto q2 = encode_q(f, scaled);
    CHECK(oracle::grid_roots(q2, scaled.values()) ==
          std::vector<std::vector<Rational>>{at({Rational(5, 2), Rational(5, 2)})});
}

TEST_CASE("decode_assignment") {
    const BoolDomain dom;
    CHECK(decode_assignment(at({2, 1, 2}), dom) == std::vector<bool>{true, false, true});
    CHECK(decode_assignment(at({1}), dom) == std::vector<bool>{false});
    CHECK_THROWS_AS(decode_assignment(at({3}), dom), StructuralError);
}

TEST_CASE("encoding agrees with the truth table on every small formula") {
    std::mt19937_64 rng(424242);
    const BoolDomain dom;
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t u = 1 + trial % 4;
        const auto f = testing::random_formula(rng, u, trial % 7);
        const auto q = encode_q(f, dom);
        const auto roots = oracle::grid_roots(q, dom.values());
        const auto verdict = oracle::truth_table_sat(f);
        CHECK(verdict.satisfiable == !roots.empty());

        // Every grid point: Q vanishes exactly on satisfying assignments.
        std::size_t models = 0;
        for (std::uint32_t code = 0; code < (1U << u); ++code) {
            std::vector<bool> a(u);
            std::vector<Rational> point(u);
            for (std::size_t i = 0; i < u; ++i) {
                a[i] = ((code >> (u - 1 - i)) & 1U) != 0;
                point[i] = a[i] ? dom.n_true() : dom.n_false();
            }
            const bool sat = f.satisfied_by(a);
            models += sat ? 1 : 0;
            CHECK((poly_eval(q, point).is_zero()) == sat);
        }
        CHECK(models == roots.size());
        for (const auto& root : roots) CHECK(f.satisfied_by(decode_assignment(root, dom)));
        if (verdict.witness) {
            REQUIRE_FALSE(roots.empty());
            CHECK(decode_assignment(roots.front(), dom) == *verdict.witness);
        }
    }
}

TEST_CASE("encoded Q is non-negative at random rational points") {
    std::mt19937_64 rng(8);
    const auto f = parse_dimacs("p cnf 3 4\n1 2 -3 0\n-1 2 0\n3 0\n-2 -3 0\n");
    const auto q = encode_q(f);
    for (int i = 0; i < 1000; ++i) {
        CHECK(poly_eval(q, testing::random_point(rng, 3)).sign() >= 0);
    }
}

TEST_CASE("encoded Q term count grows linearly in clauses plus variables") {
    // A variable's square has 5 terms; a clause square has at most 3^3 terms
    // (each of its variables appears with exponent 0, 1 or 2).
    std::mt19937_64 rng(99);
    for (std::size_t u = 3; u <= 8; ++u) {
        for (std::size_t k = 0; k <= 12; k += 4) {
            const auto q = encode_q(testing::random_formula(rng, u, k));
            CHECK(q.term_count() <= 5 * u + 27 * k);
        }
    }
}
