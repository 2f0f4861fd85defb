#include <doctest.h>

#include <json.hpp>

#include "posicert/error.hpp"
#include "posicert/ladder.hpp"
#include "posicert/sat.hpp"

using namespace posicert;
using namespace posicert::ladder;

namespace {

Polynomial uni(std::initializer_list<Rational> c) { return Polynomial::univariate(c); }

std::vector<LadderRecord> sigmas(std::initializer_list<Rational> values) {
    std::vector<LadderRecord> out;
    std::uint32_t r = 0;
    for (const auto& s : values) {
        LadderRecord rec;
        rec.degree = r++;
        rec.sigma = s;
        rec.feasible = s.is_zero();
        out.push_back(rec);
    }
    return out;
}

}  // namespace

TEST_CASE("univariate ladder finds P = 1 + x for x^2 - x + 1") {
    LadderOptions options;
    options.oracle_enabled = true;
    const auto run = run_ladder(uni({1, -1, 1}), UnivariateMode{}, 3, options);
    REQUIRE(run.records.size() == 2);
    CHECK_FALSE(run.records[0].feasible);
    CHECK(run.records[0].sigma.sign() > 0);
    CHECK(run.records[1].feasible);
    CHECK(run.records[1].sigma == Rational(0));
    CHECK(run.verdict.kind == VerdictKind::CertificateFound);
    CHECK(run.verdict.minimal_degree == 1U);
    REQUIRE(run.certificate.has_value());
    const auto& c = std::get<cert::UnivariateCertificate>(*run.certificate);
    // P is a positive multiple of 1 + x.
    CHECK(c.multiplier.coefficient(0) == c.multiplier.coefficient(1));
    CHECK(c.multiplier.coefficient(0).sign() > 0);
    CHECK(c.product == uni({1, 0, 0, 1}) * Polynomial::constant(1, c.multiplier.coefficient(0)));
    REQUIRE(run.verdict.oracle.has_value());
    CHECK_FALSE(run.verdict.oracle->has_root);
}

TEST_CASE("x - 1 never certifies") {
    LadderOptions options;
    options.oracle_enabled = true;
    const auto run = run_ladder(uni({-1, 1}), UnivariateMode{}, 5, options);
    REQUIRE(run.records.size() == 6);
    for (const auto& r : run.records) {
        CHECK_FALSE(r.feasible);
        CHECK(r.sigma.sign() > 0);
    }
    CHECK(run.verdict.kind == VerdictKind::ConjecturedRoot);
    REQUIRE(run.verdict.oracle.has_value());
    CHECK(run.verdict.oracle->method == "sturm");
    CHECK(run.verdict.oracle->has_root);
    CHECK_FALSE(run.verdict.counterexample_candidate);
}

TEST_CASE("normalization is reported") {
    const auto run = run_ladder(uni({0, -1, 1, -1}), UnivariateMode{}, 2);
    CHECK(run.x_power_removed == 1);
    CHECK(run.negated);
    CHECK(run.target == uni({1, -1, 1}));
    CHECK(run.verdict.minimal_degree == 1U);
}

TEST_CASE("continue-after-feasible keeps a monotone step") {
    LadderOptions options;
    options.continue_after_feasible = true;
    const auto run = run_ladder(uni({1, -1, 1}), UnivariateMode{}, 4, options);
    REQUIRE(run.records.size() == 5);
    CHECK_FALSE(run.records[0].feasible);
    for (std::size_t r = 1; r < 5; ++r) {
        CHECK(run.records[r].feasible);
        CHECK(run.records[r].degree == r);
    }
    CHECK(run.verdict.minimal_degree == 1U);
}

TEST_CASE("parallel rungs give the same records") {
    LadderOptions serial;
    serial.continue_after_feasible = true;
    LadderOptions parallel = serial;
    parallel.jobs = 3;
    const auto q = uni({1, Rational(-9, 5), 1});
    const auto a = run_ladder(q, UnivariateMode{}, 5, serial);
    const auto b = run_ladder(q, UnivariateMode{}, 5, parallel);
    CHECK(a.records == b.records);

    // Early stop must not leak rungs solved ahead in the same batch.
    LadderOptions early;
    early.jobs = 4;
    const auto c = run_ladder(uni({1, -1, 1}), UnivariateMode{}, 5, early);
    CHECK(c.records.size() == 2);
}

TEST_CASE("multivariate ladder on the unsat pair") {
    LadderOptions options;
    options.oracle_enabled = true;
    options.formula = sat::parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
    const auto q = sat::encode_q(*options.formula);
    const auto run = run_ladder(q, MultivariateMode{}, 4, options);
    CHECK(run.verdict.kind == VerdictKind::CertificateFound);
    REQUIRE(run.certificate.has_value());
    const auto& c = std::get<cert::MultivariateCertificate>(*run.certificate);
    CHECK(c.k_i.size() == 1);
    CHECK(run.verdict.oracle->method == "truth-table");
    CHECK_FALSE(run.verdict.oracle->has_root);
    for (const auto& r : run.records) CHECK(r.feasible == r.sigma.is_zero());
}

TEST_CASE("multivariate ladder on a satisfiable clause stays infeasible") {
    LadderOptions options;
    options.oracle_enabled = true;
    const auto q = sat::encode_q(sat::parse_dimacs("p cnf 2 1\n1 2 0\n"));
    const auto run = run_ladder(q, MultivariateMode{}, 2, options);
    REQUIRE(run.records.size() == 3);
    for (const auto& r : run.records) {
        CHECK_FALSE(r.feasible);
        CHECK(r.sigma.sign() > 0);
    }
    REQUIRE(run.verdict.oracle.has_value());
    CHECK(run.verdict.oracle->method == "grid");
    CHECK(run.verdict.oracle->has_root);
    CHECK(run.verdict.kind != VerdictKind::CertificateFound);
}

TEST_CASE("invalid ladder inputs") {
    CHECK_THROWS_AS(run_ladder(Polynomial(1), UnivariateMode{}, 2), StructuralError);
    CHECK_THROWS_AS(run_ladder(Polynomial(2), MultivariateMode{}, 2), StructuralError);
    CHECK_THROWS_AS(run_ladder(uni({1}), MultivariateMode{{Rational(1), Rational(1)}}, 2), StructuralError);
}

TEST_CASE("classify_trajectory examples") {
    const auto found = classify_trajectory(sigmas({3, 1, 0}), 3, Rational(1, 100));
    CHECK(found.kind == VerdictKind::CertificateFound);
    CHECK(found.minimal_degree == 2U);

    const auto plateau = classify_trajectory(sigmas({5, 2, 1, 1, 1}), 3, Rational(1, 100));
    CHECK(plateau.kind == VerdictKind::ConjecturedRoot);
    CHECK(plateau.plateau_estimate == Rational(1));

    CHECK(classify_trajectory(sigmas({9, 3, 1}), 3, Rational(1, 100)).kind == VerdictKind::Undetermined);
    CHECK(classify_trajectory(sigmas({1, 1}), 3, Rational(1, 100)).kind == VerdictKind::Undetermined);
    // Changes just under and just over the tolerance.
    CHECK(classify_trajectory(sigmas({100, 100, Rational(9901, 100)}), 3, Rational(1, 100)).kind ==
          VerdictKind::ConjecturedRoot);
    CHECK(classify_trajectory(sigmas({100, 100, 99}), 3, Rational(1, 100)).kind == VerdictKind::Undetermined);

    CHECK_THROWS(classify_trajectory(std::vector<LadderRecord>{}, 3, Rational(1, 100)));
    CHECK(to_string(VerdictKind::ConjecturedRoot) == "ConjecturedRoot");
}

TEST_CASE("csv examples") {
    CHECK(emit_csv({}) == std::string(kCsvHeader) + "\n");

    LadderRecord r;
    r.feasible = true;
    r.lp_columns = 1;
    r.lp_rows = 3;
    const auto one = emit_csv(std::vector<LadderRecord>{r});
    CHECK(one == std::string(kCsvHeader) + "\n0,1,0,1,1,3,0,0/1,0,0,0\n");

    const auto run = run_ladder(uni({1, -1, 1}), UnivariateMode{}, 3);
    const auto text = emit_csv(run.records);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(text.find("\n1,1,0,1,") != std::string::npos);
}

TEST_CASE("csv round trip") {
    LadderOptions options;
    options.continue_after_feasible = true;
    const auto run = run_ladder(uni({1, Rational(-9, 5), 1}), UnivariateMode{}, 4, options);
    const auto text = emit_csv(run.records);
    const auto parsed = parse_csv(text);
    REQUIRE(parsed.size() == run.records.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i].sigma == run.records[i].sigma);
        CHECK(parsed[i].metrics == run.records[i].metrics);
    }
    CHECK(emit_csv(parsed) == text);

    CHECK_THROWS_AS(parse_csv(""), ParseError);
    CHECK_THROWS_AS(parse_csv("degree\n"), ParseError);
    CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\n0,2,0,1,1,1,1,1/1,1,0,0\n"), ParseError);
    CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\n0,1,0,1,1,1\n"), ParseError);
    CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\nx,1,0,1,1,1,1,1/1,1,0,0\n"), ParseError);
}

TEST_CASE("json report") {
    LadderOptions options;
    options.oracle_enabled = true;
    const auto q = uni({1, -1, 1});
    const auto run = run_ladder(q, UnivariateMode{}, 3, options);
    const auto text = emit_json(run, q, UnivariateMode{}, 3, options);
    CHECK(text == emit_json(run_ladder(q, UnivariateMode{}, 3, options), q, UnivariateMode{}, 3, options));
    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["verdict"]["kind"] == "CertificateFound");
    CHECK(doc["verdict"]["minimal_degree"] == 1);
    CHECK(doc["verdict"]["heuristic"] == false);
    CHECK(doc["records"].size() == 2);
    CHECK(doc["oracle"]["method"] == "sturm");
    const auto product = parse_polynomial(doc["certificate"]["product"].get<std::string>());
    CHECK(product == std::get<cert::UnivariateCertificate>(*run.certificate).product);
    CHECK(doc["notes"].empty());

    const auto none = run_ladder(uni({-1, 1}), UnivariateMode{}, 1, options);
    const auto doc2 = nlohmann::json::parse(emit_json(none, uni({-1, 1}), UnivariateMode{}, 1, options));
    CHECK(doc2["certificate"].is_null());
    CHECK(doc2["verdict"]["heuristic"] == true);
    CHECK(doc2["notes"].size() == 1);
}
