#include "posicert/certificate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "posicert/error.hpp"

namespace posicert::cert {

namespace {

std::string monomial_suffix(const Monomial& m) {
    std::string out;
    for (auto e : m.exponents()) out += "_" + std::to_string(e);
    return out;
}

std::string describe(const Monomial& m) {
    const std::string pretty = to_pretty(Polynomial::term(m, Rational(1)));
    return pretty == "1" ? "the constant term" : "monomial " + pretty;
}

}  // namespace

NormalizedUnivariate normalize_univariate(const Polynomial& q) {
    if (q.var_count() != 1) throw StructuralError("normalize_univariate requires a univariate polynomial");
    if (q.is_zero()) throw StructuralError("cannot normalize the zero polynomial");
    NormalizedUnivariate out{Polynomial(1), 0, false};
    // Lowest power present is the multiplicity of the root at 0.
    out.x_power_removed = q.terms().begin()->first[0];
    out.negated = q.leading_coefficient().sign() < 0;
    for (const auto& [m, c] : q.terms()) {
        out.poly.add_term(Monomial{m[0] - out.x_power_removed}, out.negated ? -c : c);
    }
    return out;
}

std::size_t descartes_sign_changes(const Polynomial& q) {
    if (q.var_count() != 1) throw StructuralError("descartes_sign_changes requires a univariate polynomial");
    if (q.is_zero()) throw StructuralError("descartes_sign_changes of the zero polynomial");
    std::size_t changes = 0;
    int previous = 0;
    for (const auto& [m, c] : q.terms()) {
        if (previous != 0 && c.sign() != previous) ++changes;
        previous = c.sign();
    }
    return changes;
}

LpProblem build_univariate_lp(const Polynomial& q, std::uint32_t degree) {
    if (q.var_count() != 1) throw StructuralError("build_univariate_lp requires a univariate polynomial");
    if (q.constant_term().is_zero()) {
        throw StructuralError("build_univariate_lp requires q(0) != 0; normalize first");
    }
    LpProblem lp;
    for (std::uint32_t i = 0; i <= degree; ++i) {
        lp.columns.push_back({"P_" + std::to_string(i), ColumnOrigin{"P", Monomial{i}, CoefficientPart::Plain}});
    }
    const auto coeffs = q.ascending_coefficients();
    const auto q_degree = static_cast<std::size_t>(q.degree());
    for (std::size_t m = 0; m <= q_degree + degree; ++m) {
        LpRow row{"c_" + std::to_string(m), {}, Rational()};
        const std::size_t lo = m > q_degree ? m - q_degree : 0;
        const std::size_t hi = std::min<std::size_t>(m, degree);
        for (std::size_t i = lo; i <= hi; ++i) {
            const Rational& a = coeffs[m - i];
            if (!a.is_zero()) row.coefficients.emplace_back(i, a);
        }
        if (!row.coefficients.empty()) lp.rows.push_back(std::move(row));
    }
    lp.rows.push_back({"norm", {{0, coeffs[0]}}, Rational(1)});
    return lp;
}

UnivariateCertificate verify_univariate_certificate(const Polynomial& q, std::uint32_t degree,
                                                    std::span<const Rational> solution) {
    if (solution.size() != static_cast<std::size_t>(degree) + 1) {
        throw StructuralError("univariate solution has " + std::to_string(solution.size()) +
                              " entries, expected " + std::to_string(degree + 1));
    }
    for (std::size_t i = 0; i < solution.size(); ++i) {
        if (solution[i].sign() < 0) {
            throw AuditFailure("multiplier coefficient p" + std::to_string(i) + " = " + solution[i].str() +
                               " is negative");
        }
    }
    UnivariateCertificate cert{Polynomial::univariate(solution), Polynomial(1)};
    cert.product = cert.multiplier * q;
    for (const auto& [m, c] : cert.product.terms()) {
        if (c.sign() < 0) {
            throw AuditFailure("product coefficient of " + describe(m) + " is " + c.str() + " < 0");
        }
    }
    if (cert.product.constant_term() < Rational(1)) {
        throw AuditFailure("product constant term is " + cert.product.constant_term().str() + " < 1");
    }
    return cert;
}

MultivariateAnsatz::MultivariateAnsatz(std::uint32_t degree, std::vector<Rational> domain)
    : degree_(degree), domain_(std::move(domain)) {
    validate_domain(domain_);
}

void validate_domain(std::span<const Rational> domain) {
    if (domain.empty()) throw StructuralError("domain set must be non-empty");
    std::set<Rational> seen;
    for (const auto& n : domain) {
        if (n.sign() <= 0) throw StructuralError("domain value " + n.str() + " is not positive");
        if (!seen.insert(n).second) throw StructuralError("domain value " + n.str() + " repeated");
    }
}

std::vector<Polynomial> build_domain_polys(std::span<const Rational> domain, std::size_t var_count) {
    validate_domain(domain);
    if (var_count == 0) throw StructuralError("need at least one variable");
    std::vector<Polynomial> out;
    out.reserve(var_count);
    for (std::size_t i = 0; i < var_count; ++i) {
        const Polynomial x = Polynomial::variable(var_count, i);
        Polynomial root_product = Polynomial::constant(var_count, Rational(1));
        for (const auto& n : domain) root_product = root_product * (x - Polynomial::constant(var_count, n));
        out.push_back(poly_pow(root_product, 2));
    }
    return out;
}

std::vector<Monomial> monomials_up_to(std::size_t var_count, std::uint32_t degree) {
    std::set<Monomial> all;
    std::vector<std::uint32_t> exps(var_count, 0);
    // Odometer over the box [0, degree]^u, keeping total degree <= degree.
    while (true) {
        all.insert(Monomial(exps));
        std::size_t i = 0;
        for (; i < var_count; ++i) {
            ++exps[i];
            std::uint64_t total = 0;
            for (auto e : exps) total += e;
            if (total <= degree) break;
            exps[i] = 0;
        }
        if (i == var_count) break;
    }
    return {all.begin(), all.end()};
}

std::vector<std::string> multiplier_names(std::size_t var_count) {
    std::vector<std::string> names{"K"};
    for (std::size_t i = 1; i <= var_count; ++i) names.push_back("K" + std::to_string(i));
    return names;
}

std::string split_column_name(const std::string& multiplier, const Monomial& m, CoefficientPart part) {
    return multiplier + monomial_suffix(m) + "_" + std::string(to_string(part));
}

LpProblem build_multivariate_lp(const Polynomial& q, const MultivariateAnsatz& ansatz) {
    const std::size_t u = q.var_count();
    if (q.is_zero()) throw StructuralError("build_multivariate_lp: q is the zero polynomial");

    // Generator multiplying each unknown: -q for K, P_i for K_i.
    std::vector<Polynomial> generators{-q};
    for (auto& p : build_domain_polys(ansatz.domain(), u)) generators.push_back(std::move(p));
    const auto names = multiplier_names(u);
    const auto basis = monomials_up_to(u, ansatz.degree());

    LpProblem lp;
    std::map<Monomial, std::map<std::size_t, Rational>> rows;
    for (std::size_t g = 0; g < generators.size(); ++g) {
        for (const auto& m : basis) {
            const std::size_t pos = lp.columns.size();
            lp.columns.push_back({split_column_name(names[g], m, CoefficientPart::Positive),
                                  ColumnOrigin{names[g], m, CoefficientPart::Positive}});
            lp.columns.push_back({split_column_name(names[g], m, CoefficientPart::Negative),
                                  ColumnOrigin{names[g], m, CoefficientPart::Negative}});
            for (const auto& [t, c] : generators[g].terms()) {
                auto& row = rows[t * m];
                row.emplace(pos, c);
                row.emplace(pos + 1, -c);
            }
        }
    }
    const Monomial one(u);
    for (const auto& [monomial, entries] : rows) {
        LpRow row{"E" + monomial_suffix(monomial), {entries.begin(), entries.end()}, Rational()};
        lp.rows.push_back(std::move(row));
    }
    const auto constant = rows.find(one);
    if (constant == rows.end()) throw StructuralError("E has no constant term to normalize");
    lp.rows.push_back({"norm", {constant->second.begin(), constant->second.end()}, Rational(1)});
    return lp;
}

MultivariateCertificate verify_certificate(const Polynomial& q, const MultivariateAnsatz& ansatz,
                                           std::span<const Rational> solution) {
    const std::size_t u = q.var_count();
    const auto names = multiplier_names(u);
    const auto basis = monomials_up_to(u, ansatz.degree());
    const std::size_t expected = names.size() * basis.size() * 2;
    if (solution.size() != expected) {
        throw StructuralError("multivariate solution has " + std::to_string(solution.size()) +
                              " entries, expected " + std::to_string(expected));
    }

    std::vector<Polynomial> multipliers(names.size(), Polynomial(u));
    std::size_t col = 0;
    for (std::size_t g = 0; g < names.size(); ++g) {
        for (const auto& m : basis) {
            const Rational& pos = solution[col];
            const Rational& neg = solution[col + 1];
            if (pos.sign() < 0 || neg.sign() < 0) {
                const auto part = pos.sign() < 0 ? CoefficientPart::Positive : CoefficientPart::Negative;
                throw AuditFailure("column " + split_column_name(names[g], m, part) + " is negative");
            }
            multipliers[g].add_term(m, pos - neg);
            col += 2;
        }
    }

    MultivariateCertificate cert{multipliers[0], {multipliers.begin() + 1, multipliers.end()}, Polynomial(u)};
    const auto domain_polys = build_domain_polys(ansatz.domain(), u);
    cert.expression = -(q * cert.k);
    for (std::size_t i = 0; i < u; ++i) cert.expression += domain_polys[i] * cert.k_i[i];

    for (const auto& [m, c] : cert.expression.terms()) {
        if (c.sign() < 0) throw AuditFailure("coefficient of " + describe(m) + " in E is " + c.str() + " < 0");
    }
    const Rational constant = cert.expression.constant_term();
    if (constant < Rational(1)) throw AuditFailure("constant term of E is " + constant.str() + " < 1");
    return cert;
}

ConstraintMetrics constraint_metrics(const LpProblem& lp) {
    ConstraintMetrics out;
    out.row_count = lp.row_count();
    out.column_count = lp.column_count();
    for (const auto& row : lp.rows) {
        std::set<Rational> unique;
        for (const auto& [j, a] : row.coefficients) {
            unique.insert(a);
            out.max_abs_coefficient = std::max(out.max_abs_coefficient, a.abs());
        }
        out.max_unique_coefficients_per_row = std::max(out.max_unique_coefficients_per_row, unique.size());
        out.max_terms_per_row = std::max(out.max_terms_per_row, row.coefficients.size());
    }
    return out;
}

}  // namespace posicert::cert
