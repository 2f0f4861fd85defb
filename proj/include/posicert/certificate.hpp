#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "posicert/lp.hpp"
#include "posicert/polynomial.hpp"
#include "posicert/rational.hpp"

namespace posicert::cert {

// ---------------------------------------------------------------------------
// Univariate multiplier search
//
// For a univariate q with q(0) != 0, a multiplier P = p0 + ... + pr x^r with
// p_i >= 0 such that P*q has non-negative coefficients and a constant term
// >= 1 proves q has no root in (0, inf). The LP unknowns are p0..pr.
// ---------------------------------------------------------------------------

struct NormalizedUnivariate {
    Polynomial poly;  // +-q / x^t, positive leading coefficient, poly(0) != 0
    std::uint32_t x_power_removed = 0;
    bool negated = false;
};

NormalizedUnivariate normalize_univariate(const Polynomial& q);

/// Sign alternations of the ascending coefficient sequence, zeros skipped.
std::size_t descartes_sign_changes(const Polynomial& q);

/// Rows: c_m = sum_i p_i q_{m-i} >= 0 for every m in the product support, in
/// ascending m, then the normalization row c_0 >= 1.
LpProblem build_univariate_lp(const Polynomial& q, std::uint32_t degree);

struct UnivariateCertificate {
    Polynomial multiplier;  // P
    Polynomial product;     // P*q
};

/// Re-expands P*q from an LP solution and checks every coefficient. Throws
/// AuditFailure naming the first violated coefficient.
UnivariateCertificate verify_univariate_certificate(const Polynomial& q, std::uint32_t degree,
                                                    std::span<const Rational> solution);

// ---------------------------------------------------------------------------
// Multivariate domain certificate
//
// With domain N = {n1..nM} and P_i = ((x_i - n1)...(x_i - nM))^2, the LP
// searches real multipliers K, K1..Ku of total degree <= d such that
// E = -q*K + sum_i P_i*K_i has all coefficients >= 0 and constant >= 1.
// Each real coefficient is split into two non-negative columns.
// ---------------------------------------------------------------------------

class MultivariateAnsatz {
 public:
    /// Throws StructuralError on an empty, non-positive, or repeated domain.
    MultivariateAnsatz(std::uint32_t degree, std::vector<Rational> domain);

    [[nodiscard]] std::uint32_t degree() const { return degree_; }
    [[nodiscard]] const std::vector<Rational>& domain() const { return domain_; }

 private:
    std::uint32_t degree_;
    std::vector<Rational> domain_;
};

/// Checks the domain is non-empty, positive and duplicate-free.
void validate_domain(std::span<const Rational> domain);

/// P_1..P_u, each the square of prod_m (x_i - n_m) embedded in u variables.
std::vector<Polynomial> build_domain_polys(std::span<const Rational> domain, std::size_t var_count);

/// All monomials in var_count variables of total degree <= degree, graded-lex.
std::vector<Monomial> monomials_up_to(std::size_t var_count, std::uint32_t degree);

/// Multiplier names in column order: "K", "K1", ..., "Ku".
std::vector<std::string> multiplier_names(std::size_t var_count);

/// Column name for one split coefficient, e.g. "K2_1_0_pos".
std::string split_column_name(const std::string& multiplier, const Monomial& m, CoefficientPart part);

LpProblem build_multivariate_lp(const Polynomial& q, const MultivariateAnsatz& ansatz);

struct MultivariateCertificate {
    Polynomial k;
    std::vector<Polynomial> k_i;
    Polynomial expression;  // E
};

/// Rebuilds K, K1..Ku from the column layout implied by the ansatz
/// (coefficient = pos - neg), expands E exactly and audits it. Throws
/// AuditFailure naming the offending monomial.
MultivariateCertificate verify_certificate(const Polynomial& q, const MultivariateAnsatz& ansatz,
                                           std::span<const Rational> solution);

// ---------------------------------------------------------------------------

struct ConstraintMetrics {
    std::size_t max_unique_coefficients_per_row = 0;
    Rational max_abs_coefficient;
    std::size_t max_terms_per_row = 0;
    std::size_t row_count = 0;
    std::size_t column_count = 0;

    friend bool operator==(const ConstraintMetrics&, const ConstraintMetrics&) = default;
};

ConstraintMetrics constraint_metrics(const LpProblem& lp);

}  // namespace posicert::cert
