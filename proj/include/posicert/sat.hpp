#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "posicert/polynomial.hpp"
#include "posicert/rational.hpp"

namespace posicert::sat {

struct Literal {
    std::uint32_t variable;  // 1-based, as in DIMACS
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

/// A 3-CNF formula: every clause holds 1 to 3 distinct literals.
struct CnfFormula {
    std::size_t var_count = 0;
    std::vector<Clause> clauses;

    /// assignment[i] is the value of variable i+1.
    [[nodiscard]] bool satisfied_by(std::span<const bool> assignment) const;
    [[nodiscard]] bool satisfied_by(const std::vector<bool>& assignment) const;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// The two grid values a boolean variable is encoded as.
class BoolDomain {
 public:
    /// Throws StructuralError unless both values are positive and distinct.
    BoolDomain(Rational n_false, Rational n_true);
    BoolDomain() : BoolDomain(Rational(1), Rational(2)) {}

    [[nodiscard]] const Rational& n_false() const { return n_false_; }
    [[nodiscard]] const Rational& n_true() const { return n_true_; }
    /// {n_false, n_true} in that order.
    [[nodiscard]] std::vector<Rational> values() const { return {n_false_, n_true_}; }

 private:
    Rational n_false_;
    Rational n_true_;
};

/// Parses DIMACS CNF restricted to clauses of width <= 3. Duplicate literals
/// inside a clause are dropped.
CnfFormula parse_dimacs(std::string_view text);

/// Renders a formula back to DIMACS.
std::string to_dimacs(const CnfFormula& f);

/// Q = sum_i ((x_i - n_false)(x_i - n_true))^2 + sum_j c_j^2 with
/// c_j = prod_t (1 - truth(l_t)), truth(x_i) = (x_i - n_false)/(n_true - n_false)
/// and truth(!x_i) = (n_true - x_i)/(n_true - n_false).
/// Q >= 0 everywhere, and Q(a) = 0 exactly at grid points whose induced
/// assignment satisfies f.
Polynomial encode_q(const CnfFormula& f, const BoolDomain& domain = BoolDomain());

/// Maps a grid point back to booleans; throws StructuralError off the grid.
std::vector<bool> decode_assignment(std::span<const Rational> point, const BoolDomain& domain);

}  // namespace posicert::sat
