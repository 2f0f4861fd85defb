#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "posicert/polynomial.hpp"
#include "posicert/rational.hpp"

namespace posicert {

enum class CoefficientPart {
    Plain,     // a non-negative multiplier coefficient (univariate P)
    Positive,  // positive part of a split real coefficient
    Negative,  // negative part of a split real coefficient
};

/// Which multiplier coefficient an LP column stands for.
struct ColumnOrigin {
    std::string multiplier;  // "P", "K", "K1" ... "Ku"
    Monomial monomial;
    CoefficientPart part = CoefficientPart::Plain;

    friend bool operator==(const ColumnOrigin&, const ColumnOrigin&) = default;
};

struct LpColumn {
    std::string name;
    std::optional<ColumnOrigin> origin;

    friend bool operator==(const LpColumn&, const LpColumn&) = default;
};

/// sum_j coefficients[j].second * x[coefficients[j].first] >= rhs.
/// Entries are sorted by column index and carry no zeros.
struct LpRow {
    std::string label;
    std::vector<std::pair<std::size_t, Rational>> coefficients;
    Rational rhs;

    friend bool operator==(const LpRow&, const LpRow&) = default;
};

/// Feasibility LP over non-negative columns with >= rows only.
struct LpProblem {
    std::vector<LpColumn> columns;
    std::vector<LpRow> rows;

    [[nodiscard]] std::size_t column_count() const { return columns.size(); }
    [[nodiscard]] std::size_t row_count() const { return rows.size(); }
    [[nodiscard]] std::optional<std::size_t> find_column(std::string_view name) const;

    /// Throws StructuralError on out-of-range or unsorted entries, stored
    /// zeros, duplicate column names, or a column used by no row.
    void validate() const;

    /// True when every column maps back to a multiplier coefficient.
    [[nodiscard]] bool has_total_provenance() const;

    friend bool operator==(const LpProblem&, const LpProblem&) = default;
};

std::string_view to_string(CoefficientPart part);

/// Line-oriented document:
///   lp 1
///   columns <n>
///   column <name> <multiplier|-> <plain|pos|neg|-> <e1,e2,...|->
///   rows <m>
///   row <label> >= <rhs> <name>:<coef> ...
///   end
std::string serialize_lp(const LpProblem& lp);
LpProblem parse_lp(std::string_view text);

}  // namespace posicert
