#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "posicert/lp.hpp"
#include "posicert/rational.hpp"

namespace posicert::lp {

enum class Feasibility { Feasible, Infeasible };

struct SolveResult {
    Feasibility status = Feasibility::Infeasible;
    /// Optimal sum of artificial variables. Zero iff the LP is feasible.
    Rational phase1_objective;
    /// Value per LP column at the final basis (the phase-1 minimizer when
    /// infeasible).
    std::vector<Rational> assignment;
    /// Phase-1 reduced cost per LP column at the final basis. Under
    /// degeneracy these depend on which optimal basis Bland's rule reached.
    std::vector<Rational> reduced_costs;
    std::size_t pivot_count = 0;
    /// Largest numerator+denominator bit size seen in any pivot row.
    std::size_t max_entry_bits = 0;

    [[nodiscard]] bool feasible() const { return status == Feasibility::Feasible; }
};

struct PivotEvent {
    std::size_t pivot;     // 1-based pivot number
    std::size_t row;       // tableau row that changed basic variable
    std::string entering;  // LP column, "s<i>" for surplus or "a<i>" for artificial
    std::string leaving;
    Rational sigma;        // phase-1 objective after the pivot
    std::size_t row_bits;  // largest entry bit size in the new pivot row
};

struct SolveOptions {
    std::function<void(const PivotEvent&)> trace;
};

/// Phase-1 simplex on exact rationals. Each row a.x >= b becomes
/// a.x - s = b (negated when b < 0) plus one artificial; the sum of
/// artificials is minimized with Bland's lowest-index rule.
SolveResult solve_feasibility(const LpProblem& problem, const SolveOptions& options = {});

/// True iff every value is >= 0 and every row holds exactly. Throws
/// StructuralError when the assignment does not cover all columns.
bool check_solution(const LpProblem& problem, std::span<const Rational> assignment);

/// One-line trace rendering: "pivot <n> row <r> enter <x> leave <y> sigma <s> bits <b>".
std::string format_pivot(const PivotEvent& event);

}  // namespace posicert::lp
