#include "posicert/simplex.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>

#include "posicert/error.hpp"

namespace posicert::lp {

namespace {

std::size_t bits(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

// Phase-1 tableau kept as integer equations. Row i reads
// sum_j row_i[j] x_j = rhs_i, with the coefficient of its basic variable
// positive but not necessarily 1; after a pivot on a non-unit element each
// updated row is divided by its content. The objective row carries a shared positive denominator:
// reduced cost j = reduced_[j] / cost_den_, phase-1 objective =
// objective_ / cost_den_.
//
// Logical columns: [0, n) LP columns, [n, n+m) surplus, [n+m, n+2m)
// artificials. A logical column that starts as the negation of an earlier
// one (pos/neg splits, artificial k against surplus k) stays that way under
// row operations, so only one representative is stored and the other is
// read through a sign.
//
// An LP column paired with its negation is one free variable written as
// pos - neg. Such a variable is left out of the ratio test, so once basic it
// never leaves; its row then plays no further part in pricing or ratio
// tests and is frozen, its value recovered by back-substitution at the end.
class Tableau {
 public:
    explicit Tableau(const LpProblem& lp) : n_(lp.column_count()), m_(lp.row_count()), logical_(n_ + 2 * m_) {
        // Pair each LP column with an earlier exact negation, if any.
        std::map<std::vector<std::pair<std::size_t, Rational>>, std::size_t> seen;
        std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(n_);
        for (std::size_t i = 0; i < m_; ++i) {
            for (const auto& [j, a] : lp.rows[i].coefficients) cols[j].emplace_back(i, a);
        }
        std::size_t stored = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            auto negated = cols[j];
            for (auto& e : negated) e.second = -e.second;
            if (auto it = seen.find(negated); it != seen.end()) {
                logical_[j] = {logical_[it->second].stored, true, false, true};
                logical_[it->second].free = true;
                continue;
            }
            seen.emplace(cols[j], j);
            logical_[j] = {stored++, false, false, false};
        }
        const std::size_t surplus0 = stored;
        stored_ = stored + m_;
        rows_.assign(m_, std::vector<mpz_class>(stored_));
        rhs_.resize(m_);
        basis_.resize(m_);
        frozen_.assign(m_, false);
        reduced_.resize(stored_);

        std::vector<mpq_class> reduced_q(stored_);
        mpq_class objective_q;
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& row = lp.rows[i];
            // Clear denominators: scale by the lcm of every denominator in the row.
            mpz_class scale = row.rhs.raw().get_den();
            for (const auto& [j, a] : row.coefficients) {
                mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a.raw().get_den_mpz_t());
            }
            const bool flip = row.rhs.sign() < 0;
            const mpz_class basic = scale;
            if (flip) scale = -scale;
            for (const auto& [j, a] : row.coefficients) {
                if (logical_[j].negated) continue;
                rows_[i][logical_[j].stored] = a.raw().get_num() * (scale / a.raw().get_den());
            }
            rows_[i][surplus0 + i] = -scale;
            logical_[n_ + i] = {surplus0 + i, false, false, false};
            // Artificial column is +basic*e_i: the negated surplus unless flipped.
            logical_[n_ + m_ + i] = {surplus0 + i, !flip, true, false};
            rhs_[i] = row.rhs.raw().get_num() * (scale / row.rhs.raw().get_den());
            basis_[i] = n_ + m_ + i;
            // Phase-1 costs are 1 on artificials: d_j = c_j - sum_i T_ij / basic_i.
            for (std::size_t j = 0; j < stored_; ++j) {
                if (sgn(rows_[i][j]) != 0) reduced_q[j] -= mpq_class(rows_[i][j], basic);
            }
            objective_q += mpq_class(rhs_[i], basic);
        }
        for (auto& q : reduced_q) q.canonicalize();
        objective_q.canonicalize();
        cost_den_ = objective_q.get_den();
        for (const auto& q : reduced_q) mpz_lcm(cost_den_.get_mpz_t(), cost_den_.get_mpz_t(), q.get_den_mpz_t());
        for (std::size_t j = 0; j < stored_; ++j) {
            reduced_[j] = reduced_q[j].get_num() * (cost_den_ / reduced_q[j].get_den());
        }
        objective_ = objective_q.get_num() * (cost_den_ / objective_q.get_den());
    }

    // Lowest-index logical column with negative reduced cost.
    [[nodiscard]] std::optional<std::size_t> entering() const {
        mpz_class d;
        for (std::size_t l = 0; l < logical_.size(); ++l) {
            reduced(l, d);
            if (sgn(d) < 0) return l;
        }
        return std::nullopt;
    }

    // Minimum ratio rhs/coefficient; ties go to the lowest-index basic variable.
    [[nodiscard]] std::optional<std::size_t> leaving(std::size_t col) const {
        std::optional<std::size_t> best;
        mpz_class best_entry;
        mpz_class entry;
        mpz_class lhs;
        mpz_class rhs;
        for (std::size_t i = 0; i < m_; ++i) {
            if (frozen_[i]) continue;
            column_entry(i, col, entry);
            if (sgn(entry) <= 0) continue;
            if (best) {
                // rhs_i / a_i  vs  rhs_best / a_best with positive a's.
                mpz_mul(lhs.get_mpz_t(), rhs_[i].get_mpz_t(), best_entry.get_mpz_t());
                mpz_mul(rhs.get_mpz_t(), rhs_[*best].get_mpz_t(), entry.get_mpz_t());
                const int c = cmp(lhs, rhs);
                if (c > 0 || (c == 0 && basis_[i] > basis_[*best])) continue;
            }
            best = i;
            best_entry = entry;
        }
        return best;
    }

    // Returns the largest bit size among the rows touched by the pivot.
    std::size_t pivot(std::size_t r, std::size_t col) {
        const auto& prow = rows_[r];
        mpz_class p;
        column_entry(r, col, p);
        const bool unit = p == 1;
        std::vector<std::size_t> support;
        for (std::size_t j = 0; j < stored_; ++j) {
            if (sgn(prow[j]) != 0) support.push_back(j);
        }
        std::size_t max_bits = 0;
        mpz_class factor;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || frozen_[i]) continue;
            column_entry(i, col, factor);
            if (sgn(factor) == 0) continue;
            auto& row = rows_[i];
            // row_i <- p*row_i - factor*row_r
            if (!unit) {
                for (auto& v : row) {
                    if (sgn(v) != 0) mpz_mul(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
                }
                mpz_mul(rhs_[i].get_mpz_t(), rhs_[i].get_mpz_t(), p.get_mpz_t());
            }
            for (std::size_t j : support) mpz_submul(row[j].get_mpz_t(), factor.get_mpz_t(), prow[j].get_mpz_t());
            mpz_submul(rhs_[i].get_mpz_t(), factor.get_mpz_t(), rhs_[r].get_mpz_t());
            max_bits = std::max(max_bits, unit ? row_bits(row, rhs_[i]) : reduce_row(row, rhs_[i]));
        }
        // Objective row: den*z - sum d_j x_j = z0, eliminated against row r.
        reduced(col, factor);
        if (!unit) {
            for (auto& v : reduced_) {
                if (sgn(v) != 0) mpz_mul(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
            }
            mpz_mul(objective_.get_mpz_t(), objective_.get_mpz_t(), p.get_mpz_t());
            mpz_mul(cost_den_.get_mpz_t(), cost_den_.get_mpz_t(), p.get_mpz_t());
        }
        for (std::size_t j : support) mpz_submul(reduced_[j].get_mpz_t(), factor.get_mpz_t(), prow[j].get_mpz_t());
        mpz_addmul(objective_.get_mpz_t(), factor.get_mpz_t(), rhs_[r].get_mpz_t());
        if (!unit) reduce_objective();
        basis_[r] = col;
        if (logical_[col].free) {
            frozen_[r] = true;
            freeze_order_.push_back(r);
        }
        for (std::size_t j : support) max_bits = std::max(max_bits, bits(prow[j]));
        return max_bits;
    }

    [[nodiscard]] std::size_t basic(std::size_t row) const { return basis_[row]; }

    [[nodiscard]] Rational objective() const { return Rational(mpq_class(objective_, cost_den_)); }

    [[nodiscard]] std::vector<Rational> primal() const {
        // Net value carried by each stored column: the sum of sign * value
        // over the logical columns sharing it.
        std::vector<mpq_class> net(stored_);
        for (std::size_t i = 0; i < m_; ++i) {
            if (frozen_[i]) continue;
            const auto& l = logical_[basis_[i]];
            mpq_class v(rhs_[i], rows_[i][l.stored]);
            v.canonicalize();
            net[l.stored] = v;
        }
        // A frozen row only involves columns that were nonbasic when it froze,
        // so later freezes are resolved first.
        for (auto it = freeze_order_.rbegin(); it != freeze_order_.rend(); ++it) {
            const std::size_t i = *it;
            const std::size_t k = logical_[basis_[i]].stored;
            mpq_class acc(rhs_[i]);
            for (std::size_t j = 0; j < stored_; ++j) {
                if (j != k && sgn(rows_[i][j]) != 0 && sgn(net[j]) != 0) acc -= mpq_class(rows_[i][j]) * net[j];
            }
            acc /= mpq_class(rows_[i][k]);
            net[k] = acc;
        }
        // A free pair takes the positive part on its stored column and the
        // negative part on its negated twin.
        std::vector<Rational> x(n_);
        std::vector<bool> taken(stored_, false);
        for (std::size_t j = 0; j < n_; ++j) {
            const auto& l = logical_[j];
            if (taken[l.stored]) continue;
            const int s = sgn(net[l.stored]);
            if (s == 0) continue;
            if ((s > 0) != l.negated) {
                x[j] = Rational(l.negated ? mpq_class(-net[l.stored]) : net[l.stored]);
                taken[l.stored] = true;
            }
        }
        return x;
    }

    [[nodiscard]] std::vector<Rational> reduced_costs() const {
        std::vector<Rational> d;
        d.reserve(n_);
        mpz_class v;
        for (std::size_t j = 0; j < n_; ++j) {
            reduced(j, v);
            d.emplace_back(mpq_class(v, cost_den_));
        }
        return d;
    }

 private:
    struct Logical {
        std::size_t stored = 0;
        bool negated = false;
        bool unit_cost = false;
        bool free = false;
    };

    void column_entry(std::size_t row, std::size_t col, mpz_class& out) const {
        const auto& l = logical_[col];
        out = rows_[row][l.stored];
        if (l.negated) mpz_neg(out.get_mpz_t(), out.get_mpz_t());
    }

    // Stored columns all cost 0, so a logical column sign*s with cost c has
    // reduced cost c + sign*d_s.
    void reduced(std::size_t col, mpz_class& out) const {
        const auto& l = logical_[col];
        out = l.unit_cost ? cost_den_ : mpz_class(0);
        if (l.negated) {
            mpz_sub(out.get_mpz_t(), out.get_mpz_t(), reduced_[l.stored].get_mpz_t());
        } else {
            mpz_add(out.get_mpz_t(), out.get_mpz_t(), reduced_[l.stored].get_mpz_t());
        }
    }

    static std::size_t row_bits(const std::vector<mpz_class>& row, const mpz_class& rhs) {
        std::size_t max_bits = bits(rhs);
        for (const auto& v : row) {
            if (sgn(v) != 0) max_bits = std::max(max_bits, bits(v));
        }
        return max_bits;
    }

    // Divides a row and its rhs by their content; returns the largest bit size left.
    static std::size_t reduce_row(std::vector<mpz_class>& row, mpz_class& rhs) {
        mpz_class g = rhs;
        for (const auto& v : row) {
            if (g == 1) break;
            if (sgn(v) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
        g = abs(g);
        if (g > 1) {
            for (auto& v : row) {
                if (sgn(v) != 0) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
            }
            mpz_divexact(rhs.get_mpz_t(), rhs.get_mpz_t(), g.get_mpz_t());
        }
        return row_bits(row, rhs);
    }

    void reduce_objective() {
        mpz_class g = cost_den_;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), objective_.get_mpz_t());
        for (const auto& v : reduced_) {
            if (g == 1) return;
            if (sgn(v) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
        if (g == 1) return;
        for (auto& v : reduced_) {
            if (sgn(v) != 0) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        }
        mpz_divexact(objective_.get_mpz_t(), objective_.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(cost_den_.get_mpz_t(), cost_den_.get_mpz_t(), g.get_mpz_t());
    }

    std::size_t n_;
    std::size_t m_;
    std::size_t stored_ = 0;
    std::vector<Logical> logical_;
    std::vector<std::vector<mpz_class>> rows_;
    std::vector<mpz_class> rhs_;
    std::vector<std::size_t> basis_;
    std::vector<bool> frozen_;
    std::vector<std::size_t> freeze_order_;
    std::vector<mpz_class> reduced_;
    mpz_class objective_;
    mpz_class cost_den_{1};
};

std::string column_label(const LpProblem& lp, std::size_t j) {
    const std::size_t n = lp.column_count();
    const std::size_t m = lp.row_count();
    if (j < n) return lp.columns[j].name;
    if (j < n + m) return "s" + std::to_string(j - n);
    return "a" + std::to_string(j - n - m);
}

}  // namespace

SolveResult solve_feasibility(const LpProblem& problem, const SolveOptions& options) {
    problem.validate();
    Tableau tableau(problem);
    SolveResult result;

    while (auto col = tableau.entering()) {
        const auto row = tableau.leaving(*col);
        if (!row) {
            // Phase 1 is bounded below by zero; reaching this is a solver bug.
            throw std::logic_error("phase-1 simplex reported an unbounded ray");
        }
        const std::size_t leaving = tableau.basic(*row);
        const std::size_t row_bits = tableau.pivot(*row, *col);
        ++result.pivot_count;
        result.max_entry_bits = std::max(result.max_entry_bits, row_bits);
        if (options.trace) {
            options.trace(PivotEvent{result.pivot_count, *row, column_label(problem, *col),
                                     column_label(problem, leaving), tableau.objective(), row_bits});
        }
    }

    result.phase1_objective = tableau.objective();
    result.status = result.phase1_objective.is_zero() ? Feasibility::Feasible : Feasibility::Infeasible;
    result.assignment = tableau.primal();
    result.reduced_costs = tableau.reduced_costs();
    if (result.phase1_objective.sign() < 0) throw std::logic_error("negative phase-1 objective");
    return result;
}

bool check_solution(const LpProblem& problem, std::span<const Rational> assignment) {
    if (assignment.size() != problem.column_count()) {
        throw StructuralError("assignment covers " + std::to_string(assignment.size()) + " of " +
                              std::to_string(problem.column_count()) + " columns");
    }
    for (const auto& v : assignment) {
        if (v.sign() < 0) return false;
    }
    for (const auto& row : problem.rows) {
        Rational lhs;
        for (const auto& [j, a] : row.coefficients) lhs += a * assignment[j];
        if (lhs < row.rhs) return false;
    }
    return true;
}

std::string format_pivot(const PivotEvent& e) {
    return "pivot " + std::to_string(e.pivot) + " row " + std::to_string(e.row) + " enter " + e.entering +
           " leave " + e.leaving + " sigma " + e.sigma.str() + " bits " + std::to_string(e.row_bits);
}

}  // namespace posicert::lp
