#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "posicert/polynomial.hpp"
#include "posicert/rational.hpp"
#include "posicert/sat.hpp"

namespace posicert::oracle {

/// Signed remainder sequence f0, f1 = f0', f_{k+1} = -rem(f_{k-1}, f_k).
class SturmChain {
 public:
    /// Chain of the given univariate polynomial as-is (no square-free step).
    explicit SturmChain(const Polynomial& q);

    [[nodiscard]] const std::vector<Polynomial>& polys() const { return polys_; }

    [[nodiscard]] std::size_t variations_at(const Rational& x) const;
    /// Signs just to the right of 0 (lowest-order nonzero coefficients).
    [[nodiscard]] std::size_t variations_at_zero_plus() const;
    [[nodiscard]] std::size_t variations_at_pos_infinity() const;
    [[nodiscard]] std::size_t variations_at_neg_infinity() const;

 private:
    std::vector<Polynomial> polys_;
};

/// Square-free part q / gcd(q, q').
Polynomial square_free_part(const Polynomial& q);

struct HalfOpenInterval {
    Rational lower;  // excluded
    Rational upper;  // included
};
struct PositiveHalfLine {};
struct RealLine {};

using RootInterval = std::variant<HalfOpenInterval, PositiveHalfLine, RealLine>;

/// Distinct real roots of q inside the interval.
std::size_t count_roots_interval(const Polynomial& q, const RootInterval& interval);

inline constexpr std::size_t kMaxGridPoints = std::size_t{1} << 20;

/// Points of domain^u where q vanishes, in lexicographic order of domain
/// positions (first coordinate most significant). Complete only when q's
/// real roots are known to lie on the grid.
std::vector<std::vector<Rational>> grid_roots(const Polynomial& q, std::span<const Rational> domain);

inline constexpr std::size_t kMaxTruthTableVars = 24;

struct SatVerdict {
    bool satisfiable = false;
    /// First satisfying assignment under false < true, variable 1 most
    /// significant.
    std::optional<std::vector<bool>> witness;
};

SatVerdict truth_table_sat(const sat::CnfFormula& f);

}  // namespace posicert::oracle
