#include "posicert/oracle.hpp"

#include <memory>

#include "posicert/error.hpp"

namespace posicert::oracle {

namespace {

std::size_t count_variations(const std::vector<int>& signs) {
    std::size_t changes = 0;
    int previous = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (previous != 0 && s != previous) ++changes;
        previous = s;
    }
    return changes;
}

}  // namespace

SturmChain::SturmChain(const Polynomial& q) {
    if (q.var_count() != 1) throw StructuralError("Sturm chain requires a univariate polynomial");
    if (q.is_zero()) throw StructuralError("Sturm chain of the zero polynomial");
    polys_.push_back(q);
    Polynomial next = poly_derivative(q);
    while (!next.is_zero()) {
        polys_.push_back(next);
        const auto n = polys_.size();
        next = -poly_divmod(polys_[n - 2], polys_[n - 1]).remainder;
    }
}

std::size_t SturmChain::variations_at(const Rational& x) const {
    std::vector<int> signs;
    const std::vector<Rational> point{x};
    for (const auto& p : polys_) signs.push_back(poly_eval(p, point).sign());
    return count_variations(signs);
}

std::size_t SturmChain::variations_at_zero_plus() const {
    std::vector<int> signs;
    for (const auto& p : polys_) signs.push_back(p.terms().begin()->second.sign());
    return count_variations(signs);
}

std::size_t SturmChain::variations_at_pos_infinity() const {
    std::vector<int> signs;
    for (const auto& p : polys_) signs.push_back(p.leading_coefficient().sign());
    return count_variations(signs);
}

std::size_t SturmChain::variations_at_neg_infinity() const {
    std::vector<int> signs;
    for (const auto& p : polys_) {
        const int s = p.leading_coefficient().sign();
        signs.push_back(p.degree() % 2 == 0 ? s : -s);
    }
    return count_variations(signs);
}

Polynomial square_free_part(const Polynomial& q) {
    if (q.var_count() != 1) throw StructuralError("square_free_part requires a univariate polynomial");
    if (q.is_zero()) throw StructuralError("square_free_part of the zero polynomial");
    const Polynomial g = poly_gcd(q, poly_derivative(q));
    if (g.is_zero() || g.degree() == 0) return q;
    return poly_divmod(q, g).quotient;
}

std::size_t count_roots_interval(const Polynomial& q, const RootInterval& interval) {
    if (q.var_count() != 1) throw StructuralError("count_roots_interval requires a univariate polynomial");
    if (q.is_zero()) throw StructuralError("count_roots_interval of the zero polynomial");
    const SturmChain chain(square_free_part(q));
    return std::visit(
        [&](const auto& iv) -> std::size_t {
            using T = std::decay_t<decltype(iv)>;
            if constexpr (std::is_same_v<T, HalfOpenInterval>) {
                if (!(iv.lower < iv.upper)) throw StructuralError("interval lower bound must be below upper");
                return chain.variations_at(iv.lower) - chain.variations_at(iv.upper);
            } else if constexpr (std::is_same_v<T, PositiveHalfLine>) {
                return chain.variations_at_zero_plus() - chain.variations_at_pos_infinity();
            } else {
                return chain.variations_at_neg_infinity() - chain.variations_at_pos_infinity();
            }
        },
        interval);
}

std::vector<std::vector<Rational>> grid_roots(const Polynomial& q, std::span<const Rational> domain) {
    const std::size_t u = q.var_count();
    const std::size_t base = domain.size();
    if (base == 0) throw StructuralError("grid_roots needs a non-empty domain");
    std::size_t total = 1;
    for (std::size_t i = 0; i < u; ++i) {
        if (total > kMaxGridPoints / base) {
            throw LimitExceeded("grid of " + std::to_string(base) + "^" + std::to_string(u) +
                                " points exceeds the enumeration bound of " + std::to_string(kMaxGridPoints));
        }
        total *= base;
    }

    std::vector<std::vector<Rational>> roots;
    std::vector<std::size_t> digits(u, 0);
    std::vector<Rational> point(u, domain[0]);
    for (std::size_t n = 0; n < total; ++n) {
        for (std::size_t i = 0; i < u; ++i) point[i] = domain[digits[i]];
        if (poly_eval(q, point).is_zero()) roots.push_back(point);
        // Last coordinate varies fastest.
        for (std::size_t i = u; i-- > 0;) {
            if (++digits[i] < base) break;
            digits[i] = 0;
        }
    }
    return roots;
}

SatVerdict truth_table_sat(const sat::CnfFormula& f) {
    const std::size_t u = f.var_count;
    if (u > kMaxTruthTableVars) {
        throw LimitExceeded("truth table over " + std::to_string(u) + " variables exceeds the bound of " +
                            std::to_string(kMaxTruthTableVars));
    }
    std::unique_ptr<bool[]> values(new bool[u == 0 ? 1 : u]);
    const std::uint64_t total = std::uint64_t{1} << u;
    for (std::uint64_t code = 0; code < total; ++code) {
        // Variable 1 is the most significant bit.
        for (std::size_t i = 0; i < u; ++i) values[i] = ((code >> (u - 1 - i)) & 1U) != 0;
        if (f.satisfied_by(std::span<const bool>(values.get(), u))) {
            return {true, std::vector<bool>(values.get(), values.get() + u)};
        }
    }
    return {false, std::nullopt};
}

}  // namespace posicert::oracle
