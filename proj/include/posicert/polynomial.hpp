#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "posicert/rational.hpp"

namespace posicert {

/// Exponent tuple x1^e1 ... xu^eu. Ordered graded-lexicographically:
/// lower total degree first, ties broken by ascending exponent tuple.
class Monomial {
 public:
    Monomial() = default;
    explicit Monomial(std::size_t var_count) : exponents_(var_count, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exponents) : exponents_(std::move(exponents)) {}
    Monomial(std::initializer_list<std::uint32_t> exponents) : exponents_(exponents) {}

    /// x_index^power embedded in var_count variables (index is 0-based).
    static Monomial power_of(std::size_t var_count, std::size_t index, std::uint32_t power);

    [[nodiscard]] std::size_t size() const { return exponents_.size(); }
    [[nodiscard]] std::uint64_t degree() const;
    [[nodiscard]] std::uint32_t operator[](std::size_t i) const { return exponents_[i]; }
    [[nodiscard]] const std::vector<std::uint32_t>& exponents() const { return exponents_; }

    /// Product of monomials (exponent sum).
    [[nodiscard]] Monomial operator*(const Monomial& other) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& lhs, const Monomial& rhs);

 private:
    std::vector<std::uint32_t> exponents_;
};

/// Sparse multivariate polynomial over the rationals. Terms are kept in
/// graded-lex order and no stored coefficient is ever zero.
class Polynomial {
 public:
    using Terms = std::map<Monomial, Rational>;

    explicit Polynomial(std::size_t var_count);

    static Polynomial constant(std::size_t var_count, const Rational& value);
    /// The coordinate polynomial x_index (0-based).
    static Polynomial variable(std::size_t var_count, std::size_t index);
    static Polynomial term(const Monomial& monomial, const Rational& coefficient);
    /// Univariate polynomial from ascending coefficients c0 + c1 x + ...
    static Polynomial univariate(std::span<const Rational> ascending);
    static Polynomial univariate(std::initializer_list<Rational> ascending);

    [[nodiscard]] std::size_t var_count() const { return var_count_; }
    [[nodiscard]] const Terms& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t term_count() const { return terms_.size(); }
    /// Total degree; -1 for the zero polynomial.
    [[nodiscard]] std::int64_t total_degree() const;
    [[nodiscard]] Rational coefficient(const Monomial& monomial) const;
    [[nodiscard]] Rational constant_term() const;

    // Univariate conveniences. All throw StructuralError when var_count != 1.
    [[nodiscard]] std::int64_t degree() const;
    [[nodiscard]] Rational coefficient(std::uint32_t power) const;
    [[nodiscard]] Rational leading_coefficient() const;
    /// Dense ascending coefficient vector, length degree()+1 (empty for zero).
    [[nodiscard]] std::vector<Rational> ascending_coefficients() const;

    /// Adds coefficient * monomial in place, dropping the term if it cancels.
    void add_term(const Monomial& monomial, const Rational& coefficient);

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Rational& scalar);
    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
    friend Polynomial operator*(Polynomial lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Polynomial operator*(const Rational& lhs, Polynomial rhs) { return rhs *= lhs; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
    void require_univariate(const char* op) const;
    void require_same_arity(const Polynomial& other, const char* op) const;

    std::size_t var_count_;
    Terms terms_;
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_pow(const Polynomial& p, std::uint32_t n);
Rational poly_eval(const Polynomial& p, std::span<const Rational> point);
Polynomial poly_derivative(const Polynomial& p);

/// Replaces x with -x in a univariate polynomial.
Polynomial reflect(const Polynomial& p);

struct DivMod {
    Polynomial quotient;
    Polynomial remainder;
};

/// Univariate Euclidean division; divisor must be nonzero.
DivMod poly_divmod(const Polynomial& dividend, const Polynomial& divisor);

/// Monic univariate gcd; gcd(0, 0) = 0.
Polynomial poly_gcd(Polynomial a, Polynomial b);

/// Text format: "vars <u>" then one "<num>/<den> <e1> ... <eu>" line per term.
std::string to_text(const Polynomial& p);
Polynomial parse_polynomial(std::string_view text);

/// Human-readable rendering such as "x1^2 - 3/2*x1*x2 + 1". Single-variable
/// polynomials use "x".
std::string to_pretty(const Polynomial& p);

}  // namespace posicert
