#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>

namespace posicert {

/// Exact fraction in canonical form: denominator >= 1, gcd(|num|, den) = 1,
/// zero stored as 0/1. Every arithmetic result is canonical.
class Rational {
 public:
    Rational() = default;

    template <std::signed_integral T>
    Rational(T value) : value_(static_cast<long>(value)) {}  // NOLINT: implicit by design of the literal API

    template <std::unsigned_integral T>
    Rational(T value) : value_(static_cast<unsigned long>(value)) {}  // NOLINT

    Rational(long numerator, long denominator);
    explicit Rational(mpq_class value);

    /// Accepts "a", "-a", "a/b" with any nonzero b and normalizes.
    static Rational parse(std::string_view text);

    /// Accepts only the canonical "num/den" spelling produced by str().
    static Rational parse_canonical(std::string_view text);

    /// Canonical "num/den"; integers keep the "/1".
    [[nodiscard]] std::string str() const;

    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_integer() const;
    [[nodiscard]] Rational abs() const;
    [[nodiscard]] Rational reciprocal() const;

    [[nodiscard]] std::string numerator_str() const;
    [[nodiscard]] std::string denominator_str() const;

    /// Bits in numerator plus bits in denominator.
    [[nodiscard]] std::size_t bit_size() const;

    [[nodiscard]] const mpq_class& raw() const { return value_; }

    Rational& operator+=(const Rational& other);
    Rational& operator-=(const Rational& other);
    Rational& operator*=(const Rational& other);
    Rational& operator/=(const Rational& other);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& lhs, const Rational& rhs) {
        return cmp(lhs.value_, rhs.value_) == 0;
    }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
        return cmp(lhs.value_, rhs.value_) <=> 0;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
    mpq_class value_{0};
};

/// Integer power, exponent >= 0.
Rational pow(const Rational& base, std::size_t exponent);

}  // namespace posicert
