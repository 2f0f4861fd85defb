#include "posicert/rational.hpp"

#include <algorithm>
#include <cctype>

#include "posicert/error.hpp"

namespace posicert {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool is_signed_integer(std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    return all_digits(s);
}

bool has_leading_zero(std::string_view digits) {
    return digits.size() > 1 && digits.front() == '0';
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!is_signed_integer(num)) throw ParseError("malformed rational '" + std::string(text) + "'");
    mpq_class q;
    q.get_num() = mpz_class(std::string(num));
    if (slash == std::string_view::npos) {
        q.get_den() = 1;
    } else {
        const auto den = text.substr(slash + 1);
        if (!all_digits(den)) throw ParseError("malformed rational '" + std::string(text) + "'");
        q.get_den() = mpz_class(std::string(den));
        if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(std::move(q));
}

Rational Rational::parse_canonical(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        throw ParseError("rational '" + std::string(text) + "' lacks mandatory '/den'");
    }
    auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    const bool negative = !num.empty() && num.front() == '-';
    if (negative) num.remove_prefix(1);
    if (!all_digits(num) || !all_digits(den) || has_leading_zero(num) || has_leading_zero(den)) {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    Rational r = parse(text);
    if (r.str() != text) throw ParseError("non-canonical rational '" + std::string(text) + "'");
    return r;
}

std::string Rational::str() const { return numerator_str() + "/" + denominator_str(); }

bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::domain_error("reciprocal of zero");
    return Rational(mpq_class(1 / value_));
}

std::string Rational::numerator_str() const { return value_.get_num().get_str(); }
std::string Rational::denominator_str() const { return value_.get_den().get_str(); }

std::size_t Rational::bit_size() const {
    return mpz_sizeinbase(value_.get_num_mpz_t(), 2) + mpz_sizeinbase(value_.get_den_mpz_t(), 2);
}

Rational& Rational::operator+=(const Rational& other) {
    value_ += other.value_;
    return *this;
}
Rational& Rational::operator-=(const Rational& other) {
    value_ -= other.value_;
    return *this;
}
Rational& Rational::operator*=(const Rational& other) {
    value_ *= other.value_;
    return *this;
}
Rational& Rational::operator/=(const Rational& other) {
    if (other.is_zero()) throw std::domain_error("division by zero");
    value_ /= other.value_;
    return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational pow(const Rational& base, std::size_t exponent) {
    mpq_class result;
    mpz_pow_ui(result.get_num_mpz_t(), base.raw().get_num_mpz_t(), exponent);
    mpz_pow_ui(result.get_den_mpz_t(), base.raw().get_den_mpz_t(), exponent);
    return Rational(std::move(result));
}

}  // namespace posicert
