#include "posicert/polynomial.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "posicert/error.hpp"

namespace posicert {

Monomial Monomial::power_of(std::size_t var_count, std::size_t index, std::uint32_t power) {
    Monomial m(var_count);
    m.exponents_.at(index) = power;
    return m;
}

std::uint64_t Monomial::degree() const {
    return std::accumulate(exponents_.begin(), exponents_.end(), std::uint64_t{0});
}

Monomial Monomial::operator*(const Monomial& other) const {
    if (size() != other.size()) throw StructuralError("monomial arity mismatch");
    Monomial out(*this);
    for (std::size_t i = 0; i < size(); ++i) out.exponents_[i] += other.exponents_[i];
    return out;
}

std::strong_ordering operator<=>(const Monomial& lhs, const Monomial& rhs) {
    if (auto c = lhs.degree() <=> rhs.degree(); c != 0) return c;
    return lhs.exponents_ <=> rhs.exponents_;
}

Polynomial::Polynomial(std::size_t var_count) : var_count_(var_count) {
    if (var_count == 0) throw StructuralError("polynomial needs at least one variable");
}

Polynomial Polynomial::constant(std::size_t var_count, const Rational& value) {
    Polynomial p(var_count);
    p.add_term(Monomial(var_count), value);
    return p;
}

Polynomial Polynomial::variable(std::size_t var_count, std::size_t index) {
    if (index >= var_count) throw StructuralError("variable index out of range");
    Polynomial p(var_count);
    p.add_term(Monomial::power_of(var_count, index, 1), Rational(1));
    return p;
}

Polynomial Polynomial::term(const Monomial& monomial, const Rational& coefficient) {
    Polynomial p(monomial.size());
    p.add_term(monomial, coefficient);
    return p;
}

Polynomial Polynomial::univariate(std::span<const Rational> ascending) {
    Polynomial p(1);
    for (std::size_t i = 0; i < ascending.size(); ++i) {
        p.add_term(Monomial{static_cast<std::uint32_t>(i)}, ascending[i]);
    }
    return p;
}

Polynomial Polynomial::univariate(std::initializer_list<Rational> ascending) {
    return univariate(std::span<const Rational>(ascending.begin(), ascending.size()));
}

std::int64_t Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    // Graded order puts the highest total degree last.
    return static_cast<std::int64_t>(terms_.rbegin()->first.degree());
}

Rational Polynomial::coefficient(const Monomial& monomial) const {
    auto it = terms_.find(monomial);
    return it == terms_.end() ? Rational() : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(Monomial(var_count_)); }

void Polynomial::require_univariate(const char* op) const {
    if (var_count_ != 1) {
        throw StructuralError(std::string(op) + " requires a univariate polynomial, got " +
                              std::to_string(var_count_) + " variables");
    }
}

void Polynomial::require_same_arity(const Polynomial& other, const char* op) const {
    if (var_count_ != other.var_count_) {
        throw StructuralError(std::string(op) + ": variable count mismatch (" +
                              std::to_string(var_count_) + " vs " +
                              std::to_string(other.var_count_) + ")");
    }
}

std::int64_t Polynomial::degree() const {
    require_univariate("degree");
    return total_degree();
}

Rational Polynomial::coefficient(std::uint32_t power) const {
    require_univariate("coefficient");
    return coefficient(Monomial{power});
}

Rational Polynomial::leading_coefficient() const {
    require_univariate("leading_coefficient");
    return terms_.empty() ? Rational() : terms_.rbegin()->second;
}

std::vector<Rational> Polynomial::ascending_coefficients() const {
    require_univariate("ascending_coefficients");
    std::vector<Rational> out(static_cast<std::size_t>(degree() + 1));
    for (const auto& [m, c] : terms_) out[m[0]] = c;
    return out;
}

void Polynomial::add_term(const Monomial& monomial, const Rational& coefficient) {
    if (monomial.size() != var_count_) {
        throw StructuralError("monomial has " + std::to_string(monomial.size()) +
                              " exponents, polynomial has " + std::to_string(var_count_) +
                              " variables");
    }
    if (coefficient.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    require_same_arity(other, "add");
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    require_same_arity(other, "subtract");
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
    if (scalar.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= scalar;
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial out(*this);
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
    lhs.require_same_arity(rhs, "multiply");
    Polynomial out(lhs.var_count_);
    for (const auto& [ma, ca] : lhs.terms_) {
        for (const auto& [mb, cb] : rhs.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) { return a + b; }

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }

Polynomial poly_pow(const Polynomial& p, std::uint32_t n) {
    Polynomial result = Polynomial::constant(p.var_count(), Rational(1));
    Polynomial base = p;
    while (n > 0) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n > 0) base = base * base;
    }
    return result;
}

Rational poly_eval(const Polynomial& p, std::span<const Rational> point) {
    if (point.size() != p.var_count()) {
        throw StructuralError("evaluation point has " + std::to_string(point.size()) +
                              " coordinates, polynomial has " + std::to_string(p.var_count()) +
                              " variables");
    }
    Rational sum;
    for (const auto& [m, c] : p.terms()) {
        Rational term = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] != 0) term *= pow(point[i], m[i]);
        }
        sum += term;
    }
    return sum;
}

Polynomial poly_derivative(const Polynomial& p) {
    if (p.var_count() != 1) throw StructuralError("derivative requires a univariate polynomial");
    Polynomial out(1);
    for (const auto& [m, c] : p.terms()) {
        if (m[0] == 0) continue;
        out.add_term(Monomial{m[0] - 1}, c * Rational(m[0]));
    }
    return out;
}

Polynomial reflect(const Polynomial& p) {
    if (p.var_count() != 1) throw StructuralError("reflect requires a univariate polynomial");
    Polynomial out(1);
    for (const auto& [m, c] : p.terms()) out.add_term(m, (m[0] % 2 == 0) ? c : -c);
    return out;
}

DivMod poly_divmod(const Polynomial& dividend, const Polynomial& divisor) {
    if (dividend.var_count() != 1 || divisor.var_count() != 1) {
        throw StructuralError("division requires univariate polynomials");
    }
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    Polynomial quotient(1);
    Polynomial remainder = dividend;
    const auto divisor_degree = divisor.degree();
    const Rational lead = divisor.leading_coefficient();
    while (!remainder.is_zero() && remainder.degree() >= divisor_degree) {
        const auto shift = static_cast<std::uint32_t>(remainder.degree() - divisor_degree);
        const Polynomial step = Polynomial::term(Monomial{shift}, remainder.leading_coefficient() / lead);
        quotient += step;
        remainder -= step * divisor;
    }
    return {std::move(quotient), std::move(remainder)};
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = poly_divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a *= a.leading_coefficient().reciprocal();
    return a;
}

std::string to_text(const Polynomial& p) {
    std::string out = "vars " + std::to_string(p.var_count()) + "\n";
    for (const auto& [m, c] : p.terms()) {
        out += c.str();
        for (auto e : m.exponents()) {
            out += ' ';
            out += std::to_string(e);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <typename T>
T parse_unsigned(std::string_view token, const std::string& where) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(where + ": expected a non-negative integer, got '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    if (lines.empty()) throw ParseError("empty polynomial document");
    const auto header = split_ws(lines[0]);
    if (header.size() != 2 || header[0] != "vars") {
        throw ParseError("line 1: expected 'vars <u>'");
    }
    const auto u = parse_unsigned<std::size_t>(header[1], "line 1");
    if (u == 0) throw ParseError("line 1: variable count must be positive");

    Polynomial p(u);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = "line " + std::to_string(i + 1);
        const auto tokens = split_ws(lines[i]);
        if (tokens.empty()) continue;
        if (tokens.size() != u + 1) {
            throw ParseError(where + ": expected coefficient and " + std::to_string(u) + " exponents");
        }
        Rational c;
        try {
            c = Rational::parse_canonical(tokens[0]);
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
        if (c.is_zero()) throw ParseError(where + ": zero coefficient");
        std::vector<std::uint32_t> exps;
        exps.reserve(u);
        for (std::size_t k = 1; k <= u; ++k) exps.push_back(parse_unsigned<std::uint32_t>(tokens[k], where));
        Monomial m(std::move(exps));
        if (p.terms().contains(m)) throw ParseError(where + ": duplicate monomial");
        p.add_term(m, c);
    }
    return p;
}

std::string to_pretty(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest degree first reads naturally.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        const bool negative = c.sign() < 0;
        const Rational mag = c.abs();
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        std::string factors;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += p.var_count() == 1 ? std::string("x") : "x" + std::to_string(i + 1);
            if (m[i] > 1) factors += "^" + std::to_string(m[i]);
        }
        const std::string scalar = mag.is_integer() ? mag.numerator_str() : mag.str();
        if (factors.empty()) {
            os << scalar;
        } else if (mag == Rational(1)) {
            os << factors;
        } else {
            os << scalar << "*" << factors;
        }
    }
    return os.str();
}

}  // namespace posicert
