#include "posicert/sat.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <memory>
#include <string>

#include "posicert/error.hpp"

namespace posicert::sat {

bool CnfFormula::satisfied_by(std::span<const bool> assignment) const {
    if (assignment.size() != var_count) throw StructuralError("assignment length mismatch");
    return std::all_of(clauses.begin(), clauses.end(), [&](const Clause& clause) {
        return std::any_of(clause.begin(), clause.end(), [&](const Literal& l) {
            return assignment[l.variable - 1] != l.negated;
        });
    });
}

bool CnfFormula::satisfied_by(const std::vector<bool>& assignment) const {
    // std::vector<bool> has no contiguous storage to span over.
    std::unique_ptr<bool[]> buffer(new bool[assignment.size()]);
    std::copy(assignment.begin(), assignment.end(), buffer.get());
    return satisfied_by(std::span<const bool>(buffer.get(), assignment.size()));
}

BoolDomain::BoolDomain(Rational n_false, Rational n_true)
    : n_false_(std::move(n_false)), n_true_(std::move(n_true)) {
    if (n_false_.sign() <= 0 || n_true_.sign() <= 0) {
        throw StructuralError("domain values must be positive");
    }
    if (n_false_ == n_true_) throw StructuralError("domain values must be distinct");
}

namespace {

struct Token {
    std::string_view text;
    std::size_t line;
};

long parse_int(const Token& tok) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) {
        throw ParseError("line " + std::to_string(tok.line) + ": expected an integer, got '" +
                         std::string(tok.text) + "'");
    }
    return value;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
    CnfFormula f;
    bool have_header = false;
    std::size_t declared_clauses = 0;
    std::vector<Token> body;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        std::vector<std::string_view> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            if (j > i) tokens.push_back(line.substr(i, j - i));
            i = j;
        }
        if (tokens.empty() || tokens[0].starts_with('c')) continue;

        if (!have_header) {
            if (tokens[0] != "p") {
                throw ParseError("line " + std::to_string(line_no) + ": clause data before 'p cnf' header");
            }
            if (tokens.size() != 4 || tokens[1] != "cnf") {
                throw ParseError("line " + std::to_string(line_no) + ": malformed header, expected 'p cnf <vars> <clauses>'");
            }
            const long u = parse_int({tokens[2], line_no});
            const long k = parse_int({tokens[3], line_no});
            if (u < 0 || k < 0) throw ParseError("line " + std::to_string(line_no) + ": negative count in header");
            f.var_count = static_cast<std::size_t>(u);
            declared_clauses = static_cast<std::size_t>(k);
            have_header = true;
            continue;
        }
        if (tokens[0] == "p") throw ParseError("line " + std::to_string(line_no) + ": duplicate header");
        for (auto t : tokens) body.push_back({t, line_no});
    }
    if (!have_header) throw ParseError("missing 'p cnf' header");

    Clause current;
    for (const Token& tok : body) {
        if (f.clauses.size() == declared_clauses) {
            throw ParseError("line " + std::to_string(tok.line) + ": trailing data after " +
                             std::to_string(declared_clauses) + " declared clauses");
        }
        const long lit = parse_int(tok);
        if (lit == 0) {
            const std::size_t ordinal = f.clauses.size() + 1;
            if (current.empty()) {
                throw ParseError("line " + std::to_string(tok.line) + ": clause " +
                                 std::to_string(ordinal) + " is empty");
            }
            if (current.size() > 3) {
                throw ParseError("line " + std::to_string(tok.line) + ": clause " +
                                 std::to_string(ordinal) + " has " + std::to_string(current.size()) +
                                 " literals, at most 3 allowed");
            }
            f.clauses.push_back(std::move(current));
            current.clear();
            continue;
        }
        const auto index = static_cast<std::size_t>(lit < 0 ? -lit : lit);
        if (index > f.var_count) {
            throw ParseError("line " + std::to_string(tok.line) + ": literal " + std::to_string(lit) +
                             " exceeds declared variable count " + std::to_string(f.var_count));
        }
        Literal l{static_cast<std::uint32_t>(index), lit < 0};
        if (std::find(current.begin(), current.end(), l) == current.end()) current.push_back(l);
    }
    if (!current.empty()) {
        throw ParseError("clause " + std::to_string(f.clauses.size() + 1) + " is not terminated by 0");
    }
    if (f.clauses.size() != declared_clauses) {
        throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(f.clauses.size()));
    }
    return f;
}

std::string to_dimacs(const CnfFormula& f) {
    std::string out = "p cnf " + std::to_string(f.var_count) + " " + std::to_string(f.clauses.size()) + "\n";
    for (const auto& clause : f.clauses) {
        for (const auto& l : clause) {
            if (l.negated) out += '-';
            out += std::to_string(l.variable) + " ";
        }
        out += "0\n";
    }
    return out;
}

Polynomial encode_q(const CnfFormula& f, const BoolDomain& domain) {
    if (f.var_count == 0) throw StructuralError("formula must declare at least one variable");
    const std::size_t u = f.var_count;
    const Rational& lo = domain.n_false();
    const Rational& hi = domain.n_true();
    const Rational span_inv = (hi - lo).reciprocal();

    Polynomial q(u);
    for (std::size_t i = 0; i < u; ++i) {
        const Polynomial x = Polynomial::variable(u, i);
        const Polynomial d = (x - Polynomial::constant(u, lo)) * (x - Polynomial::constant(u, hi));
        q += d * d;
    }
    const Polynomial one = Polynomial::constant(u, Rational(1));
    for (const auto& clause : f.clauses) {
        Polynomial c = one;
        for (const auto& l : clause) {
            const Polynomial x = Polynomial::variable(u, l.variable - 1);
            const Polynomial truth = l.negated ? (Polynomial::constant(u, hi) - x) * span_inv
                                               : (x - Polynomial::constant(u, lo)) * span_inv;
            c = c * (one - truth);
        }
        q += c * c;
    }
    return q;
}

std::vector<bool> decode_assignment(std::span<const Rational> point, const BoolDomain& domain) {
    std::vector<bool> out;
    out.reserve(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (point[i] == domain.n_true()) {
            out.push_back(true);
        } else if (point[i] == domain.n_false()) {
            out.push_back(false);
        } else {
            throw StructuralError("coordinate " + std::to_string(i + 1) + " = " + point[i].str() +
                                  " is off the domain grid");
        }
    }
    return out;
}

}  // namespace posicert::sat
