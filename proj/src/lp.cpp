#include "posicert/lp.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "posicert/error.hpp"

namespace posicert {

std::optional<std::size_t> LpProblem::find_column(std::string_view name) const {
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].name == name) return j;
    }
    return std::nullopt;
}

void LpProblem::validate() const {
    std::set<std::string_view> names;
    for (const auto& col : columns) {
        if (col.name.empty()) throw StructuralError("LP column with empty name");
        if (!names.insert(col.name).second) throw StructuralError("duplicate LP column '" + col.name + "'");
    }
    std::vector<bool> used(columns.size(), false);
    for (const auto& row : rows) {
        std::size_t previous = 0;
        bool first = true;
        for (const auto& [j, a] : row.coefficients) {
            if (j >= columns.size()) throw StructuralError("row '" + row.label + "' references missing column");
            if (!first && j <= previous) throw StructuralError("row '" + row.label + "' entries not sorted");
            if (a.is_zero()) throw StructuralError("row '" + row.label + "' stores a zero coefficient");
            used[j] = true;
            previous = j;
            first = false;
        }
    }
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (!used[j]) throw StructuralError("column '" + columns[j].name + "' appears in no constraint");
    }
}

bool LpProblem::has_total_provenance() const {
    return std::all_of(columns.begin(), columns.end(), [](const LpColumn& c) { return c.origin.has_value(); });
}

std::string_view to_string(CoefficientPart part) {
    switch (part) {
        case CoefficientPart::Plain: return "plain";
        case CoefficientPart::Positive: return "pos";
        case CoefficientPart::Negative: return "neg";
    }
    return "?";
}

std::string serialize_lp(const LpProblem& lp) {
    std::string out = "lp 1\ncolumns " + std::to_string(lp.columns.size()) + "\n";
    for (const auto& col : lp.columns) {
        out += "column " + col.name;
        if (col.origin) {
            out += " " + col.origin->multiplier + " " + std::string(to_string(col.origin->part)) + " ";
            const auto& e = col.origin->monomial.exponents();
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (i > 0) out += ',';
                out += std::to_string(e[i]);
            }
        } else {
            out += " - - -";
        }
        out += '\n';
    }
    out += "rows " + std::to_string(lp.rows.size()) + "\n";
    for (const auto& row : lp.rows) {
        out += "row " + row.label + " >= " + row.rhs.str();
        for (const auto& [j, a] : row.coefficients) out += " " + lp.columns[j].name + ":" + a.str();
        out += '\n';
    }
    out += "end\n";
    return out;
}

namespace {

class LineReader {
 public:
    explicit LineReader(std::string_view text) : text_(text) {}

    // Next non-blank line split on whitespace; empty at end of input.
    std::vector<std::string_view> next() {
        while (pos_ < text_.size()) {
            auto end = text_.find('\n', pos_);
            if (end == std::string_view::npos) end = text_.size();
            const auto line = text_.substr(pos_, end - pos_);
            pos_ = end + 1;
            ++line_no_;
            auto tokens = split(line);
            if (!tokens.empty()) return tokens;
        }
        return {};
    }

    [[nodiscard]] std::string where() const { return "line " + std::to_string(line_no_); }

 private:
    static std::vector<std::string_view> split(std::string_view line) {
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

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
};

std::size_t parse_count(std::string_view token, const std::string& where) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError(where + ": expected a count, got '" + std::string(token) + "'");
    }
    return value;
}

Rational parse_coefficient(std::string_view token, const std::string& where) {
    try {
        return Rational::parse_canonical(token);
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

CoefficientPart parse_part(std::string_view token, const std::string& where) {
    if (token == "plain") return CoefficientPart::Plain;
    if (token == "pos") return CoefficientPart::Positive;
    if (token == "neg") return CoefficientPart::Negative;
    throw ParseError(where + ": unknown coefficient part '" + std::string(token) + "'");
}

Monomial parse_exponents(std::string_view token, const std::string& where) {
    std::vector<std::uint32_t> exps;
    std::size_t start = 0;
    while (true) {
        const auto comma = token.find(',', start);
        const auto piece = token.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        exps.push_back(static_cast<std::uint32_t>(parse_count(piece, where)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return Monomial(std::move(exps));
}

}  // namespace

LpProblem parse_lp(std::string_view text) {
    LineReader reader(text);
    LpProblem lp;

    auto tokens = reader.next();
    if (tokens.size() != 2 || tokens[0] != "lp" || tokens[1] != "1") {
        throw ParseError(reader.where() + ": expected 'lp 1'");
    }
    tokens = reader.next();
    if (tokens.size() != 2 || tokens[0] != "columns") throw ParseError(reader.where() + ": expected 'columns <n>'");
    const std::size_t n = parse_count(tokens[1], reader.where());

    std::map<std::string, std::size_t, std::less<>> by_name;
    for (std::size_t j = 0; j < n; ++j) {
        tokens = reader.next();
        if (tokens.size() != 5 || tokens[0] != "column") {
            throw ParseError(reader.where() + ": expected 'column <name> <multiplier> <part> <exponents>'");
        }
        LpColumn col{std::string(tokens[1]), std::nullopt};
        const bool none = tokens[2] == "-" && tokens[3] == "-" && tokens[4] == "-";
        if (!none) {
            col.origin = ColumnOrigin{std::string(tokens[2]), parse_exponents(tokens[4], reader.where()),
                                      parse_part(tokens[3], reader.where())};
        }
        if (!by_name.emplace(col.name, j).second) {
            throw ParseError(reader.where() + ": duplicate column '" + col.name + "'");
        }
        lp.columns.push_back(std::move(col));
    }

    tokens = reader.next();
    if (tokens.size() != 2 || tokens[0] != "rows") throw ParseError(reader.where() + ": expected 'rows <m>'");
    const std::size_t m = parse_count(tokens[1], reader.where());
    for (std::size_t i = 0; i < m; ++i) {
        tokens = reader.next();
        if (tokens.size() < 4 || tokens[0] != "row" || tokens[2] != ">=") {
            throw ParseError(reader.where() + ": expected 'row <label> >= <rhs> ...'");
        }
        LpRow row{std::string(tokens[1]), {}, parse_coefficient(tokens[3], reader.where())};
        for (std::size_t t = 4; t < tokens.size(); ++t) {
            const auto colon = tokens[t].rfind(':');
            if (colon == std::string_view::npos) {
                throw ParseError(reader.where() + ": expected '<column>:<coefficient>'");
            }
            const auto it = by_name.find(tokens[t].substr(0, colon));
            if (it == by_name.end()) {
                throw ParseError(reader.where() + ": unknown column '" + std::string(tokens[t].substr(0, colon)) + "'");
            }
            Rational a = parse_coefficient(tokens[t].substr(colon + 1), reader.where());
            if (a.is_zero()) throw ParseError(reader.where() + ": zero coefficient stored");
            row.coefficients.emplace_back(it->second, std::move(a));
        }
        std::sort(row.coefficients.begin(), row.coefficients.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        lp.rows.push_back(std::move(row));
    }
    tokens = reader.next();
    if (tokens.size() != 1 || tokens[0] != "end") throw ParseError(reader.where() + ": expected 'end'");
    if (!reader.next().empty()) throw ParseError(reader.where() + ": trailing data after 'end'");

    try {
        lp.validate();
    } catch (const StructuralError& e) {
        throw ParseError(e.what());
    }
    return lp;
}

}  // namespace posicert
