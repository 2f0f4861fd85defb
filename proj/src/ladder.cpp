#include "posicert/ladder.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <future>
#include <stdexcept>

#include "posicert/error.hpp"
#include "posicert/oracle.hpp"
#include "posicert/simplex.hpp"

namespace posicert::ladder {

namespace {

struct RungOutcome {
    LadderRecord record;
    std::optional<Certificate> certificate;
};

RungOutcome solve_rung(const Polynomial& target, const Mode& mode, std::uint32_t degree, bool timing) {
    const bool univariate = std::holds_alternative<UnivariateMode>(mode);
    std::optional<cert::MultivariateAnsatz> ansatz;
    if (!univariate) ansatz.emplace(degree, std::get<MultivariateMode>(mode).domain);

    const LpProblem problem = univariate ? cert::build_univariate_lp(target, degree)
                                         : cert::build_multivariate_lp(target, *ansatz);
    RungOutcome out;
    LadderRecord& rec = out.record;
    rec.degree = degree;
    rec.metrics = cert::constraint_metrics(problem);
    rec.lp_columns = problem.column_count();
    rec.lp_rows = problem.row_count();

    const auto start = std::chrono::steady_clock::now();
    const lp::SolveResult result = lp::solve_feasibility(problem);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    if (timing) {
        rec.solve_millis =
            static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
    }

    rec.feasible = result.feasible();
    rec.sigma = result.phase1_objective;
    rec.pivot_count = result.pivot_count;
    rec.max_entry_bits = result.max_entry_bits;
    if (!result.reduced_costs.empty()) {
        rec.min_reduced_cost = *std::min_element(result.reduced_costs.begin(), result.reduced_costs.end());
    }
    rec.zero_reduced_costs = static_cast<std::size_t>(std::count_if(
        result.reduced_costs.begin(), result.reduced_costs.end(), [](const Rational& d) { return d.is_zero(); }));

    if (rec.feasible) {
        if (!lp::check_solution(problem, result.assignment)) {
            throw AuditFailure("degree " + std::to_string(degree) +
                               ": solver assignment fails re-substitution");
        }
        if (univariate) {
            out.certificate = cert::verify_univariate_certificate(target, degree, result.assignment);
        } else {
            out.certificate = cert::verify_certificate(target, *ansatz, result.assignment);
        }
    }
    return out;
}

std::optional<OracleVerdict> consult_oracle(const Polynomial& q, const Mode& mode, const LadderOptions& options) {
    if (!options.oracle_enabled) return std::nullopt;
    if (std::holds_alternative<UnivariateMode>(mode)) {
        const auto n = oracle::count_roots_interval(q, oracle::PositiveHalfLine{});
        return OracleVerdict{"sturm", n > 0, std::to_string(n) + " distinct root(s) in (0, inf)"};
    }
    if (options.formula) {
        const auto verdict = oracle::truth_table_sat(*options.formula);
        std::string detail = verdict.satisfiable ? "satisfiable, witness " : "unsatisfiable";
        if (verdict.witness) {
            for (bool b : *verdict.witness) detail += b ? '1' : '0';
        }
        return OracleVerdict{"truth-table", verdict.satisfiable, detail};
    }
    const auto& domain = std::get<MultivariateMode>(mode).domain;
    try {
        const auto roots = oracle::grid_roots(q, domain);
        return OracleVerdict{"grid", !roots.empty(), std::to_string(roots.size()) + " grid root(s)"};
    } catch (const LimitExceeded& e) {
        return std::nullopt;
    }
}

}  // namespace

std::string_view to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::CertificateFound: return "CertificateFound";
        case VerdictKind::ConjecturedRoot: return "ConjecturedRoot";
        case VerdictKind::Undetermined: return "Undetermined";
    }
    return "?";
}

LadderVerdict classify_trajectory(std::span<const LadderRecord> records, std::size_t window,
                                  const Rational& tolerance) {
    if (records.empty()) throw std::invalid_argument("classify_trajectory needs at least one record");
    if (window < 2) throw std::invalid_argument("plateau window must be at least 2");
    LadderVerdict verdict;
    for (const auto& rec : records) {
        if (rec.feasible) {
            verdict.kind = VerdictKind::CertificateFound;
            verdict.minimal_degree = rec.degree;
            return verdict;
        }
    }
    if (records.size() >= window) {
        bool plateau = true;
        for (std::size_t i = records.size() - window + 1; i < records.size(); ++i) {
            const Rational& prev = records[i - 1].sigma;
            const Rational& cur = records[i].sigma;
            if (prev.sign() <= 0 || !((cur - prev).abs() / prev < tolerance)) {
                plateau = false;
                break;
            }
        }
        if (plateau) {
            verdict.kind = VerdictKind::ConjecturedRoot;
            verdict.plateau_estimate = records.back().sigma;
        }
    }
    return verdict;
}

LadderRun run_ladder(const Polynomial& q, const Mode& mode, std::uint32_t r_max, const LadderOptions& options) {
    LadderRun run;
    if (std::holds_alternative<UnivariateMode>(mode)) {
        const auto normalized = cert::normalize_univariate(q);
        run.target = normalized.poly;
        run.x_power_removed = normalized.x_power_removed;
        run.negated = normalized.negated;
    } else {
        cert::validate_domain(std::get<MultivariateMode>(mode).domain);
        if (q.is_zero()) throw StructuralError("cannot certify the zero polynomial");
        run.target = q;
    }

    const unsigned jobs = std::max(1U, options.jobs);
    bool stop = false;
    for (std::uint32_t base = 0; base <= r_max && !stop; base += jobs) {
        const std::uint32_t last = std::min<std::uint64_t>(r_max, std::uint64_t{base} + jobs - 1);
        std::vector<std::future<RungOutcome>> pending;
        for (std::uint32_t r = base; r <= last; ++r) {
            pending.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, solve_rung,
                                         std::cref(run.target), std::cref(mode), r, options.record_timing));
        }
        for (auto& f : pending) {
            // Drain every future so worker exceptions are not lost mid-batch.
            RungOutcome outcome = f.get();
            if (stop) continue;
            if (!run.records.empty() && run.records.back().feasible && !outcome.record.feasible) {
                throw std::logic_error("feasibility dropped from degree " +
                                       std::to_string(run.records.back().degree) + " to " +
                                       std::to_string(outcome.record.degree));
            }
            if (!run.records.empty() && outcome.record.sigma > run.records.back().sigma) {
                run.sigma_increases.push_back(outcome.record.degree);
            }
            if (outcome.certificate && !run.certificate) run.certificate = std::move(outcome.certificate);
            const bool feasible = outcome.record.feasible;
            run.records.push_back(std::move(outcome.record));
            if (feasible && !options.continue_after_feasible) stop = true;
        }
    }

    run.verdict = classify_trajectory(run.records, options.plateau_window, options.plateau_tolerance);
    run.verdict.oracle = consult_oracle(q, mode, options);
    if (run.verdict.oracle) {
        const bool root = run.verdict.oracle->has_root;
        if (run.verdict.kind == VerdictKind::CertificateFound && root) {
            throw SoundnessError("certificate at degree " + std::to_string(*run.verdict.minimal_degree) +
                                 " contradicts " + run.verdict.oracle->method + " oracle: " +
                                 run.verdict.oracle->detail);
        }
        run.verdict.counterexample_candidate = run.verdict.kind == VerdictKind::ConjecturedRoot && !root;
    }
    return run;
}

std::string emit_csv(std::span<const LadderRecord> records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : records) {
        out += std::to_string(r.degree) + "," + (r.feasible ? "1" : "0") + "," + r.sigma.numerator_str() + "," +
               r.sigma.denominator_str() + "," + std::to_string(r.lp_columns) + "," + std::to_string(r.lp_rows) +
               "," + std::to_string(r.metrics.max_unique_coefficients_per_row) + "," +
               r.metrics.max_abs_coefficient.str() + "," + std::to_string(r.metrics.max_terms_per_row) + "," +
               std::to_string(r.pivot_count) + "," + std::to_string(r.solve_millis) + "\n";
    }
    return out;
}

namespace {

template <typename T>
T parse_field(std::string_view token, std::size_t line) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("csv line " + std::to_string(line) + ": bad integer '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

std::vector<LadderRecord> parse_csv(std::string_view text) {
    std::vector<LadderRecord> records;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line_no == 1) {
            if (line != kCsvHeader) throw ParseError("csv line 1: unexpected header");
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 11) throw ParseError("csv line " + std::to_string(line_no) + ": expected 11 fields");
        LadderRecord r;
        r.degree = parse_field<std::uint32_t>(fields[0], line_no);
        if (fields[1] != "0" && fields[1] != "1") throw ParseError("csv line " + std::to_string(line_no) + ": bad feasible flag");
        r.feasible = fields[1] == "1";
        r.sigma = Rational::parse_canonical(std::string(fields[2]) + "/" + std::string(fields[3]));
        r.lp_columns = parse_field<std::size_t>(fields[4], line_no);
        r.lp_rows = parse_field<std::size_t>(fields[5], line_no);
        r.metrics.max_unique_coefficients_per_row = parse_field<std::size_t>(fields[6], line_no);
        r.metrics.max_abs_coefficient = Rational::parse_canonical(fields[7]);
        r.metrics.max_terms_per_row = parse_field<std::size_t>(fields[8], line_no);
        r.metrics.row_count = r.lp_rows;
        r.metrics.column_count = r.lp_columns;
        r.pivot_count = parse_field<std::size_t>(fields[9], line_no);
        r.solve_millis = parse_field<std::uint64_t>(fields[10], line_no);
        records.push_back(std::move(r));
    }
    if (line_no == 0) throw ParseError("empty csv document");
    return records;
}

std::string emit_json(const LadderRun& run, const Polynomial& input, const Mode& mode, std::uint32_t r_max,
                      const LadderOptions& options) {
    using nlohmann::json;
    const bool univariate = std::holds_alternative<UnivariateMode>(mode);

    json config{{"mode", univariate ? "univariate" : "multivariate"},
                {"max_degree", r_max},
                {"continue_after_feasible", options.continue_after_feasible},
                {"plateau_window", options.plateau_window},
                {"plateau_tolerance", options.plateau_tolerance.str()},
                {"oracle_enabled", options.oracle_enabled},
                {"record_timing", options.record_timing}};
    if (!univariate) {
        json domain = json::array();
        for (const auto& n : std::get<MultivariateMode>(mode).domain) domain.push_back(n.str());
        config["domain"] = domain;
    }

    json records = json::array();
    for (const auto& r : run.records) {
        records.push_back({{"degree", r.degree},
                           {"feasible", r.feasible},
                           {"sigma", r.sigma.str()},
                           {"lp_columns", r.lp_columns},
                           {"lp_rows", r.lp_rows},
                           {"metrics",
                            {{"max_unique_coefficients_per_row", r.metrics.max_unique_coefficients_per_row},
                             {"max_abs_coefficient", r.metrics.max_abs_coefficient.str()},
                             {"max_terms_per_row", r.metrics.max_terms_per_row},
                             {"row_count", r.metrics.row_count},
                             {"column_count", r.metrics.column_count}}},
                           {"pivot_count", r.pivot_count},
                           {"solve_millis", r.solve_millis},
                           {"reduced_costs", {{"min", r.min_reduced_cost.str()}, {"zero_count", r.zero_reduced_costs}}},
                           {"max_entry_bits", r.max_entry_bits}});
    }

    json verdict{{"kind", std::string(to_string(run.verdict.kind))},
                 {"heuristic", run.verdict.kind != VerdictKind::CertificateFound},
                 {"counterexample_candidate", run.verdict.counterexample_candidate}};
    if (run.verdict.minimal_degree) verdict["minimal_degree"] = *run.verdict.minimal_degree;
    if (run.verdict.plateau_estimate) verdict["plateau_estimate"] = run.verdict.plateau_estimate->str();

    json oracle = nullptr;
    if (run.verdict.oracle) {
        oracle = {{"method", run.verdict.oracle->method},
                  {"has_root", run.verdict.oracle->has_root},
                  {"detail", run.verdict.oracle->detail}};
    }

    json certificate = nullptr;
    if (run.certificate) {
        if (const auto* uc = std::get_if<cert::UnivariateCertificate>(&*run.certificate)) {
            certificate = {{"multiplier", to_text(uc->multiplier)},
                           {"multiplier_pretty", to_pretty(uc->multiplier)},
                           {"product", to_text(uc->product)},
                           {"product_pretty", to_pretty(uc->product)}};
        } else {
            const auto& mc = std::get<cert::MultivariateCertificate>(*run.certificate);
            json multipliers{{"K", to_text(mc.k)}};
            for (std::size_t i = 0; i < mc.k_i.size(); ++i) multipliers["K" + std::to_string(i + 1)] = to_text(mc.k_i[i]);
            certificate = {{"multipliers", multipliers},
                           {"expression", to_text(mc.expression)},
                           {"expression_pretty", to_pretty(mc.expression)}};
        }
    }

    json notes = json::array();
    if (!univariate && input.var_count() == 1) {
        notes.push_back("single-variable input: the domain certificate theorem is stated for u > 1");
    }
    if (run.verdict.kind != VerdictKind::CertificateFound) {
        notes.push_back("no certificate within the degree budget; this is not a proof that a root exists");
    }

    json report{{"input", {{"polynomial", to_text(input)}, {"pretty", to_pretty(input)}, {"var_count", input.var_count()}}},
                {"target", {{"polynomial", to_text(run.target)},
                            {"x_power_removed", run.x_power_removed},
                            {"negated", run.negated}}},
                {"config", config},
                {"records", records},
                {"sigma_increases", run.sigma_increases},
                {"verdict", verdict},
                {"oracle", oracle},
                {"certificate", certificate},
                {"notes", notes}};
    return report.dump(2) + "\n";
}

}  // namespace posicert::ladder
