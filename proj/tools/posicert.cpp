// posicert: command-line front end for encoding, certificate search,
// degree ladders, ground-truth oracles and raw LP solving.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "posicert/certificate.hpp"
#include "posicert/error.hpp"
#include "posicert/ladder.hpp"
#include "posicert/lp.hpp"
#include "posicert/oracle.hpp"
#include "posicert/polynomial.hpp"
#include "posicert/sat.hpp"
#include "posicert/simplex.hpp"

namespace {

using namespace posicert;

constexpr int kExitParse = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading " + path);
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    out.flush();
    if (!out) throw IoError("error writing " + path);
}

// Canonical positive rationals only: "2", "3/2"; "4/2" and "0" are rejected.
std::vector<Rational> parse_domain(const std::string& text) {
    std::vector<Rational> values;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const Rational v = Rational::parse(token);
        const bool canonical = token == v.str() || (v.is_integer() && token == v.numerator_str());
        if (!canonical) throw ParseError("domain value '" + token + "' is not in lowest terms");
        if (v.sign() <= 0) throw ParseError("domain value '" + token + "' must be positive");
        values.push_back(v);
    }
    if (values.empty()) throw ParseError("empty domain");
    cert::validate_domain(values);
    return values;
}

sat::BoolDomain bool_domain(const std::vector<Rational>& values) {
    if (values.size() != 2) throw ParseError("encoding needs exactly two domain values (false,true)");
    return sat::BoolDomain(values[0], values[1]);
}

struct Common {
    std::string cnf;
    std::string poly;
    std::string mode;
    std::string domain = "1,2";
};

struct Input {
    Polynomial q{1};
    std::optional<sat::CnfFormula> formula;
};

Input load_input(const Common& c) {
    if (c.cnf.empty() == c.poly.empty()) throw ParseError("give exactly one of --cnf or --poly");
    const auto domain = parse_domain(c.domain);
    Input in;
    if (!c.cnf.empty()) {
        in.formula = sat::parse_dimacs(read_file(c.cnf));
        in.q = sat::encode_q(*in.formula, bool_domain(domain));
    } else {
        in.q = parse_polynomial(read_file(c.poly));
    }
    return in;
}

// Encoded CNF input is always multivariate; polynomials default by arity.
ladder::Mode pick_mode(const Common& c, const Input& in) {
    std::string mode = c.mode;
    if (mode.empty()) mode = (in.formula || in.q.var_count() > 1) ? "multi" : "uni";
    if (mode == "uni") {
        if (in.formula) throw ParseError("--mode uni does not apply to --cnf input");
        return ladder::UnivariateMode{};
    }
    return ladder::MultivariateMode{parse_domain(c.domain)};
}

void add_common(CLI::App* app, Common& c, bool with_mode) {
    app->add_option("--cnf", c.cnf, "DIMACS CNF input (encoded to Q)");
    app->add_option("--poly", c.poly, "polynomial text file");
    if (with_mode) app->add_option("--mode", c.mode, "uni or multi (default: uni for 1-variable polynomials)")
                       ->check(CLI::IsMember({"uni", "multi"}));
    app->add_option("--domain", c.domain, "comma-separated positive rationals")->capture_default_str();
}

struct LadderFlags {
    std::uint32_t max_degree = 6;
    bool continue_after = false;
    std::string csv;
    std::string json;
    bool oracle = false;
    std::size_t window = 3;
    std::string tolerance = "1/100";
    bool timing = false;
    unsigned jobs = 1;
};

void add_ladder_flags(CLI::App* app, LadderFlags& f, bool full) {
    app->add_option("--max-degree", f.max_degree, "largest multiplier degree")->capture_default_str();
    if (full) {
        app->add_option("--csv", f.csv, "write the trajectory CSV here");
    } else {
        app->add_flag("--continue-after-feasible", f.continue_after, "keep climbing after the first certificate");
    }
    app->add_option("--json", f.json, "write the JSON report here");
    app->add_flag("--oracle", f.oracle, "consult the ground-truth oracle");
    app->add_option("--plateau-window", f.window, "rungs in the plateau window")->capture_default_str();
    app->add_option("--plateau-tol", f.tolerance, "relative plateau tolerance p/q")->capture_default_str();
    app->add_flag("--timing", f.timing, "record wall-clock solve times (not reproducible)");
    app->add_option("--jobs", f.jobs, "rungs solved concurrently")->capture_default_str();
}

ladder::LadderOptions ladder_options(const LadderFlags& f, const Input& in) {
    ladder::LadderOptions o;
    o.continue_after_feasible = f.continue_after;
    if (f.window < 2) throw ParseError("--plateau-window must be at least 2");
    o.plateau_window = f.window;
    o.plateau_tolerance = Rational::parse(f.tolerance);
    if (o.plateau_tolerance.sign() <= 0) throw ParseError("--plateau-tol must be positive");
    o.record_timing = f.timing;
    o.oracle_enabled = f.oracle;
    o.formula = in.formula;
    o.jobs = f.jobs;
    return o;
}

void print_records(const ladder::LadderRun& run) {
    for (const auto& r : run.records) {
        std::cout << "degree " << r.degree << (r.feasible ? " feasible" : " infeasible") << " sigma " << r.sigma
                  << " columns " << r.lp_columns << " rows " << r.lp_rows << " pivots " << r.pivot_count << "\n";
    }
    std::cout << "verdict " << ladder::to_string(run.verdict.kind);
    if (run.verdict.minimal_degree) std::cout << " degree " << *run.verdict.minimal_degree;
    if (run.verdict.plateau_estimate) std::cout << " plateau " << *run.verdict.plateau_estimate << " (heuristic)";
    std::cout << "\n";
    if (run.verdict.oracle) {
        std::cout << "oracle " << run.verdict.oracle->method << ": " << run.verdict.oracle->detail << "\n";
        if (run.verdict.counterexample_candidate) std::cout << "conjecture counterexample candidate\n";
    }
}

int cmd_encode(const Common& c, const std::string& out) {
    if (c.cnf.empty()) throw ParseError("encode needs --cnf");
    const auto f = sat::parse_dimacs(read_file(c.cnf));
    const auto q = sat::encode_q(f, bool_domain(parse_domain(c.domain)));
    const auto text = to_text(q);
    std::ostream& info = out.empty() ? std::cerr : std::cout;
    if (out.empty()) {
        std::cout << text;
    } else {
        write_file(out, text);
    }
    info << "u " << f.var_count << " k " << f.clauses.size() << " terms " << q.term_count() << " degree "
         << q.total_degree() << "\n";
    return 0;
}

int cmd_certify(const Common& c, const LadderFlags& f) {
    const auto in = load_input(c);
    const auto mode = pick_mode(c, in);
    const auto options = ladder_options(f, in);
    const auto run = ladder::run_ladder(in.q, mode, f.max_degree, options);
    if (!f.json.empty()) write_file(f.json, ladder::emit_json(run, in.q, mode, f.max_degree, options));
    print_records(run);
    if (run.verdict.kind == ladder::VerdictKind::CertificateFound) {
        std::cout << "certificate found: no root in the certified region\n";
        return 0;
    }
    std::cout << "no certificate within degree " << f.max_degree << "\n";
    return 1;
}

int cmd_ladder(const Common& c, LadderFlags f) {
    f.continue_after = true;
    const auto in = load_input(c);
    const auto mode = pick_mode(c, in);
    const auto options = ladder_options(f, in);
    const auto run = ladder::run_ladder(in.q, mode, f.max_degree, options);
    const auto csv = ladder::emit_csv(run.records);
    if (!f.csv.empty()) {
        write_file(f.csv, csv);
    }
    if (!f.json.empty()) write_file(f.json, ladder::emit_json(run, in.q, mode, f.max_degree, options));
    if (f.csv.empty()) {
        std::cout << csv;
    } else {
        print_records(run);
    }
    return 0;
}

int cmd_oracle(const Common& c, const std::string& interval) {
    if (c.cnf.empty() == c.poly.empty()) throw ParseError("give exactly one of --cnf or --poly");
    const auto domain = parse_domain(c.domain);
    if (!c.cnf.empty()) {
        const auto verdict = oracle::truth_table_sat(sat::parse_dimacs(read_file(c.cnf)));
        if (!verdict.satisfiable) {
            std::cout << "UNSAT\n";
            return 1;
        }
        std::cout << "SAT";
        for (std::size_t i = 0; i < verdict.witness->size(); ++i) {
            std::cout << " x" << (i + 1) << "=" << ((*verdict.witness)[i] ? "true" : "false");
        }
        std::cout << "\n";
        return 0;
    }
    const auto q = parse_polynomial(read_file(c.poly));
    const bool univariate = c.mode.empty() ? q.var_count() == 1 : c.mode == "uni";
    if (univariate) {
        if (q.var_count() != 1) throw ParseError("--mode uni needs a 1-variable polynomial");
        oracle::RootInterval iv = oracle::PositiveHalfLine{};
        std::string label = "(0, inf)";
        if (interval == "real") {
            iv = oracle::RealLine{};
            label = "(-inf, inf)";
        } else if (interval != "positive") {
            const auto colon = interval.find(':');
            if (colon == std::string::npos) throw ParseError("--interval must be positive, real or a:b");
            const auto a = Rational::parse(interval.substr(0, colon));
            const auto b = Rational::parse(interval.substr(colon + 1));
            iv = oracle::HalfOpenInterval{a, b};
            label = "(" + a.str() + ", " + b.str() + "]";
        }
        const auto n = oracle::count_roots_interval(q, iv);
        std::cout << n << " distinct real root(s) in " << label << " (sturm)\n";
        return n > 0 ? 0 : 1;
    }
    const auto roots = oracle::grid_roots(q, domain);
    std::cout << roots.size() << " grid root(s)\n";
    for (const auto& p : roots) {
        std::cout << "root";
        for (const auto& v : p) std::cout << " " << v;
        std::cout << "\n";
    }
    return roots.empty() ? 1 : 0;
}

int cmd_solve_lp(const std::string& path, bool trace) {
    const auto problem = parse_lp(read_file(path));
    lp::SolveOptions options;
    if (trace) options.trace = [](const lp::PivotEvent& e) { std::cerr << lp::format_pivot(e) << "\n"; };
    const auto result = lp::solve_feasibility(problem, options);
    std::cout << "status " << (result.feasible() ? "feasible" : "infeasible") << "\n";
    std::cout << "sigma " << result.phase1_objective << "\n";
    std::cout << "pivots " << result.pivot_count << "\n";
    for (std::size_t j = 0; j < problem.column_count(); ++j) {
        std::cout << problem.columns[j].name << " = " << result.assignment[j] << " reduced " << result.reduced_costs[j]
                  << "\n";
    }
    if (result.feasible() && !lp::check_solution(problem, result.assignment)) {
        throw AuditFailure("solver assignment fails re-substitution");
    }
    return result.feasible() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Positivity certificates for polynomials via exact LP"};
    app.require_subcommand(1);

    Common common;
    LadderFlags flags;
    std::string out;
    std::string interval = "positive";
    std::string lp_path;
    bool trace = false;

    auto* encode = app.add_subcommand("encode", "encode a CNF as the polynomial Q");
    encode->add_option("--cnf", common.cnf, "DIMACS CNF input")->required();
    encode->add_option("--domain", common.domain, "false,true values")->capture_default_str();
    encode->add_option("--out", out, "output path (default: stdout)");

    auto* certify = app.add_subcommand("certify", "search for a certificate, stopping at the first");
    add_common(certify, common, true);
    add_ladder_flags(certify, flags, false);

    auto* ladder_cmd = app.add_subcommand("ladder", "solve every rung and emit the trajectory");
    add_common(ladder_cmd, common, true);
    add_ladder_flags(ladder_cmd, flags, true);
    ladder_cmd->add_flag("--continue-after-feasible", flags.continue_after, "always on for ladder");

    auto* oracle_cmd = app.add_subcommand("oracle", "ground truth: truth table, Sturm count or grid scan");
    add_common(oracle_cmd, common, true);
    oracle_cmd->add_option("--interval", interval, "univariate: positive, real or a:b for (a, b]")
        ->capture_default_str();

    auto* solve = app.add_subcommand("solve-lp", "solve a serialized LP");
    solve->add_option("lp", lp_path, "LP file")->required();
    solve->add_flag("--trace", trace, "log every pivot to stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (*encode) return cmd_encode(common, out);
        if (*certify) return cmd_certify(common, flags);
        if (*ladder_cmd) return cmd_ladder(common, flags);
        if (*oracle_cmd) return cmd_oracle(common, interval);
        return cmd_solve_lp(lp_path, trace);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const LimitExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
