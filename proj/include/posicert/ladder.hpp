#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "posicert/certificate.hpp"
#include "posicert/polynomial.hpp"
#include "posicert/rational.hpp"
#include "posicert/sat.hpp"

namespace posicert::ladder {

struct UnivariateMode {};
struct MultivariateMode {
    std::vector<Rational> domain{Rational(1), Rational(2)};
};
using Mode = std::variant<UnivariateMode, MultivariateMode>;

struct LadderOptions {
    bool continue_after_feasible = false;
    std::size_t plateau_window = 3;
    Rational plateau_tolerance{1, 100};
    /// Wall-clock solve times vary run to run; off keeps output reproducible.
    bool record_timing = false;
    bool oracle_enabled = false;
    /// When set (and oracle_enabled) the truth-table oracle runs on it.
    std::optional<sat::CnfFormula> formula;
    /// Rungs solved concurrently.
    unsigned jobs = 1;
};

/// One rung of the degree ladder.
struct LadderRecord {
    std::uint32_t degree = 0;
    bool feasible = false;
    Rational sigma;
    std::size_t lp_columns = 0;
    std::size_t lp_rows = 0;
    cert::ConstraintMetrics metrics;
    std::uint64_t solve_millis = 0;
    std::size_t pivot_count = 0;
    // Reduced-cost summary at the final phase-1 basis.
    Rational min_reduced_cost;
    std::size_t zero_reduced_costs = 0;
    std::size_t max_entry_bits = 0;

    friend bool operator==(const LadderRecord&, const LadderRecord&) = default;
};

struct OracleVerdict {
    std::string method;  // "sturm", "grid", "truth-table"
    bool has_root = false;
    std::string detail;
};

enum class VerdictKind { CertificateFound, ConjecturedRoot, Undetermined };

std::string_view to_string(VerdictKind kind);

struct LadderVerdict {
    VerdictKind kind = VerdictKind::Undetermined;
    std::optional<std::uint32_t> minimal_degree;  // CertificateFound
    std::optional<Rational> plateau_estimate;     // ConjecturedRoot
    std::optional<OracleVerdict> oracle;
    /// The heuristic classification disagrees with the oracle.
    bool counterexample_candidate = false;
};

using Certificate = std::variant<cert::UnivariateCertificate, cert::MultivariateCertificate>;

struct LadderRun {
    std::vector<LadderRecord> records;
    LadderVerdict verdict;
    std::optional<Certificate> certificate;
    /// Polynomial the LPs were built from (normalized in univariate mode).
    Polynomial target{1};
    std::uint32_t x_power_removed = 0;
    bool negated = false;
    /// Rungs r where sigma_r > sigma_{r-1}.
    std::vector<std::uint32_t> sigma_increases;
};

/// Builds, solves and audits one LP per degree 0..r_max. Stops after the
/// first feasible rung unless continue_after_feasible. A feasible rung that
/// fails its audit throws AuditFailure; a certificate contradicted by the
/// oracle throws SoundnessError.
LadderRun run_ladder(const Polynomial& q, const Mode& mode, std::uint32_t r_max, const LadderOptions& options = {});

/// Heuristic reading of a sigma trajectory. CertificateFound at the first
/// feasible record; ConjecturedRoot when the last `window` sigmas change by
/// a relative amount below `tolerance` between consecutive rungs;
/// otherwise Undetermined.
LadderVerdict classify_trajectory(std::span<const LadderRecord> records, std::size_t window,
                                  const Rational& tolerance);

inline constexpr std::string_view kCsvHeader =
    "degree,feasible,sigma_num,sigma_den,lp_columns,lp_rows,max_unique_coeffs,max_abs_coeff,"
    "max_terms_per_row,pivot_count,solve_millis";

std::string emit_csv(std::span<const LadderRecord> records);

/// Reads emit_csv output back. Fields not carried by the CSV (reduced-cost
/// summary, bit sizes) are left default.
std::vector<LadderRecord> parse_csv(std::string_view text);

std::string emit_json(const LadderRun& run, const Polynomial& input, const Mode& mode, std::uint32_t r_max,
                      const LadderOptions& options);

}  // namespace posicert::ladder
