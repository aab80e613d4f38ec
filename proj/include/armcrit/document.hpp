#pragma once
/**
 * @file   document.hpp
 * @brief  Machine-readable reports (JSON) produced by the command-line tool.
 *
 * Every document carries a schema tag, the tool version and a statement of the
 * area convention. The matching JSON Schemas live in schemas/.
 */

#include "armcrit/morse.hpp"
#include "armcrit/oracle.hpp"
#include "armcrit/qc.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace armcrit {

inline constexpr const char* kToolVersion = ARMCRIT_VERSION;
inline constexpr const char* kAreaConvention =
    "doubled oriented area 2A: shoelace sum over r_0..r_n closed by the connecting side r_n r_0";

inline constexpr const char* kAnalysisSchema = "armcrit.analysis/1";
inline constexpr const char* kQcSchema = "armcrit.qc/1";
inline constexpr const char* kOracleSchema = "armcrit.oracle/1";

struct Tolerances {
    int grid{4096};
    double gradient_tol{1e-8};
    double dedup_tol{1e-6};
    double diameter_tol{1e-9};
    double eigen_tol{1e-7};
    double delta_tol{1e-12};

    friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct Perturbation {
    double amplitude{0.0};
    std::uint64_t seed{0};

    friend bool operator==(const Perturbation&, const Perturbation&) = default;
};

struct CriticalPointRecord {
    std::vector<double> angles;
    double doubled_area{0.0};
    std::string signs;
    int e{0};
    std::optional<double> delta;
    int omega{0};
    int branch{0};
    double radius{0.0};
    std::optional<int> index_formula;
    int index_numeric{0};
    bool degenerate{false};
    double min_abs_eigenvalue{0.0};

    friend bool operator==(const CriticalPointRecord&, const CriticalPointRecord&) = default;
};

struct AnalysisDocument {
    std::string tool_version{kToolVersion};
    std::string angle_units{"radians"};
    std::vector<double> requested_lengths;
    std::vector<double> lengths;  ///< after perturbation
    std::optional<Perturbation> perturbation;
    Tolerances tolerances;
    std::vector<CriticalPointRecord> critical_points;
    std::vector<int> histogram;
    std::vector<int> betti;
    bool perfect{false};
    int euler_check{0};
    std::vector<std::string> warnings;

    friend bool operator==(const AnalysisDocument&, const AnalysisDocument&) = default;
};

AnalysisDocument make_analysis_document(const std::vector<double>& requested, const ArmLengths& arm,
                                        const MorseReport& report, const Tolerances& tolerances,
                                        std::optional<Perturbation> perturbation, bool degrees);

void to_json(nlohmann::json& j, const AnalysisDocument& doc);
void from_json(const nlohmann::json& j, AnalysisDocument& doc);

/// Two-space indented JSON with a trailing newline.
std::string dump_document(const nlohmann::json& j);

nlohmann::json qc_document(const ArmLengths& arm, const std::vector<QCComponent>& components, bool degrees);

struct OracleCheck {
    std::vector<AngleConfig> analytic;
    std::vector<int> analytic_index;  ///< from the analytic Hessian
    OracleResult oracle;
    std::vector<int> oracle_index;    ///< from the finite-difference Hessian
    MatchReport report;
    int resolution{0};
    bool index_agreement{true};
};

OracleCheck run_oracle_check(const ArmLengths& arm, int resolution, double tol, const AnalyzeOptions& options);

nlohmann::json oracle_document(const ArmLengths& arm, const OracleCheck& check, bool degrees);

}  // namespace armcrit
