#include "armcrit/document.hpp"

#include <cmath>
#include <limits>

namespace armcrit {

using nlohmann::json;

namespace {

double to_units(double radians, bool degrees)
{
    return degrees ? radians * (180.0 / kPi) : radians;
}

std::vector<double> angles_of(const AngleConfig& c, bool degrees)
{
    std::vector<double> out;
    for (double t : c.values()) out.push_back(to_units(t, degrees));
    return out;
}

/// JSON has no infinity; unbounded radii are written as null.
json finite_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

template <typename T>
json optional_json(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j)
{
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

}  // namespace

void to_json(json& j, const Tolerances& t)
{
    j = json{{"grid", t.grid},
             {"gradient_tol", t.gradient_tol},
             {"dedup_tol", t.dedup_tol},
             {"diameter_tol", t.diameter_tol},
             {"eigen_tol", t.eigen_tol},
             {"delta_tol", t.delta_tol}};
}

void from_json(const json& j, Tolerances& t)
{
    j.at("grid").get_to(t.grid);
    j.at("gradient_tol").get_to(t.gradient_tol);
    j.at("dedup_tol").get_to(t.dedup_tol);
    j.at("diameter_tol").get_to(t.diameter_tol);
    j.at("eigen_tol").get_to(t.eigen_tol);
    j.at("delta_tol").get_to(t.delta_tol);
}

void to_json(json& j, const CriticalPointRecord& p)
{
    j = json{{"angles", p.angles},
             {"doubled_area", p.doubled_area},
             {"signs", p.signs},
             {"e", p.e},
             {"delta", optional_json(p.delta)},
             {"omega", p.omega},
             {"branch", p.branch},
             {"radius", p.radius},
             {"index_formula", optional_json(p.index_formula)},
             {"index_numeric", p.index_numeric},
             {"degenerate", p.degenerate},
             {"min_abs_eigenvalue", p.min_abs_eigenvalue}};
}

void from_json(const json& j, CriticalPointRecord& p)
{
    j.at("angles").get_to(p.angles);
    j.at("doubled_area").get_to(p.doubled_area);
    j.at("signs").get_to(p.signs);
    j.at("e").get_to(p.e);
    p.delta = optional_from<double>(j.at("delta"));
    j.at("omega").get_to(p.omega);
    j.at("branch").get_to(p.branch);
    j.at("radius").get_to(p.radius);
    p.index_formula = optional_from<int>(j.at("index_formula"));
    j.at("index_numeric").get_to(p.index_numeric);
    j.at("degenerate").get_to(p.degenerate);
    j.at("min_abs_eigenvalue").get_to(p.min_abs_eigenvalue);
}

void to_json(json& j, const AnalysisDocument& doc)
{
    json perturb = nullptr;
    if (doc.perturbation) perturb = json{{"amplitude", doc.perturbation->amplitude}, {"seed", doc.perturbation->seed}};
    j = json{{"schema", kAnalysisSchema},
             {"tool_version", doc.tool_version},
             {"area_convention", kAreaConvention},
             {"angle_units", doc.angle_units},
             {"requested_lengths", doc.requested_lengths},
             {"lengths", doc.lengths},
             {"perturbation", perturb},
             {"tolerances", doc.tolerances},
             {"critical_points", doc.critical_points},
             {"histogram", doc.histogram},
             {"betti", doc.betti},
             {"perfect", doc.perfect},
             {"euler_check", doc.euler_check},
             {"warnings", doc.warnings}};
}

void from_json(const json& j, AnalysisDocument& doc)
{
    if (j.at("schema").get<std::string>() != kAnalysisSchema) throw Error("not an analysis document");
    j.at("tool_version").get_to(doc.tool_version);
    j.at("angle_units").get_to(doc.angle_units);
    j.at("requested_lengths").get_to(doc.requested_lengths);
    j.at("lengths").get_to(doc.lengths);
    const json& p = j.at("perturbation");
    if (p.is_null())
        doc.perturbation.reset();
    else
        doc.perturbation = Perturbation{p.at("amplitude").get<double>(), p.at("seed").get<std::uint64_t>()};
    j.at("tolerances").get_to(doc.tolerances);
    j.at("critical_points").get_to(doc.critical_points);
    j.at("histogram").get_to(doc.histogram);
    j.at("betti").get_to(doc.betti);
    j.at("perfect").get_to(doc.perfect);
    j.at("euler_check").get_to(doc.euler_check);
    j.at("warnings").get_to(doc.warnings);
}

AnalysisDocument make_analysis_document(const std::vector<double>& requested, const ArmLengths& arm,
                                        const MorseReport& report, const Tolerances& tolerances,
                                        std::optional<Perturbation> perturbation, bool degrees)
{
    AnalysisDocument doc;
    doc.angle_units = degrees ? "degrees" : "radians";
    doc.requested_lengths = requested;
    doc.lengths.assign(arm.values().begin(), arm.values().end());
    doc.perturbation = perturbation;
    doc.tolerances = tolerances;
    for (const CriticalPoint& cp : report.points) {
        CriticalPointRecord r;
        r.angles = angles_of(cp.config, degrees);
        r.doubled_area = cp.doubled_area;
        r.signs = cp.cyclic.signs.to_string();
        r.e = cp.e_count;
        r.delta = cp.delta;
        r.omega = cp.omega;
        r.branch = cp.cyclic.branch;
        r.radius = cp.cyclic.radius;
        r.index_formula = cp.index_formula;
        r.index_numeric = cp.index_numeric;
        r.degenerate = cp.degenerate;
        r.min_abs_eigenvalue = cp.min_abs_eigenvalue;
        doc.critical_points.push_back(std::move(r));
    }
    doc.histogram = report.counts_by_index;
    doc.betti = report.betti;
    doc.perfect = report.perfect;
    doc.euler_check = report.euler_check;
    doc.warnings = report.warnings;
    return doc;
}

std::string dump_document(const json& j)
{
    return j.dump(2) + "\n";
}

json qc_document(const ArmLengths& arm, const std::vector<QCComponent>& components, bool degrees)
{
    json comps = json::array();
    for (const QCComponent& c : components) {
        std::string pattern;
        for (int e : c.pattern) pattern.push_back(e > 0 ? '+' : '-');
        json arcs = json::array();
        for (const ArcDescriptor& a : c.arcs) {
            arcs.push_back({{"signs", a.signs.to_string()},
                            {"signs_original_order", to_original_order(c, a.signs).to_string()},
                            {"rho_min", a.rho_min},
                            {"rho_max", finite_or_null(a.rho_max)},
                            {"gamma_increasing", a.gamma_increasing}});
        }
        json pts = json::array();
        for (const SpecialPoint& p : c.special_points) {
            pts.push_back({{"kind", std::string(to_string(p.kind))},
                           {"loop_param", p.loop_param},
                           {"arc", p.arc},
                           {"radius", finite_or_null(p.radius)},
                           {"branch", p.branch},
                           {"signs", p.signs.to_string()},
                           {"angles", angles_of(p.config, degrees)}});
        }
        comps.push_back({{"pattern", pattern},
                         {"arcs", arcs},
                         {"diacyclic_count", c.diacyclic_count()},
                         {"special_points", pts}});
    }
    json perm = json::array();
    if (!components.empty())
        for (std::size_t p : components.front().permutation) perm.push_back(p);
    return json{{"schema", kQcSchema},
                {"tool_version", kToolVersion},
                {"area_convention", kAreaConvention},
                {"angle_units", degrees ? "degrees" : "radians"},
                {"lengths", std::vector<double>(arm.values().begin(), arm.values().end())},
                {"canonical_order", perm},
                {"component_count", components.size()},
                {"components", comps}};
}

OracleCheck run_oracle_check(const ArmLengths& arm, int resolution, double tol, const AnalyzeOptions& options)
{
    OracleCheck check;
    check.resolution = resolution;
    const MorseReport report = analyze(arm, options);
    for (const CriticalPoint& cp : report.points) {
        check.analytic.push_back(cp.config);
        check.analytic_index.push_back(cp.index_numeric);
    }
    GridSpec spec;
    spec.resolution = resolution;
    check.oracle = grid_critical_search(arm, spec);
    for (const AngleConfig& c : check.oracle.points)
        check.oracle_index.push_back(signature(fd_hessian(arm, c), arm.scale(), options.numeric.eigen_tol).index);
    check.report = match(check.analytic, check.oracle.points, tol);
    for (const MatchPair& m : check.report.matched) {
        if (report.points[m.analytic].degenerate) continue;
        if (check.analytic_index[m.analytic] != check.oracle_index[m.oracle]) check.index_agreement = false;
    }
    return check;
}

json oracle_document(const ArmLengths& arm, const OracleCheck& check, bool degrees)
{
    json analytic = json::array();
    for (std::size_t i = 0; i < check.analytic.size(); ++i)
        analytic.push_back({{"angles", angles_of(check.analytic[i], degrees)}, {"index", check.analytic_index[i]}});
    json oracle = json::array();
    for (std::size_t i = 0; i < check.oracle.points.size(); ++i)
        oracle.push_back({{"angles", angles_of(check.oracle.points[i], degrees)}, {"index", check.oracle_index[i]}});
    json matched = json::array();
    for (const MatchPair& m : check.report.matched)
        matched.push_back({{"analytic", m.analytic}, {"oracle", m.oracle}, {"distance", m.distance}});
    return json{{"schema", kOracleSchema},
                {"tool_version", kToolVersion},
                {"area_convention", kAreaConvention},
                {"angle_units", degrees ? "degrees" : "radians"},
                {"lengths", std::vector<double>(arm.values().begin(), arm.values().end())},
                {"resolution", check.resolution},
                {"tolerance", check.report.tolerance},
                {"candidates", check.oracle.candidates},
                {"analytic_points", analytic},
                {"oracle_points", oracle},
                {"matched", matched},
                {"unmatched_analytic", check.report.unmatched_analytic},
                {"unmatched_oracle", check.report.unmatched_oracle},
                {"index_agreement", check.index_agreement},
                {"pass", check.report.pass() && check.index_agreement},
                {"warnings", check.oracle.warnings}};
}

}  // namespace armcrit
