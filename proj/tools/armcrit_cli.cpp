// armcrit: critical configurations of the oriented area of a planar arm.
//
// Exit codes: 0 success, 1 usage or input error, 2 degenerate critical points
// (warnings only), 3 solver or verification failure.

#include "armcrit/document.hpp"
#include "armcrit/levelset.hpp"
#include "armcrit/svg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace armcrit;

namespace {

enum Exit { kOk = 0, kUsage = 1, kDegenerate = 2, kFailure = 3 };

struct Common {
    std::string lengths;
    double tol = 1e-8;
    int grid = 4096;
    double perturb = 0.0;
    std::uint64_t seed = 0;
    std::string json_path;
    std::string svg_path;
    bool degrees = false;
};

struct Input {
    std::vector<double> requested;
    ArmLengths arm;
    std::optional<Perturbation> perturbation;
};

std::vector<double> parse_lengths(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--lengths", "'" + item + "' is not a number");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw CLI::ValidationError("--lengths", "'" + item + "' is not a number");
        if (!(v > 0.0) || !std::isfinite(v)) throw CLI::ValidationError("--lengths", "lengths must be positive");
        out.push_back(v);
    }
    if (out.size() < 2) throw CLI::ValidationError("--lengths", "at least two lengths are required");
    return out;
}

Input load(const Common& c)
{
    std::vector<double> requested = parse_lengths(c.lengths);
    ArmLengths arm(requested);
    std::optional<Perturbation> p;
    if (c.perturb != 0.0) {
        if (!(c.perturb > 0.0 && c.perturb < 0.5)) throw CLI::ValidationError("--perturb", "amplitude must be in (0, 0.5)");
        arm = perturb_lengths(arm, c.perturb, c.seed);
        p = Perturbation{c.perturb, c.seed};
    }
    return {std::move(requested), std::move(arm), p};
}

AnalyzeOptions analyze_options(const Common& c)
{
    AnalyzeOptions o;
    o.solve.scan.grid = c.grid;
    o.solve.gradient_tol = c.tol;
    o.numeric.gradient_tol = c.tol;
    return o;
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw Error("failed writing " + path);
}

/// Primary document goes to --json if given, stdout otherwise.
void emit(const Common& c, const nlohmann::json& doc)
{
    const std::string text = dump_document(doc);
    if (c.json_path.empty())
        std::cout << text;
    else
        write_file(c.json_path, text);
}

std::string suffixed(const std::string& path, std::size_t i)
{
    const std::size_t dot = path.rfind('.');
    const std::size_t slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + "-" + std::to_string(i);
    return path.substr(0, dot) + "-" + std::to_string(i) + path.substr(dot);
}

std::string point_title(std::size_t i, const CriticalPoint& cp)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "#%zu  E=%s  index %d  2A=%.6g%s", i, cp.cyclic.signs.to_string().c_str(),
                  cp.index_numeric, cp.doubled_area, cp.degenerate ? "  degenerate" : "");
    return buf;
}

int cmd_analyze(const Common& c)
{
    const Input in = load(c);
    const AnalyzeOptions opts = analyze_options(c);
    const MorseReport report = analyze(in.arm, opts);

    Tolerances tol;
    tol.grid = opts.solve.scan.grid;
    tol.gradient_tol = opts.solve.gradient_tol;
    tol.dedup_tol = opts.solve.dedup_tol;
    tol.diameter_tol = opts.solve.diameter_tol;
    tol.eigen_tol = opts.numeric.eigen_tol;
    tol.delta_tol = opts.delta_tol;
    emit(c, make_analysis_document(in.requested, in.arm, report, tol, in.perturbation, c.degrees));

    if (!c.svg_path.empty()) {
        std::vector<SvgPanel> panels;
        for (std::size_t i = 0; i < report.points.size(); ++i) {
            const CriticalPoint& cp = report.points[i];
            panels.push_back({cp.config, point_title(i, cp), cp.cyclic.center, cp.cyclic.radius,
                              cp.cyclic.signs.to_string()});
        }
        write_file(c.svg_path, render_svg(in.arm, panels));
    }

    bool mismatch = false;
    for (const CriticalPoint& cp : report.points)
        if (!cp.degenerate && cp.index_formula && *cp.index_formula != cp.index_numeric) mismatch = true;
    for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';
    if (report.solver_failed || mismatch) return kFailure;
    if (report.any_degenerate) return kDegenerate;
    return kOk;
}

int cmd_qc(const Common& c)
{
    const Input in = load(c);
    QcOptions opts;
    opts.scan.grid = c.grid;
    const std::vector<QCComponent> comps = enumerate_components(in.arm, opts);
    emit(c, qc_document(in.arm, comps, c.degrees));

    if (!c.svg_path.empty()) {
        for (std::size_t i = 0; i < comps.size(); ++i) {
            std::vector<SvgPanel> panels;
            for (const SpecialPoint& p : comps[i].special_points) {
                SvgPanel panel{p.config, std::string(to_string(p.kind)) + "  s=" + std::to_string(p.loop_param), {},
                               0.0, p.signs.to_string()};
                if (p.kind != SpecialKind::aligned) {
                    const VertexPath path = realize(in.arm, p.config);
                    const CircleFit fit = fit_circle(path.vertices);
                    if (std::isfinite(fit.residual)) {
                        panel.center = fit.center;
                        panel.radius = fit.radius;
                    }
                }
                panels.push_back(std::move(panel));
            }
            write_file(suffixed(c.svg_path, i), render_svg(in.arm, panels));
        }
    }
    return kOk;
}

int cmd_levelset(const Common& c, int resolution, const std::string& csv_path)
{
    const Input in = load(c);
    if (in.arm.size() != 3) throw DimensionMismatch("levelset needs exactly three lengths");
    const LevelSetGrid grid = levelset_grid(in.arm, resolution);
    const std::string csv = levelset_csv(grid);
    if (csv_path.empty())
        std::cout << csv;
    else
        write_file(csv_path, csv);

    if (!c.svg_path.empty()) {
        const MorseReport report = analyze(in.arm, analyze_options(c));
        std::vector<HeatmapMarker> markers;
        for (const CriticalPoint& cp : report.points)
            markers.push_back({cp.config[0], cp.config[1], std::to_string(cp.index_numeric)});
        write_file(c.svg_path, render_heatmap_svg(resolution, grid.values, markers));
    }
    return kOk;
}

int default_oracle_resolution(std::size_t n)
{
    switch (n) {
    case 2: return 1024;
    case 3: return 256;
    case 4: return 96;
    default: return 32;
    }
}

int cmd_oracle(const Common& c, int resolution, double match_tol)
{
    const Input in = load(c);
    if (in.arm.size() > 5) throw CLI::ValidationError("--lengths", "the grid oracle supports at most 5 edges");
    const int res = resolution > 0 ? resolution : default_oracle_resolution(in.arm.size());
    const OracleCheck check = run_oracle_check(in.arm, res, match_tol, analyze_options(c));
    const nlohmann::json doc = oracle_document(in.arm, check, c.degrees);
    emit(c, doc);
    return doc.at("pass").get<bool>() ? kOk : kFailure;
}

void add_common(CLI::App* app, Common& c, bool with_json)
{
    app->add_option("--lengths", c.lengths, "Comma-separated positive edge lengths, e.g. 10,3,2,1")->required();
    app->add_option("--tol", c.tol, "Relative gradient tolerance for accepting a critical point")
        ->capture_default_str();
    app->add_option("--grid", c.grid, "Cells of the root-scan grid")->capture_default_str()->check(CLI::Range(16, 1 << 22));
    app->add_option("--perturb", c.perturb, "Relative length perturbation amplitude (0 = none)")->capture_default_str();
    app->add_option("--seed", c.seed, "Seed of the perturbation")->capture_default_str();
    if (with_json) app->add_option("--json", c.json_path, "Write the JSON document here instead of stdout");
    app->add_option("--svg", c.svg_path, "Write an SVG drawing here");
    app->add_flag("--degrees", c.degrees, "Report angles in degrees");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Critical configurations of the oriented area of a planar arm"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    Common analyze_c, qc_c, level_c, oracle_c;
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Critical points and Morse indices");
    add_common(analyze_cmd, analyze_c, true);

    CLI::App* qc_cmd = app.add_subcommand("qc", "Components of quasicyclic configurations");
    add_common(qc_cmd, qc_c, true);

    int level_res = 128;
    std::string csv_path;
    CLI::App* level_cmd = app.add_subcommand("levelset", "Doubled area of a 3-arm on a grid over the torus");
    add_common(level_cmd, level_c, false);
    level_cmd->add_option("--resolution", level_res, "Samples per angle")->capture_default_str()->check(CLI::Range(2, 4096));
    level_cmd->add_option("--csv", csv_path, "Write the CSV grid here instead of stdout");

    int oracle_res = 0;
    double match_tol = 1e-4;
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "Compare the solver with a grid search on the torus");
    add_common(oracle_cmd, oracle_c, true);
    oracle_cmd->add_option("--resolution", oracle_res, "Samples per angle (default 256, 96, 32 for n = 3, 4, 5)")
        ->check(CLI::Range(8, 4096));
    oracle_cmd->add_option("--match-tol", match_tol, "Torus distance for matching points")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(analyze_c);
        if (*qc_cmd) return cmd_qc(qc_c);
        if (*level_cmd) return cmd_levelset(level_c, level_res, csv_path);
        if (*oracle_cmd) return cmd_oracle(oracle_c, oracle_res, match_tol);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "armcrit: " << e.what() << '\n';
        return kUsage;
    } catch (const QcTie& e) {
        std::cerr << "armcrit: " << e.what() << '\n';
        return kUsage;
    } catch (const DimensionMismatch& e) {
        std::cerr << "armcrit: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "armcrit: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}
