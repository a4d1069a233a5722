#include "pspec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pspec/convergence.hpp"
#include "pspec/errors.hpp"
#include "pspec/io.hpp"
#include "pspec/levelsets.hpp"
#include "pspec/operators.hpp"
#include "pspec/setgeom.hpp"
#include "pspec/svd.hpp"

namespace pspec {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kPi = 3.141592653589793238462643383279502884;

struct RunContext {
    json config;
    fs::path config_dir;
    fs::path out_dir;
    std::uint64_t seed = 0;
    std::string hash;
    std::ostream* out = nullptr;
};

json parse_config_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw std::invalid_argument("config: malformed JSON");
    }
    if (!j.is_object()) {
        throw std::invalid_argument("config: top level must be an object");
    }
    return j;
}

ComplexMatrix matrix_from_spec(const json& j, const fs::path& base_dir) {
    if (j.is_string()) {
        fs::path p = j.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        return read_matrix_file(p);
    }
    return matrix_from_json_text(j.dump());
}

std::vector<double> eps_list_from(const json& config) {
    if (!config.contains("eps_list") || !config["eps_list"].is_array() ||
        config["eps_list"].empty()) {
        throw std::invalid_argument("config: eps_list must be a nonempty array");
    }
    std::vector<double> out;
    for (const auto& e : config["eps_list"]) {
        const double eps = e.get<double>();
        if (!(eps > 0.0)) throw std::invalid_argument("config: eps values must be positive");
        out.push_back(eps);
    }
    return out;
}

std::vector<std::int64_t> n_list_from(const json& config) {
    if (!config.contains("n_list") || !config["n_list"].is_array() || config["n_list"].empty()) {
        throw std::invalid_argument("config: n_list must be a nonempty array");
    }
    std::vector<std::int64_t> out;
    for (const auto& n : config["n_list"]) out.push_back(n.get<std::int64_t>());
    return out;
}

std::vector<cplx> points_from_json(const json& arr, const char* what) {
    if (!arr.is_array() || arr.empty()) {
        throw std::invalid_argument(std::string(what) + ": nonempty array of [re, im] required");
    }
    std::vector<cplx> out;
    for (const auto& p : arr) {
        if (!p.is_array() || p.size() != 2) {
            throw std::invalid_argument(std::string(what) + ": entries are [re, im] pairs");
        }
        out.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return out;
}

// explicit grid object, or {"auto": {"nx":..., "ny":...}} resolved against a
// half-extent the caller supplies
GridSpec grid_from_config(const json& config, std::optional<double> auto_half_extent) {
    if (!config.contains("grid")) {
        throw std::invalid_argument("config: grid section required");
    }
    const json& g = config["grid"];
    if (g.is_object() && g.contains("auto")) {
        if (!auto_half_extent) {
            throw std::invalid_argument("config: automatic grid is not available for this command");
        }
        const json& a = g["auto"];
        const std::size_t nx = a.is_object() ? a.value("nx", std::size_t{257}) : 257;
        const std::size_t ny = a.is_object() ? a.value("ny", std::size_t{257}) : 257;
        return GridSpec::square(*auto_half_extent, std::max(nx, ny));
    }
    return grid_from_json_text(g.dump());
}

void write_artifact(const RunContext& ctx, const std::string& name, const std::string& content) {
    write_text_file(ctx.out_dir / name, content);
    (*ctx.out) << "wrote " << (ctx.out_dir / name).string() << "\n";
}

// ---- field ----

int cmd_field(RunContext& ctx) {
    if (!ctx.config.contains("matrix")) {
        throw std::invalid_argument("config: field needs a matrix");
    }
    const FiniteOperator a(matrix_from_spec(ctx.config["matrix"], ctx.config_dir));
    const GridSpec grid = grid_from_config(ctx.config, std::nullopt);
    const ScalarField field = evaluate_field(a, grid);
    write_artifact(ctx, "field_" + ctx.hash + ".csv", field_to_csv(field));
    return 0;
}

// ---- pseudo ----

int cmd_pseudo(RunContext& ctx) {
    if (!ctx.config.contains("matrix")) {
        throw std::invalid_argument("config: pseudo needs a matrix");
    }
    const FiniteOperator a(matrix_from_spec(ctx.config["matrix"], ctx.config_dir));
    const std::vector<double> eps_list = eps_list_from(ctx.config);
    const double eps_max = *std::max_element(eps_list.begin(), eps_list.end());
    const GridSpec grid = grid_from_config(ctx.config, bounding_radius(a, eps_max));
    const Closedness closedness =
        ctx.config.value("closedness", std::string("strict")) == "closed" ? Closedness::closed
                                                                          : Closedness::strict;
    const ScalarField field = evaluate_field(a, grid);
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
        const RegionSample region = sublevel(field, eps_list[k], closedness);
        write_artifact(ctx, "pseudo_" + ctx.hash + "_eps" + std::to_string(k) + ".json",
                       region_to_json(region));
    }
    return 0;
}

// ---- dh ----

int cmd_dh(RunContext& ctx) {
    if (!ctx.config.contains("a") || !ctx.config.contains("b")) {
        throw std::invalid_argument("config: dh needs point-set files 'a' and 'b'");
    }
    const auto resolve = [&](const json& j) {
        fs::path p = j.get<std::string>();
        if (p.is_relative()) p = ctx.config_dir / p;
        return p;
    };
    const PointSet a = read_pointset_file(resolve(ctx.config["a"]));
    const PointSet b = read_pointset_file(resolve(ctx.config["b"]));
    (*ctx.out) << format_double(hausdorff(a, b)) << "\n";
    return 0;
}

// ---- converge ----

int cmd_converge(RunContext& ctx) {
    const std::vector<double> eps_list = eps_list_from(ctx.config);
    const std::vector<std::int64_t> n_list = n_list_from(ctx.config);
    const double eps_max = *std::max_element(eps_list.begin(), eps_list.end());

    ConvergenceReport report = [&]() {
        if (ctx.config.contains("family")) {
            const AnalyticFamily probe = make_family(ctx.config["family"].get<std::string>(),
                                                     std::max<std::int64_t>(n_list.front(), 1));
            const GridSpec grid = grid_from_config(ctx.config, 2.5);
            const std::vector<cplx> sample_points =
                points_from_json(ctx.config.at("sample_points"), "sample_points");
            return analytic_report(probe.id, eps_list, n_list, sample_points, grid);
        }
        if (!ctx.config.contains("matrix") || !ctx.config.contains("sequence")) {
            throw std::invalid_argument("config: converge needs matrix and sequence (or family)");
        }
        const FiniteOperator a(matrix_from_spec(ctx.config["matrix"], ctx.config_dir));
        const OperatorSequence seq =
            sequence_from_json_text(ctx.config["sequence"].dump(), ctx.config_dir);
        double r = bounding_radius(a, eps_max);
        for (std::int64_t n : n_list) r = std::max(r, bounding_radius(seq.member(n), eps_max));
        const GridSpec grid = grid_from_config(ctx.config, r);

        std::vector<cplx> sample_points;
        if (ctx.config.contains("sample_points") && ctx.config["sample_points"].is_array()) {
            sample_points = points_from_json(ctx.config["sample_points"], "sample_points");
        } else {
            const std::size_t count =
                ctx.config.contains("sample_points")
                    ? ctx.config["sample_points"].value("count", std::size_t{16})
                    : 16;
            sample_points = seeded_sample_points(count, r, ctx.seed);
        }
        const bool closed_check = ctx.config.value("closed_check", false);
        return equivalence_report(seq, a, eps_list, n_list, sample_points, grid, closed_check);
    }();

    write_artifact(ctx, "converge_" + ctx.hash + "_report.json", report_to_json(report));
    if (!report.residuals.empty()) {
        write_artifact(ctx, "converge_" + ctx.hash + "_residuals.csv",
                       residuals_to_csv(report.n_list, report.sample_points, report.residuals));
    }
    if (!report.dh.empty()) {
        write_artifact(ctx, "converge_" + ctx.hash + "_dh.csv",
                       dh_table_to_csv(report.n_list, report.eps_list, report.dh));
    }
    (*ctx.out) << "verdict: " << report.verdict << "\n";
    return report.verdict == "INCONSISTENT" ? 4 : 0;
}

// ---- demos ----

void print_check(std::ostream& out, const std::string& name, bool pass, const std::string& detail) {
    out << (pass ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) out << " (" << detail << ")";
    out << "\n";
}

int demo_ex2(RunContext& ctx) {
    const double eps = 0.37;
    const std::vector<std::int64_t> ns = {1, 2, 3};
    const GridSpec grid = GridSpec::square(2.5, 101);
    bool all_ok = true;
    std::string summary = "{\"demo\":\"ex2\",\"eps\":" + format_double(eps) + ",\"checks\":[";
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const std::int64_t n = ns[i];
        const ScalarField field = evaluate_field(AnalyticFamily{FamilyId::ex2, n}, grid);
        const RegionSample region = sublevel(field, eps, Closedness::strict);
        const PointSet expected =
            grid_sample(SymbolicRegion{Disk{{0.0, 0.0}, static_cast<double>(n) * eps}}, grid);
        const bool equal = region.points == expected;
        all_ok = all_ok && equal;
        print_check(*ctx.out, "sub_eps(g_" + std::to_string(n) + ") equals the node set of " +
                    std::to_string(n) + "*eps*D", equal, "");
        if (i > 0) summary += ',';
        summary += std::string("{\"n\":") + std::to_string(n) +
                   ",\"region_equals_disk_nodes\":" + (equal ? "true" : "false") + "}";
        write_artifact(ctx, "demo_ex2_" + ctx.hash + "_region_n" + std::to_string(n) + ".json",
                       region_to_json(region));
    }
    // the limit function is 0; its sublevel set is the whole plane, and the
    // Hausdorff distance from any bounded sample to the plane stays infinite
    const ScalarField f1 = evaluate_field(AnalyticFamily{FamilyId::ex2, 1}, grid);
    const double d = hausdorff_symbolic(sublevel(f1, eps, Closedness::strict).points,
                                        SymbolicRegion{Plane{}}, 0.01);
    const bool inf_ok = std::isinf(d);
    all_ok = all_ok && inf_ok;
    print_check(*ctx.out, "d_H(bounded sample, plane) = inf", inf_ok, format_double(d));
    summary += "],\"dh_to_plane\":\"" + format_double(d) + "\"}\n";
    write_artifact(ctx, "demo_ex2_" + ctx.hash + "_summary.json", summary);
    return all_ok ? 0 : 3;
}

int demo_ex3(RunContext& ctx) {
    const std::vector<std::int64_t> ns = {1, 5, 25};
    const GridSpec grid = GridSpec::square(2.5, 257);
    const double tol = grid.h() * std::sqrt(2.0) + grid.h();
    const ScalarField limit_field = evaluate_field(AnalyticFamily{FamilyId::ex3, 0}, grid);
    const PointSet limit_points = sublevel(limit_field, 1.0, Closedness::strict).points;
    write_artifact(ctx, "demo_ex3_" + ctx.hash + "_region_limit.json",
                   region_to_json(sublevel(limit_field, 1.0, Closedness::strict)));
    bool all_ok = true;
    std::vector<std::vector<double>> dh_table;
    for (std::int64_t n : ns) {
        const ScalarField field = evaluate_field(AnalyticFamily{FamilyId::ex3, n}, grid);
        const RegionSample region = sublevel(field, 1.0, Closedness::strict);
        const double dh = hausdorff(region.points, limit_points);
        dh_table.push_back({dh});
        const bool ok = std::abs(dh - 1.0) <= tol;
        all_ok = all_ok && ok;
        print_check(*ctx.out, "d_H(sub_1(g_" + std::to_string(n) + "), sub_1(g)) = 1 within " +
                    format_double(tol), ok, "dh " + format_double(dh));
        if (n == ns.front()) {
            write_artifact(ctx, "demo_ex3_" + ctx.hash + "_region_n" + std::to_string(n) + ".json",
                           region_to_json(region));
        }
    }
    write_artifact(ctx, "demo_ex3_" + ctx.hash + "_dh.csv", dh_table_to_csv(ns, {1.0}, dh_table));
    (*ctx.out) << "sublevel sets of g_n stabilize at 2D while g_n -> g pointwise;"
               << " the sublevel of the limit is D (locally constant limit)\n";
    return all_ok ? 0 : 3;
}

int demo_ex5(RunContext& ctx) {
    const double eps = 0.5;
    const std::vector<std::int64_t> ns = {10, 50, 100};
    bool all_ok = true;
    std::string summary = "{\"demo\":\"ex5\",\"mode\":\"NON-OPERATOR\",\"eps\":" +
                          format_double(eps) + ",\"per_n\":[";
    std::vector<std::vector<double>> dh_table;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const std::int64_t n = ns[i];
        // the grid must resolve the sublevel bands around radii k/n: half cell
        // diagonal below the band half-width arcsin(eps)/(n*pi)
        const double band = std::asin(eps) / (static_cast<double>(n) * kPi);
        std::size_t nodes = 257;
        while (GridSpec::square(1.6, nodes).h() >= 2.0 * band && nodes < 8193) {
            nodes = 2 * (nodes - 1) + 1;
        }
        const GridSpec grid = GridSpec::square(1.6, nodes);
        const ScalarField field = evaluate_field(AnalyticFamily{FamilyId::ex5, n}, grid);
        const PointSet region = sublevel(field, eps, Closedness::strict).points;
        const PointSet disk = grid_sample(SymbolicRegion{Disk{{0.0, 0.0}, 1.0 + eps}}, grid);
        const double dh = hausdorff(region, disk);
        const double bound = 1.0 / static_cast<double>(n) + grid.h() * std::sqrt(2.0);
        const bool ok = dh <= bound;
        all_ok = all_ok && ok;
        dh_table.push_back({dh});
        print_check(*ctx.out, "d_H(sub_eps(g_" + std::to_string(n) + "), (1+eps)D) <= 1/n + h*sqrt(2)",
                    ok, "dh " + format_double(dh) + " bound " + format_double(bound) + " grid " +
                    std::to_string(nodes));
        if (i > 0) summary += ',';
        summary += "{\"n\":" + std::to_string(n) + ",\"nodes\":" + std::to_string(nodes) +
                   ",\"dh\":" + format_double(dh) + ",\"bound\":" + format_double(bound) + "}";
    }
    // pointwise: values at 1/(2n) keep jumping by order one between members
    std::vector<cplx> samples;
    for (std::int64_t n : ns) samples.emplace_back(1.0 / (2.0 * static_cast<double>(n)), 0.0);
    samples.emplace_back(0.25, 0.0);
    double min_pair_max = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
        const AnalyticFamily lo{FamilyId::ex5, ns[i]};
        const AnalyticFamily hi{FamilyId::ex5, ns[i + 1]};
        double pair_max = 0.0;
        for (cplx z : samples) pair_max = std::max(pair_max, std::abs(hi(z) - lo(z)));
        min_pair_max = std::min(min_pair_max, pair_max);
    }
    const bool oscillates = min_pair_max >= 0.5;
    all_ok = all_ok && oscillates;
    print_check(*ctx.out, "pointwise increments show no Cauchy decrease", oscillates,
                "min over consecutive pairs of max increment = " + format_double(min_pair_max));
    (*ctx.out) << "mode: NON-OPERATOR (analytic family; exempt from the equivalence verdict)\n";
    summary += "],\"min_pair_max_increment\":" + format_double(min_pair_max) + "}\n";
    write_artifact(ctx, "demo_ex5_" + ctx.hash + "_summary.json", summary);
    write_artifact(ctx, "demo_ex5_" + ctx.hash + "_dh.csv", dh_table_to_csv(ns, {eps}, dh_table));
    return all_ok ? 0 : 3;
}

PointSet sampled_interval(double lo, double hi, double step) {
    PointSet out;
    for (double x = lo; x <= hi + 1e-12; x += step) out.emplace_back(std::min(x, hi), 0.0);
    return out;
}

int demo_lemma31a(RunContext& ctx) {
    // S_n = [0,1] sampled at step 1/(4n); T_n = (1/n)Z in [0,1];
    // members are S_n \ T_n with margin 1/(8n)
    const std::int64_t horizon = 50;
    const SetSequence diff_seq(
        [](std::int64_t n) {
            const double nd = static_cast<double>(n);
            const PointSet s = sampled_interval(0.0, 1.0, 1.0 / (4.0 * nd));
            PointSet t;
            for (std::int64_t j = 0; j <= n; ++j) t.emplace_back(static_cast<double>(j) / nd, 0.0);
            return difference_with_margin(s, t, 1.0 / (8.0 * nd));
        },
        1, horizon);
    const PointSet estimate = liminf_estimate(diff_seq, 1, horizon, 0.26);
    const PointSet unit_interval = sampled_interval(0.0, 1.0, 0.005);
    const double dh = hausdorff(estimate, unit_interval);
    const bool covers = dh <= 0.05;
    print_check(*ctx.out, "liminf estimate of S_n \\ T_n covers [0,1] within 0.05", covers,
                "dh " + format_double(dh));
    // while the limits S = T = [0,1] have empty difference
    const PointSet s_minus_t = difference_with_margin(unit_interval, unit_interval, 0.0);
    const bool empty_ok = s_minus_t.empty();
    print_check(*ctx.out, "sampled S \\ T is empty", empty_ok,
                std::to_string(s_minus_t.size()) + " points");
    write_artifact(ctx, "demo_lemma31a_" + ctx.hash + "_liminf.json", pointset_to_json(estimate));
    const std::string summary = "{\"demo\":\"lemma31a\",\"horizon\":" + std::to_string(horizon) +
                                ",\"match_radius\":0.26,\"dh_to_unit_interval\":" +
                                format_double(dh) + ",\"limit_difference_empty\":" +
                                (empty_ok ? "true" : "false") + "}\n";
    write_artifact(ctx, "demo_lemma31a_" + ctx.hash + "_summary.json", summary);
    return covers && empty_ok ? 0 : 3;
}

int demo_normal(RunContext& ctx) {
    const FiniteOperator d(diagonal_matrix({{0.0, 0.0}, {2.0, 0.0}}));
    const GridSpec grid({1.0, 1.0}, 2.5, 2.5, 257, 257);
    const std::vector<double> eps_list = {0.25, 0.5, 1.0};
    const NormalCorollaryResult result = normal_corollary_check(d, eps_list, grid);
    for (const CheckVerdict& v : result.verdicts) {
        print_check(*ctx.out, v.name, v.pass, v.detail + ", tolerance " + format_double(v.tolerance));
    }
    const ScalarField field = evaluate_field(d, grid);
    write_artifact(ctx, "demo_normal_" + ctx.hash + "_field.csv", field_to_csv(field));
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
        write_artifact(ctx, "demo_normal_" + ctx.hash + "_region_eps" + std::to_string(k) + ".json",
                       region_to_json(sublevel(field, eps_list[k], Closedness::strict)));
    }
    std::string summary = "{\"demo\":\"normal\",\"field_error\":" +
                          format_double(result.field_error) + ",\"dh_per_eps\":[";
    for (std::size_t k = 0; k < result.dh_per_eps.size(); ++k) {
        if (k > 0) summary += ',';
        summary += format_double(result.dh_per_eps[k]);
    }
    summary += "],\"pass\":" + std::string(result.pass ? "true" : "false") + "}\n";
    write_artifact(ctx, "demo_normal_" + ctx.hash + "_summary.json", summary);
    (*ctx.out) << "verdict: " << (result.pass ? "PASS" : "FAIL") << "\n";
    return result.pass ? 0 : 3;
}

int demo_shift_sections(RunContext& ctx) {
    const BandOperator shift(1, {{1, ConstRule{{1.0, 0.0}}}});
    const std::vector<std::int64_t> ns = {6, 12, 24, 48};
    const double eps = 0.3;
    const GridSpec grid = GridSpec::square(1.3, 257);

    std::vector<PointSet> regions;
    for (std::int64_t n : ns) {
        const ScalarField field = evaluate_field(finite_section(shift, n), grid);
        regions.push_back(sublevel(field, eps, Closedness::strict).points);
    }
    bool decreasing = true;
    bool stabilized = true;
    std::vector<std::int64_t> pair_labels;
    std::vector<std::vector<double>> dh_table;
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
        const double dh = hausdorff(regions[i], regions[i + 1]);
        pair_labels.push_back(ns[i + 1]);
        dh_table.push_back({dh});
        (*ctx.out) << "d_H(sp_eps(J_" << ns[i] << "), sp_eps(J_" << ns[i + 1]
                   << ")) = " << format_double(dh) << "\n";
        if (dh > prev + 1e-12) decreasing = false;
        prev = dh;
        if (i + 2 == ns.size()) stabilized = dh < 0.05;
    }
    print_check(*ctx.out, "consecutive d_H decreasing", decreasing, "");
    print_check(*ctx.out, "d_H below 0.05 by n=48", stabilized, "");

    // window lower-norm showcase at lambda = 0.5
    std::string windows = "[";
    double prev_w = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (std::int64_t d : {2, 4, 8, 16}) {
        const double w = window_lower_norm(shift, {0.5, 0.0}, d, -16, 16);
        (*ctx.out) << "window_lower_norm(shift - 0.5 I, d=" << d << ") = " << format_double(w)
                   << "\n";
        if (w > prev_w + 1e-12) monotone = false;
        prev_w = w;
        if (windows.size() > 1) windows += ',';
        windows += format_double(w);
    }
    windows += ']';
    print_check(*ctx.out, "window upper bounds nonincreasing in d", monotone, "");

    write_artifact(ctx, "demo_shift-sections_" + ctx.hash + "_dh.csv",
                   dh_table_to_csv(pair_labels, {eps}, dh_table));
    const std::string summary =
        "{\"demo\":\"shift-sections\",\"eps\":" + format_double(eps) +
        ",\"windows_at_0.5\":" + windows + ",\"consecutive_dh_decreasing\":" +
        (decreasing ? "true" : "false") + ",\"stabilized\":" + (stabilized ? "true" : "false") +
        "}\n";
    write_artifact(ctx, "demo_shift-sections_" + ctx.hash + "_summary.json", summary);
    return decreasing && stabilized && monotone ? 0 : 3;
}

int cmd_demo(RunContext& ctx, const std::string& name) {
    if (name == "ex2") return demo_ex2(ctx);
    if (name == "ex3") return demo_ex3(ctx);
    if (name == "ex5") return demo_ex5(ctx);
    if (name == "lemma31a") return demo_lemma31a(ctx);
    if (name == "normal") return demo_normal(ctx);
    if (name == "shift-sections") return demo_shift_sections(ctx);
    throw std::invalid_argument("demo: unknown name '" + name +
                                "' (ex2, ex3, ex5, lemma31a, normal, shift-sections)");
}

int dispatch(const std::string& command, const std::string& config_or_name,
             const std::string& out_dir, std::optional<std::uint64_t> seed_override,
             std::ostream& out) {
    RunContext ctx;
    ctx.out = &out;
    ctx.out_dir = out_dir.empty() ? fs::current_path() : fs::path(out_dir);
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec || !fs::is_directory(ctx.out_dir)) {
        throw std::invalid_argument("output directory not writable: " + ctx.out_dir.string());
    }

    std::string canonical;
    if (command == "demo") {
        ctx.config = json{{"demo", config_or_name}};
        ctx.config_dir = fs::current_path();
        canonical = "demo:" + ctx.config.dump();
    } else {
        const fs::path config_path(config_or_name);
        ctx.config = parse_config_text(read_text_file(config_path));
        ctx.config_dir = config_path.has_parent_path() ? config_path.parent_path()
                                                       : fs::current_path();
        canonical = command + ":" + ctx.config.dump();
    }
    ctx.seed = seed_override ? *seed_override
                             : ctx.config.value("seed", std::uint64_t{0});
    ctx.hash = config_hash(canonical, ctx.seed);

    if (command == "field") return cmd_field(ctx);
    if (command == "pseudo") return cmd_pseudo(ctx);
    if (command == "dh") return cmd_dh(ctx);
    if (command == "converge") return cmd_converge(ctx);
    if (command == "demo") return cmd_demo(ctx, config_or_name);
    throw std::invalid_argument("unknown command: " + command);
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"pseudospectra and lower-norm field toolkit"};
    app.require_subcommand(1);

    struct SubArgs {
        std::string positional;
        std::string out_dir;
        std::optional<std::uint64_t> seed;
    };
    std::map<std::string, SubArgs> args;
    const std::vector<std::pair<std::string, std::string>> subs = {
        {"field", "evaluate the lower-norm field on a grid (config file)"},
        {"pseudo", "extract pseudospectrum regions (config file)"},
        {"dh", "Hausdorff distance between two point-set files (config file)"},
        {"converge", "pointwise vs Hausdorff convergence report (config file)"},
        {"demo", "run a named demo: ex2 ex3 ex5 lemma31a normal shift-sections"},
    };
    for (const auto& [name, desc] : subs) {
        CLI::App* sub = app.add_subcommand(name, desc);
        auto& sa = args[name];
        sub->add_option(name == "demo" ? "name" : "config", sa.positional,
                        name == "demo" ? "demo name" : "path to the run config JSON")
            ->required();
        sub->add_option("--out", sa.out_dir, "output directory (default: current)");
        sub->add_option("--seed", sa.seed, "seed override");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const SubArgs& sa = args[command];
    try {
        return dispatch(command, sa.positional, sa.out_dir, sa.seed, out);
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return 3;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("pspec");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace pspec
