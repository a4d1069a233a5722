#include "pspec/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pspec {

using nlohmann::json;

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) throw std::invalid_argument("format_double: NaN has no serial form");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::invalid_argument("cannot write file: " + path.string());
    }
    out << content;
    if (!out) {
        throw std::invalid_argument("short write: " + path.string());
    }
}

namespace {

json parse_json(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw std::invalid_argument(std::string(what) + ": malformed JSON");
    }
    return j;
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

void append_pair(std::string& out, cplx z) {
    out += '[';
    out += format_double(z.real());
    out += ',';
    out += format_double(z.imag());
    out += ']';
}

// numeric JSON value, or the quoted string "inf" for infinities
void append_number_or_inf(std::string& out, double x) {
    if (std::isinf(x)) {
        out += '"';
        out += format_double(x);
        out += '"';
    } else {
        out += format_double(x);
    }
}

cplx cplx_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw std::invalid_argument(std::string(what) + ": complex values are [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

std::string matrix_to_json(const ComplexMatrix& m) {
    std::string out = "{\"rows\":" + std::to_string(m.rows()) +
                      ",\"cols\":" + std::to_string(m.cols()) + ",\"re\":[";
    for (std::size_t k = 0; k < m.entries().size(); ++k) {
        if (k > 0) out += ',';
        out += format_double(m.entries()[k].real());
    }
    out += "],\"im\":[";
    for (std::size_t k = 0; k < m.entries().size(); ++k) {
        if (k > 0) out += ',';
        out += format_double(m.entries()[k].imag());
    }
    out += "]}\n";
    return out;
}

namespace {

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") ||
        !j.contains("im")) {
        throw std::invalid_argument("matrix: expected {rows, cols, re, im}");
    }
    const auto rows = j["rows"].get<std::int64_t>();
    const auto cols = j["cols"].get<std::int64_t>();
    if (rows <= 0 || cols <= 0) {
        throw std::invalid_argument("matrix: dimensions must be positive");
    }
    const auto& re = j["re"];
    const auto& im = j["im"];
    const auto count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (!re.is_array() || !im.is_array() || re.size() != count || im.size() != count) {
        throw std::invalid_argument("matrix: re/im must be arrays of rows*cols reals");
    }
    std::vector<cplx> entries(count);
    for (std::size_t k = 0; k < count; ++k) {
        if (!re[k].is_number() || !im[k].is_number()) {
            throw std::invalid_argument("matrix: re/im entries must be numbers");
        }
        entries[k] = {re[k].get<double>(), im[k].get<double>()};
    }
    return {static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(entries)};
}

} // namespace

ComplexMatrix matrix_from_json_text(const std::string& text) {
    return matrix_from_json(parse_json(text, "matrix"));
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
    return matrix_from_json_text(read_text_file(path));
}

namespace {

DiagonalRule rule_from_json(const json& j) {
    if (!j.is_object() || j.size() != 1) {
        throw std::invalid_argument("band rule: expected one of const/periodic/perturbed");
    }
    if (j.contains("const")) {
        return ConstRule{cplx_from_json(j["const"], "band const rule")};
    }
    if (j.contains("periodic")) {
        const auto& arr = j["periodic"];
        if (!arr.is_array() || arr.empty()) {
            throw std::invalid_argument("band periodic rule: nonempty array required");
        }
        PeriodicRule rule;
        for (const auto& v : arr) rule.values.push_back(cplx_from_json(v, "band periodic rule"));
        return rule;
    }
    if (j.contains("perturbed")) {
        const auto& p = j["perturbed"];
        if (!p.is_object() || !p.contains("base") || !p.contains("support")) {
            throw std::invalid_argument("band perturbed rule: expected {base, support}");
        }
        PerturbedRule rule;
        rule.base = cplx_from_json(p["base"], "band perturbed rule");
        for (const auto& item : p["support"]) {
            if (!item.is_object() || !item.contains("pos") || !item.contains("value")) {
                throw std::invalid_argument("band perturbed rule: support items are {pos, value}");
            }
            rule.support[item["pos"].get<std::int64_t>()] =
                cplx_from_json(item["value"], "band perturbed rule");
        }
        return rule;
    }
    throw std::invalid_argument("band rule: unknown kind");
}

BandOperator band_from_json(const json& j) {
    if (!j.is_object() || !j.contains("bandwidth") || !j.contains("diagonals")) {
        throw std::invalid_argument("band operator: expected {bandwidth, diagonals}");
    }
    std::map<std::int64_t, DiagonalRule> diagonals;
    for (const auto& d : j["diagonals"]) {
        if (!d.is_object() || !d.contains("offset") || !d.contains("rule")) {
            throw std::invalid_argument("band operator: diagonals are {offset, rule}");
        }
        diagonals.emplace(d["offset"].get<std::int64_t>(), rule_from_json(d["rule"]));
    }
    return {j["bandwidth"].get<std::int64_t>(), std::move(diagonals)};
}

ComplexMatrix matrix_from_json_or_path(const json& j, const std::filesystem::path& base_dir) {
    if (j.is_string()) {
        std::filesystem::path p = j.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        return read_matrix_file(p);
    }
    return matrix_from_json(j);
}

} // namespace

BandOperator band_from_json_text(const std::string& text) {
    return band_from_json(parse_json(text, "band operator"));
}

OperatorSequence sequence_from_json_text(const std::string& text,
                                         const std::filesystem::path& base_dir) {
    const json j = parse_json(text, "operator sequence");
    if (!j.is_object() || !j.contains("kind")) {
        throw std::invalid_argument("operator sequence: expected {kind, ...}");
    }
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "explicit") {
        if (!j.contains("members") || !j["members"].is_array() || j["members"].empty()) {
            throw std::invalid_argument("operator sequence: explicit kind needs members");
        }
        std::vector<ComplexMatrix> members;
        for (const auto& m : j["members"]) {
            members.push_back(matrix_from_json_or_path(m, base_dir));
        }
        const std::int64_t n_min = j.value("n_min", std::int64_t{1});
        return OperatorSequence::explicit_list(std::move(members), n_min);
    }
    if (kind == "perturbation") {
        if (!j.contains("base") || !j.contains("perturbation") || !j.contains("n_min") ||
            !j.contains("n_max")) {
            throw std::invalid_argument(
                "operator sequence: perturbation kind needs base, perturbation, n_min, n_max");
        }
        return OperatorSequence::perturbation_decay(
            matrix_from_json_or_path(j["base"], base_dir),
            matrix_from_json_or_path(j["perturbation"], base_dir),
            j["n_min"].get<std::int64_t>(), j["n_max"].get<std::int64_t>());
    }
    if (kind == "sections") {
        if (!j.contains("band") || !j.contains("n_min") || !j.contains("n_max")) {
            throw std::invalid_argument("operator sequence: sections kind needs band, n_min, n_max");
        }
        return OperatorSequence::finite_sections(band_from_json(j["band"]),
                                                 j["n_min"].get<std::int64_t>(),
                                                 j["n_max"].get<std::int64_t>());
    }
    throw std::invalid_argument("operator sequence: unknown kind '" + kind + "'");
}

GridSpec grid_from_json_text(const std::string& text) {
    const json j = parse_json(text, "grid");
    if (!j.is_object() || !j.contains("center") || !j.contains("half_width") ||
        !j.contains("half_height") || !j.contains("nx") || !j.contains("ny")) {
        throw std::invalid_argument("grid: expected {center, half_width, half_height, nx, ny}");
    }
    return {cplx_from_json(j["center"], "grid center"), j["half_width"].get<double>(),
            j["half_height"].get<double>(), j["nx"].get<std::size_t>(),
            j["ny"].get<std::size_t>()};
}

std::string field_to_csv(const ScalarField& field) {
    std::string out = "re,im,value\n";
    out.reserve(out.size() + field.values.size() * 60);
    for (std::size_t iy = 0; iy < field.grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < field.grid.nx; ++ix) {
            const cplx z = field.grid.node(ix, iy);
            out += format_double(z.real());
            out += ',';
            out += format_double(z.imag());
            out += ',';
            out += format_double(field.value(ix, iy));
            out += '\n';
        }
    }
    return out;
}

std::string region_to_json(const RegionSample& region) {
    std::string out = "{\"level\":";
    out += format_double(region.level);
    out += ",\"closedness\":\"";
    out += region.closedness == Closedness::strict ? "strict" : "closed";
    out += "\",\"points\":[";
    for (std::size_t k = 0; k < region.points.size(); ++k) {
        if (k > 0) out += ',';
        append_pair(out, region.points[k]);
    }
    out += "],\"boundary\":[";
    for (std::size_t b = 0; b < region.boundary.size(); ++b) {
        if (b > 0) out += ',';
        out += '[';
        for (std::size_t k = 0; k < region.boundary[b].size(); ++k) {
            if (k > 0) out += ',';
            append_pair(out, region.boundary[b][k]);
        }
        out += ']';
    }
    out += "]}\n";
    return out;
}

std::string pointset_to_json(const PointSet& points) {
    std::string out = "{\"points\":[";
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (k > 0) out += ',';
        append_pair(out, points[k]);
    }
    out += "]}\n";
    return out;
}

PointSet pointset_from_json_text(const std::string& text) {
    const json j = parse_json(text, "point set");
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
        throw std::invalid_argument("point set: expected {points: [[re, im], ...]}");
    }
    PointSet out;
    for (const auto& p : j["points"]) {
        out.push_back(cplx_from_json(p, "point set"));
    }
    return out;
}

PointSet read_pointset_file(const std::filesystem::path& path) {
    return pointset_from_json_text(read_text_file(path));
}

std::string dh_table_to_csv(const std::vector<std::int64_t>& n_list,
                            const std::vector<double>& eps_list,
                            const std::vector<std::vector<double>>& table) {
    std::string out = "n,eps,dh\n";
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        for (std::size_t k = 0; k < eps_list.size(); ++k) {
            out += std::to_string(n_list[i]);
            out += ',';
            out += format_double(eps_list[k]);
            out += ',';
            out += format_double(table[i][k]);
            out += '\n';
        }
    }
    return out;
}

std::string residuals_to_csv(const std::vector<std::int64_t>& n_list,
                             const std::vector<cplx>& sample_points,
                             const std::vector<std::vector<double>>& residuals) {
    std::string out = "n,re,im,residual\n";
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        for (std::size_t j = 0; j < sample_points.size(); ++j) {
            out += std::to_string(n_list[i]);
            out += ',';
            out += format_double(sample_points[j].real());
            out += ',';
            out += format_double(sample_points[j].imag());
            out += ',';
            out += format_double(residuals[i][j]);
            out += '\n';
        }
    }
    return out;
}

namespace {

void append_double_matrix(std::string& out, const char* key,
                          const std::vector<std::vector<double>>& table) {
    out += '"';
    out += key;
    out += "\":[";
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (i > 0) out += ',';
        out += '[';
        for (std::size_t k = 0; k < table[i].size(); ++k) {
            if (k > 0) out += ',';
            append_number_or_inf(out, table[i][k]);
        }
        out += ']';
    }
    out += ']';
}

} // namespace

std::string report_to_json(const ConvergenceReport& report) {
    std::string out = "{\"mode\":\"" + escape(report.mode) + "\",\"verdict\":\"" +
                      escape(report.verdict) + "\",";
    out += "\"grid\":{\"center\":";
    append_pair(out, report.grid.center);
    out += ",\"half_width\":" + format_double(report.grid.half_width);
    out += ",\"half_height\":" + format_double(report.grid.half_height);
    out += ",\"nx\":" + std::to_string(report.grid.nx);
    out += ",\"ny\":" + std::to_string(report.grid.ny);
    out += ",\"h\":" + format_double(report.h) + "},";
    out += "\"tolerances\":{\"slack\":" + format_double(report.slack);
    out += ",\"eps_resolution_floor\":" + format_double(2.0 * report.h) + "},";
    out += "\"n_list\":[";
    for (std::size_t i = 0; i < report.n_list.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(report.n_list[i]);
    }
    out += "],\"eps_list\":[";
    for (std::size_t k = 0; k < report.eps_list.size(); ++k) {
        if (k > 0) out += ',';
        out += format_double(report.eps_list[k]);
    }
    out += "],\"sample_points\":[";
    for (std::size_t j = 0; j < report.sample_points.size(); ++j) {
        if (j > 0) out += ',';
        append_pair(out, report.sample_points[j]);
    }
    out += "],";
    append_double_matrix(out, "residuals", report.residuals);
    out += ',';
    append_double_matrix(out, "dh", report.dh);
    if (!report.dh_closed.empty()) {
        out += ',';
        append_double_matrix(out, "dh_closed", report.dh_closed);
    }
    if (!report.increment_pairs.empty()) {
        out += ",\"increment_pairs\":[";
        for (std::size_t i = 0; i < report.increment_pairs.size(); ++i) {
            if (i > 0) out += ',';
            out += '[' + std::to_string(report.increment_pairs[i][0]) + ',' +
                   std::to_string(report.increment_pairs[i][1]) + ']';
        }
        out += "],";
        append_double_matrix(out, "increments", report.increments);
    }
    if (!report.dh_consecutive.empty()) {
        out += ',';
        append_double_matrix(out, "dh_consecutive", report.dh_consecutive);
    }
    out += ",\"verdicts\":[";
    for (std::size_t v = 0; v < report.verdicts.size(); ++v) {
        if (v > 0) out += ',';
        const CheckVerdict& cv = report.verdicts[v];
        out += "{\"name\":\"" + escape(cv.name) + "\",\"pass\":" + (cv.pass ? "true" : "false") +
               ",\"tolerance\":" + format_double(cv.tolerance) + ",\"detail\":\"" +
               escape(cv.detail) + "\"}";
    }
    out += "]}\n";
    return out;
}

std::string config_hash(const std::string& canonical_config, std::uint64_t seed) {
    std::uint64_t h = 1469598103934665603ULL;
    const auto mix = [&h](unsigned char c) {
        h ^= c;
        h *= 1099511628211ULL;
    };
    for (unsigned char c : canonical_config) mix(c);
    for (int b = 0; b < 8; ++b) mix(static_cast<unsigned char>(seed >> (8 * b)));
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace pspec
