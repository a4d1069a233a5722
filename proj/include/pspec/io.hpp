#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pspec/complex_matrix.hpp"
#include "pspec/convergence.hpp"
#include "pspec/levelsets.hpp"
#include "pspec/operators.hpp"
#include "pspec/setgeom.hpp"

namespace pspec {

// All file output goes through these formatters: floats carry 17
// significant digits; infinite values are serialized as the string "inf",
// never as a float sentinel.
std::string format_double(double x);

// ---- files ----
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

// ---- matrix: {"rows": n, "cols": m, "re": [...], "im": [...]} row-major ----
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json_text(const std::string& text);
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

// ---- band operator and operator sequence descriptions ----
BandOperator band_from_json_text(const std::string& text);
OperatorSequence sequence_from_json_text(const std::string& text,
                                         const std::filesystem::path& base_dir);

// ---- grid ----
GridSpec grid_from_json_text(const std::string& text);

// ---- field CSV: header re,im,value; one row per node, row-major ----
std::string field_to_csv(const ScalarField& field);

// ---- region: {level, closedness, points, boundary} ----
std::string region_to_json(const RegionSample& region);

// ---- point sets: {"points": [[re,im], ...]} ----
std::string pointset_to_json(const PointSet& points);
// accepts both point-set files and region files (any object with "points")
PointSet pointset_from_json_text(const std::string& text);
PointSet read_pointset_file(const std::filesystem::path& path);

// ---- d_H table CSV: n,eps,dh with "inf" allowed ----
std::string dh_table_to_csv(const std::vector<std::int64_t>& n_list,
                            const std::vector<double>& eps_list,
                            const std::vector<std::vector<double>>& table);

// ---- residual CSV: n,re,im,residual ----
std::string residuals_to_csv(const std::vector<std::int64_t>& n_list,
                             const std::vector<cplx>& sample_points,
                             const std::vector<std::vector<double>>& residuals);

std::string report_to_json(const ConvergenceReport& report);

// FNV-1a 64-bit over the canonical config text and the effective seed;
// output filenames are derived from it.
std::string config_hash(const std::string& canonical_config, std::uint64_t seed);

} // namespace pspec
