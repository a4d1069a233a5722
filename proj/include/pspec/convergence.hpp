#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pspec/levelsets.hpp"
#include "pspec/operators.hpp"
#include "pspec/setgeom.hpp"

namespace pspec {

struct CheckVerdict {
    std::string name;
    bool pass = false;
    double tolerance = 0.0;
    std::string detail;
};

// Diagnostics tying pointwise residuals of f_n against f to per-eps
// Hausdorff distances of the sampled pseudospectra.
struct ConvergenceReport {
    ConvergenceReport(std::string mode_, GridSpec grid_, std::vector<cplx> sample_points_,
                      std::vector<std::int64_t> n_list_, std::vector<double> eps_list_)
        : mode(std::move(mode_)), grid(grid_), h(grid_.h()),
          sample_points(std::move(sample_points_)), n_list(std::move(n_list_)),
          eps_list(std::move(eps_list_)), slack(2.0 * grid_.h()) {}

    std::string mode; // "OPERATOR" or "NON-OPERATOR"
    GridSpec grid;
    double h = 0.0;
    std::vector<cplx> sample_points;
    std::vector<std::int64_t> n_list;
    std::vector<double> eps_list;

    // residuals[i][j] = |f_{n_i}(lambda_j) - f(lambda_j)| (needs a limit)
    std::vector<std::vector<double>> residuals;
    // dh[i][k] = d_H(region of member n_i, region of the limit) at eps_k
    std::vector<std::vector<double>> dh;
    // closed-region variant of dh (only when requested)
    std::vector<std::vector<double>> dh_closed;

    // member-to-member data for runs without a pointwise limit
    std::vector<std::array<std::int64_t, 2>> increment_pairs;
    std::vector<std::vector<double>> increments;   // [pair][sample point]
    std::vector<std::vector<double>> dh_consecutive; // [pair][eps]

    std::vector<CheckVerdict> verdicts;
    std::string verdict; // PASS-CONSISTENT | INCONSISTENT | UNRESOLVED | NON-OPERATOR
    double slack = 0.0;  // monotonicity slack used (2h)
};

// residual(n, lambda) = |mu(A_n - lambda I) - mu(A - lambda I)|
std::vector<std::vector<double>> pointwise_check(const OperatorSequence& seq,
                                                 const FiniteOperator& a,
                                                 const std::vector<cplx>& sample_points,
                                                 const std::vector<std::int64_t>& n_list);

// d_H between strict sublevel samples of each member and of A on a shared
// grid. The grid must cover the bounding disk of every operator involved;
// otherwise the run aborts with a diagnostic. An empty region on exactly
// one side records +inf.
std::vector<std::vector<double>> hausdorff_check(const OperatorSequence& seq,
                                                 const FiniteOperator& a,
                                                 const std::vector<double>& eps_list,
                                                 const std::vector<std::int64_t>& n_list,
                                                 const GridSpec& grid,
                                                 Closedness closedness = Closedness::strict);

struct SandwichResult {
    bool pass = false;
    double delta = 0.0; // op_norm(A - B)
    std::optional<cplx> counterexample;
    std::string detail;
};

// Checks on every grid node that f_a < eps - delta implies f_b < eps and
// f_b < eps implies f_a < eps + delta, with delta = op_norm(A - B).
SandwichResult sandwich_check(const FiniteOperator& a, const FiniteOperator& b, double eps,
                              const GridSpec& grid);

struct NormalCorollaryResult {
    bool pass = false;
    double field_error = 0.0;        // max |f - dist to spectrum|
    double field_tolerance = 1e-10;
    std::vector<double> dh_per_eps;  // vs grid-sampled eps-neighborhood
    double dh_tolerance = 0.0;       // h * sqrt(2)
    std::vector<CheckVerdict> verdicts;
};

// For a diagonal operator, f must equal the distance to the spectrum and
// each pseudospectrum must sample the eps-neighborhood of the spectrum.
NormalCorollaryResult normal_corollary_check(const FiniteOperator& d,
                                             const std::vector<double>& eps_list,
                                             const GridSpec& grid);

// Full diagnostics run. Verdict is PASS-CONSISTENT when the per-n maxima of
// the residual table and of the dh table both decrease within slack 2h (or
// both fail to); INCONSISTENT otherwise; UNRESOLVED when every eps is at or
// below the 2h resolution floor. Only eps > 2h enter the verdict.
ConvergenceReport equivalence_report(const OperatorSequence& seq, const FiniteOperator& a,
                                     const std::vector<double>& eps_list,
                                     const std::vector<std::int64_t>& n_list,
                                     const std::vector<cplx>& sample_points,
                                     const GridSpec& grid, bool closed_variant_check = false);

// Same diagnostics for an analytic family wired through the field
// interface. Labeled NON-OPERATOR and exempt from the equivalence verdict;
// families without a pointwise limit report member-to-member increments.
ConvergenceReport analytic_report(FamilyId family, const std::vector<double>& eps_list,
                                  const std::vector<std::int64_t>& n_list,
                                  const std::vector<cplx>& sample_points,
                                  const GridSpec& grid);

// deterministic sample points: uniform draws from the disk of given radius
std::vector<cplx> seeded_sample_points(std::size_t count, double radius, std::uint64_t seed);

// true when x_{k+1} <= x_k + slack for all k and x_last <= x_first/2 + slack
bool decreases_within_slack(const std::vector<double>& xs, double slack);

} // namespace pspec
