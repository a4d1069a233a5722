#include "pspec/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pspec/errors.hpp"
#include "pspec/svd.hpp"

namespace pspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_cplx(cplx z) {
    std::ostringstream os;
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

// the grid rectangle must contain the disk |z| <= r
void require_grid_covers(const GridSpec& grid, double r, const std::string& context) {
    const bool ok = grid.center.real() - grid.half_width <= -r &&
                    grid.center.real() + grid.half_width >= r &&
                    grid.center.imag() - grid.half_height <= -r &&
                    grid.center.imag() + grid.half_height >= r;
    if (!ok) {
        std::ostringstream os;
        os << context << ": grid does not cover the bounding disk of radius " << r
           << " (half extents " << grid.half_width << " x " << grid.half_height
           << " around " << fmt_cplx(grid.center) << "); enlarge the grid";
        throw std::invalid_argument(os.str());
    }
}

} // namespace

std::vector<std::vector<double>> pointwise_check(const OperatorSequence& seq,
                                                 const FiniteOperator& a,
                                                 const std::vector<cplx>& sample_points,
                                                 const std::vector<std::int64_t>& n_list) {
    if (sample_points.empty() || n_list.empty()) {
        throw std::invalid_argument("pointwise_check: sample points and n list must be nonempty");
    }
    std::vector<double> f_limit(sample_points.size());
    for (std::size_t j = 0; j < sample_points.size(); ++j) {
        f_limit[j] = mu(shifted(a, sample_points[j]));
    }
    std::vector<std::vector<double>> residuals(n_list.size(),
                                               std::vector<double>(sample_points.size()));
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const FiniteOperator member = seq.member(n_list[i]);
        if (member.dim() != a.dim()) {
            throw std::invalid_argument("pointwise_check: member dimension mismatch at n=" +
                                        std::to_string(n_list[i]));
        }
        for (std::size_t j = 0; j < sample_points.size(); ++j) {
            residuals[i][j] = std::abs(mu(shifted(member, sample_points[j])) - f_limit[j]);
        }
    }
    return residuals;
}

std::vector<std::vector<double>> hausdorff_check(const OperatorSequence& seq,
                                                 const FiniteOperator& a,
                                                 const std::vector<double>& eps_list,
                                                 const std::vector<std::int64_t>& n_list,
                                                 const GridSpec& grid, Closedness closedness) {
    if (eps_list.empty() || n_list.empty()) {
        throw std::invalid_argument("hausdorff_check: eps list and n list must be nonempty");
    }
    for (double eps : eps_list) {
        if (!(eps > 0.0)) throw std::invalid_argument("hausdorff_check: eps must be positive");
    }
    const double eps_max = *std::max_element(eps_list.begin(), eps_list.end());
    double r = bounding_radius(a, eps_max);
    for (std::int64_t n : n_list) {
        r = std::max(r, bounding_radius(seq.member(n), eps_max));
    }
    require_grid_covers(grid, r, "hausdorff_check");

    const ScalarField field_a = evaluate_field(a, grid);
    std::vector<PointSet> limit_points;
    limit_points.reserve(eps_list.size());
    for (double eps : eps_list) {
        limit_points.push_back(sublevel(field_a, eps, closedness).points);
    }

    std::vector<std::vector<double>> table(n_list.size(), std::vector<double>(eps_list.size()));
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const ScalarField field_n = evaluate_field(seq.member(n_list[i]), grid);
        for (std::size_t k = 0; k < eps_list.size(); ++k) {
            table[i][k] = hausdorff(sublevel(field_n, eps_list[k], closedness).points,
                                    limit_points[k]);
        }
    }
    return table;
}

SandwichResult sandwich_check(const FiniteOperator& a, const FiniteOperator& b, double eps,
                              const GridSpec& grid) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("sandwich_check: dimension mismatch");
    }
    SandwichResult result;
    result.delta = op_norm(subtract(a.matrix, b.matrix));
    if (!(eps > result.delta)) {
        throw std::invalid_argument("sandwich_check: eps must exceed op_norm(A-B), band is vacuous");
    }
    const ScalarField fa = evaluate_field(a, grid);
    const ScalarField fb = evaluate_field(b, grid);
    result.pass = true;
    for (std::size_t iy = 0; iy < grid.ny && result.pass; ++iy) {
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            const double va = fa.value(ix, iy);
            const double vb = fb.value(ix, iy);
            const char* violated = nullptr;
            if (va < eps - result.delta && !(vb < eps)) {
                violated = "f_a < eps-delta but f_b >= eps";
            } else if (vb < eps && !(va < eps + result.delta)) {
                violated = "f_b < eps but f_a >= eps+delta";
            }
            if (violated != nullptr) {
                result.pass = false;
                result.counterexample = grid.node(ix, iy);
                result.detail = std::string(violated) + " at node " + fmt_cplx(*result.counterexample);
                break;
            }
        }
    }
    return result;
}

NormalCorollaryResult normal_corollary_check(const FiniteOperator& d,
                                             const std::vector<double>& eps_list,
                                             const GridSpec& grid) {
    const std::size_t n = d.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && d.matrix(i, j) != cplx{0.0, 0.0}) {
                throw std::invalid_argument("normal_corollary_check: operator must be diagonal");
            }
        }
    }
    std::vector<cplx> centers(n);
    for (std::size_t i = 0; i < n; ++i) centers[i] = d.matrix(i, i);

    NormalCorollaryResult result;
    result.dh_tolerance = grid.h() * std::sqrt(2.0);

    const ScalarField field = evaluate_field(d, grid);
    double max_err = 0.0;
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            const cplx z = grid.node(ix, iy);
            double exact = kInf;
            for (cplx c : centers) exact = std::min(exact, std::abs(z - c));
            max_err = std::max(max_err, std::abs(field.value(ix, iy) - exact));
        }
    }
    result.field_error = max_err;
    const bool field_ok = max_err <= result.field_tolerance;
    result.verdicts.push_back({"field equals distance to spectrum", field_ok,
                               result.field_tolerance, "max error " + std::to_string(max_err)});

    bool all_dh_ok = field_ok;
    for (double eps : eps_list) {
        if (!(eps > 0.0)) {
            throw std::invalid_argument("normal_corollary_check: eps must be positive");
        }
        UnionOfDisks neighborhood;
        for (cplx c : centers) neighborhood.disks.push_back({c, eps});
        const PointSet expected = grid_sample(SymbolicRegion{neighborhood}, grid);
        const PointSet actual = sublevel(field, eps, Closedness::strict).points;
        const double dh = hausdorff(actual, expected);
        result.dh_per_eps.push_back(dh);
        const bool ok = dh <= result.dh_tolerance;
        all_dh_ok = all_dh_ok && ok;
        result.verdicts.push_back({"region matches eps-neighborhood at eps=" + std::to_string(eps),
                                   ok, result.dh_tolerance, "dh " + std::to_string(dh)});
    }
    result.pass = all_dh_ok;
    return result;
}

bool decreases_within_slack(const std::vector<double>& xs, double slack) {
    if (xs.size() < 2) return true;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        if (!(xs[k + 1] <= xs[k] + slack)) return false;
    }
    return xs.back() <= xs.front() / 2.0 + slack;
}

namespace {

std::vector<double> row_maxima(const std::vector<std::vector<double>>& table,
                               const std::vector<bool>& col_mask) {
    std::vector<double> out(table.size(), 0.0);
    for (std::size_t i = 0; i < table.size(); ++i) {
        double m = 0.0;
        for (std::size_t k = 0; k < table[i].size(); ++k) {
            if (col_mask.empty() || col_mask[k]) m = std::max(m, table[i][k]);
        }
        out[i] = m;
    }
    return out;
}

} // namespace

ConvergenceReport equivalence_report(const OperatorSequence& seq, const FiniteOperator& a,
                                     const std::vector<double>& eps_list,
                                     const std::vector<std::int64_t>& n_list,
                                     const std::vector<cplx>& sample_points,
                                     const GridSpec& grid, bool closed_variant_check) {
    ConvergenceReport report("OPERATOR", grid, sample_points, n_list, eps_list);
    report.residuals = pointwise_check(seq, a, sample_points, n_list);
    report.dh = hausdorff_check(seq, a, eps_list, n_list, grid, Closedness::strict);
    if (closed_variant_check) {
        report.dh_closed = hausdorff_check(seq, a, eps_list, n_list, grid, Closedness::closed);
        double max_gap = 0.0;
        for (std::size_t i = 0; i < report.dh.size(); ++i) {
            for (std::size_t k = 0; k < report.dh[i].size(); ++k) {
                const double s = report.dh[i][k];
                const double c = report.dh_closed[i][k];
                const double gap = (std::isinf(s) && std::isinf(c)) ? 0.0 : std::abs(s - c);
                max_gap = std::max(max_gap, gap);
            }
        }
        report.verdicts.push_back({"closed-variant dh agreement", max_gap <= 1e-12, 1e-12,
                                   "max |dh_strict - dh_closed| = " + std::to_string(max_gap)});
    }

    // eps at or below the 2h Lipschitz resolution floor cannot support a verdict
    std::vector<bool> resolvable(eps_list.size());
    std::size_t usable = 0;
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
        resolvable[k] = eps_list[k] > 2.0 * grid.h();
        if (resolvable[k]) ++usable;
    }

    bool any_inf = false;
    for (const auto& row : report.dh) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (resolvable[k] && std::isinf(row[k])) any_inf = true;
        }
    }
    if (any_inf) {
        report.verdicts.push_back({"dh table finite", false, 0.0,
                                   "one-sided empty region produced an infinite cell"});
    }

    if (usable == 0) {
        report.verdict = "UNRESOLVED";
        report.verdicts.push_back({"eps resolvable on this grid", false, 2.0 * grid.h(),
                                   "all eps at or below the 2h floor"});
        return report;
    }

    const std::vector<double> residual_max = row_maxima(report.residuals, {});
    const std::vector<double> dh_max = row_maxima(report.dh, resolvable);
    const bool residual_down = decreases_within_slack(residual_max, report.slack);
    const bool dh_down = decreases_within_slack(dh_max, report.slack);
    report.verdicts.push_back({"pointwise residual max decreases within slack", residual_down,
                               report.slack, ""});
    report.verdicts.push_back({"dh max decreases within slack", dh_down, report.slack, ""});
    report.verdict = residual_down == dh_down ? "PASS-CONSISTENT" : "INCONSISTENT";
    return report;
}

ConvergenceReport analytic_report(FamilyId family, const std::vector<double>& eps_list,
                                  const std::vector<std::int64_t>& n_list,
                                  const std::vector<cplx>& sample_points,
                                  const GridSpec& grid) {
    if (eps_list.empty() || n_list.empty() || sample_points.empty()) {
        throw std::invalid_argument("analytic_report: empty eps/n/sample lists");
    }
    ConvergenceReport report("NON-OPERATOR", grid, sample_points, n_list, eps_list);
    report.verdict = "NON-OPERATOR";
    const bool has_limit = family != FamilyId::ex5;

    std::vector<ScalarField> member_fields;
    member_fields.reserve(n_list.size());
    for (std::int64_t n : n_list) {
        member_fields.push_back(evaluate_field(AnalyticFamily{family, n}, grid));
    }

    if (has_limit) {
        const AnalyticFamily limit{family, 0};
        const ScalarField limit_field = evaluate_field(limit, grid);
        report.residuals.assign(n_list.size(), std::vector<double>(sample_points.size()));
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            const AnalyticFamily member{family, n_list[i]};
            for (std::size_t j = 0; j < sample_points.size(); ++j) {
                report.residuals[i][j] =
                    std::abs(member(sample_points[j]) - limit(sample_points[j]));
            }
        }
        report.dh.assign(n_list.size(), std::vector<double>(eps_list.size()));
        for (std::size_t k = 0; k < eps_list.size(); ++k) {
            const PointSet limit_points =
                sublevel(limit_field, eps_list[k], Closedness::strict).points;
            for (std::size_t i = 0; i < n_list.size(); ++i) {
                report.dh[i][k] = hausdorff(
                    sublevel(member_fields[i], eps_list[k], Closedness::strict).points,
                    limit_points);
            }
        }
    } else {
        report.increment_pairs.reserve(n_list.size() - 1);
        report.increments.assign(n_list.size() - 1, std::vector<double>(sample_points.size()));
        for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
            report.increment_pairs.push_back({n_list[i], n_list[i + 1]});
            const AnalyticFamily low{family, n_list[i]};
            const AnalyticFamily high{family, n_list[i + 1]};
            for (std::size_t j = 0; j < sample_points.size(); ++j) {
                report.increments[i][j] =
                    std::abs(high(sample_points[j]) - low(sample_points[j]));
            }
        }
    }

    if (n_list.size() >= 2) {
        report.dh_consecutive.assign(n_list.size() - 1, std::vector<double>(eps_list.size()));
        for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
            for (std::size_t k = 0; k < eps_list.size(); ++k) {
                report.dh_consecutive[i][k] = hausdorff(
                    sublevel(member_fields[i], eps_list[k], Closedness::strict).points,
                    sublevel(member_fields[i + 1], eps_list[k], Closedness::strict).points);
            }
        }
    }

    report.verdicts.push_back({"analytic family run", true, 0.0,
                               "NON-OPERATOR: exempt from the equivalence verdict"});
    return report;
}

std::vector<cplx> seeded_sample_points(std::size_t count, double radius, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> pts(count);
    for (auto& p : pts) {
        const double r = radius * std::sqrt(rng.uniform());
        const double theta = 2.0 * 3.141592653589793238462643 * rng.uniform();
        p = {r * std::cos(theta), r * std::sin(theta)};
    }
    return pts;
}

} // namespace pspec
