#pragma once

#include <vector>

#include "pspec/complex_matrix.hpp"
#include "pspec/rng.hpp"

namespace pspec {

struct SvdResult {
    std::vector<double> singular_values; // nonincreasing, >= 0, length min(rows, cols)
    bool converged = false;
    int sweeps = 0;
};

inline constexpr double kSvdDefaultTol = 1e-12;
inline constexpr int kSvdMaxSweeps = 60;

// One-sided Jacobi with cyclic sweeps. Converged when every column pair (p,q)
// of the working matrix satisfies |g_pq| <= tol * sqrt(g_pp * g_qq); sweep cap 60.
// Small singular values are reported as computed, never flushed to zero.
SvdResult svd(const ComplexMatrix& a, double tol = kSvdDefaultTol);

// smallest singular value; throws NumericalError if the sweep cap is hit
double sigma_min(const ComplexMatrix& a);

// largest singular value
double op_norm(const ComplexMatrix& a);

// min{ sigma_min(A), sigma_min(A*) } for square A. Both routes are computed
// and must agree within 1e-10 * max(1, sigma_max); disagreement throws.
double mu(const ComplexMatrix& a);

// sigma_min of an upper-bidiagonal matrix given by |diagonal| and
// |superdiagonal| magnitudes, via Sturm bisection on the Golub-Kahan
// tridiagonal form. Singular values of a complex bidiagonal matrix depend
// only on entry magnitudes (diagonal unitary scaling on both sides).
double sigma_min_bidiagonal(const std::vector<double>& diag,
                            const std::vector<double>& super);

// Monte-Carlo upper bound on nu_p(A) = inf{ ||Ax||_p : ||x||_p = 1 } for
// p in {1, 2, inf} (pass p = 0 for the sup norm). Oracle-only scale: dims <= 8.
double lower_norm_sampled(const ComplexMatrix& a, int p, int trials, std::uint64_t seed);

} // namespace pspec
