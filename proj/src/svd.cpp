#include "pspec/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pspec/errors.hpp"

namespace pspec {

SvdResult svd(const ComplexMatrix& a, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("svd: tol must be positive");
    }
    // Work on the conjugate transpose when rows < cols; singular values agree.
    const bool transposed = a.rows() < a.cols();
    const ComplexMatrix b = transposed ? adjoint(a) : a;
    const std::size_t m = b.rows();
    const std::size_t n = b.cols();

    // column-major working copy
    std::vector<std::vector<cplx>> col(n, std::vector<cplx>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) col[j][i] = b(i, j);
    }

    SvdResult result;
    result.converged = (n == 1);
    for (int sweep = 1; sweep <= kSvdMaxSweeps && !result.converged; ++sweep) {
        result.sweeps = sweep;
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                cplx apq{0.0, 0.0};
                for (std::size_t i = 0; i < m; ++i) {
                    app += std::norm(col[p][i]);
                    aqq += std::norm(col[q][i]);
                    apq += std::conj(col[p][i]) * col[q][i];
                }
                const double off = std::abs(apq);
                if (off <= tol * std::sqrt(app * aqq)) continue;
                rotated = true;

                const cplx phase = apq / off;
                const double zeta = (aqq - app) / (2.0 * off);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = (c * t) * phase;
                const cplx sconj = std::conj(s);
                for (std::size_t i = 0; i < m; ++i) {
                    const cplx u = col[p][i];
                    const cplx v = col[q][i];
                    col[p][i] = c * u - sconj * v;
                    col[q][i] = s * u + c * v;
                }
            }
        }
        if (!rotated) result.converged = true;
    }

    result.singular_values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) norm2 += std::norm(col[j][i]);
        result.singular_values[j] = std::sqrt(norm2);
    }
    std::sort(result.singular_values.begin(), result.singular_values.end(),
              std::greater<double>());
    return result;
}

namespace {

const SvdResult& require_converged(const SvdResult& r, const char* who) {
    if (!r.converged) {
        throw NumericalError(std::string(who) + ": Jacobi sweep cap hit without convergence");
    }
    return r;
}

} // namespace

double sigma_min(const ComplexMatrix& a) {
    return require_converged(svd(a), "sigma_min").singular_values.back();
}

double op_norm(const ComplexMatrix& a) {
    return require_converged(svd(a), "op_norm").singular_values.front();
}

double mu(const ComplexMatrix& a) {
    if (!a.square()) {
        throw std::invalid_argument("mu: matrix must be square");
    }
    const SvdResult primal = require_converged(svd(a), "mu");
    const SvdResult dual = require_converged(svd(adjoint(a)), "mu");
    const double v1 = primal.singular_values.back();
    const double v2 = dual.singular_values.back();
    const double smax = std::max(primal.singular_values.front(), dual.singular_values.front());
    if (std::abs(v1 - v2) > 1e-10 * std::max(1.0, smax)) {
        throw NumericalError("mu: sigma_min(A) and sigma_min(A*) disagree beyond tolerance");
    }
    return std::min(v1, v2);
}

namespace {

// eigenvalue count of the Golub-Kahan tridiagonal below x (Sturm sequence)
int negcount(const std::vector<double>& offdiag, double x) {
    int count = 0;
    double q = -x;
    if (q < 0.0) ++count;
    for (double b : offdiag) {
        if (q == 0.0) q = -1e-300;
        q = -x - (b * b) / q;
        if (q < 0.0) ++count;
    }
    return count;
}

} // namespace

double sigma_min_bidiagonal(const std::vector<double>& diag,
                            const std::vector<double>& super) {
    const std::size_t n = diag.size();
    if (n == 0) throw std::invalid_argument("sigma_min_bidiagonal: empty diagonal");
    if (super.size() + 1 != n) {
        throw std::invalid_argument("sigma_min_bidiagonal: superdiagonal length must be n-1");
    }
    if (n == 1) return std::abs(diag[0]);

    // Perfect-shuffle form: tridiagonal, zero diagonal, off-diagonals
    // d0, e0, d1, e1, ..., e_{n-2}, d_{n-1}; eigenvalues are +-sigma_i.
    std::vector<double> off(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        off[2 * i] = std::abs(diag[i]);
        if (i + 1 < n) off[2 * i + 1] = std::abs(super[i]);
    }

    double hi = 0.0;
    for (std::size_t k = 0; k < off.size(); ++k) {
        const double row = off[k] + (k > 0 ? off[k - 1] : 0.0);
        hi = std::max(hi, row);
    }
    if (hi == 0.0) return 0.0;
    hi *= 1.0 + 1e-14;

    // sigma_min is the smallest x >= 0 whose count exceeds the n negative eigenvalues
    const int nn = static_cast<int>(n);
    double lo = 0.0;
    for (int it = 0; it < 160 && hi - lo > 1e-15 * (hi + lo) + 5e-324; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (negcount(off, mid) > nn) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

double pnorm(const std::vector<cplx>& v, int p) {
    double r = 0.0;
    switch (p) {
        case 1:
            for (const cplx& z : v) r += std::abs(z);
            return r;
        case 2:
            for (const cplx& z : v) r += std::norm(z);
            return std::sqrt(r);
        case 0: // sup norm
            for (const cplx& z : v) r = std::max(r, std::abs(z));
            return r;
        default:
            throw std::invalid_argument("lower_norm_sampled: p must be 1, 2 or 0 (sup)");
    }
}

} // namespace

double lower_norm_sampled(const ComplexMatrix& a, int p, int trials, std::uint64_t seed) {
    if (p != 0 && p != 1 && p != 2) {
        throw std::invalid_argument("lower_norm_sampled: p must be 1, 2 or 0 (sup)");
    }
    if (trials < 1) {
        throw std::invalid_argument("lower_norm_sampled: trials must be >= 1");
    }
    if (a.rows() > 8 || a.cols() > 8) {
        throw std::invalid_argument("lower_norm_sampled: oracle-only scale, dims <= 8");
    }
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Rng rng(seed);
    std::vector<cplx> x(n), y(m);
    double best = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        for (std::size_t j = 0; j < n; ++j) x[j] = rng.cgauss();
        const double nx = pnorm(x, p);
        if (nx == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) x[j] /= nx;
        for (std::size_t i = 0; i < m; ++i) {
            cplx acc{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * x[j];
            y[i] = acc;
        }
        best = std::min(best, pnorm(y, p));
    }
    return best;
}

} // namespace pspec
