#include "pspec/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pspec {

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }
    if (rows > ComplexMatrix::kMaxDim || cols > ComplexMatrix::kMaxDim) {
        throw std::invalid_argument("ComplexMatrix: dimension exceeds cap of " +
                                    std::to_string(ComplexMatrix::kMaxDim));
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_dims(rows, cols);
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("ComplexMatrix: entry count does not match dimensions");
    }
    for (const cplx& z : entries_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
    }
}

ComplexMatrix identity(std::size_t n) {
    std::vector<cplx> e(n * n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return {n, n, std::move(e)};
}

ComplexMatrix zero_matrix(std::size_t rows, std::size_t cols) {
    return {rows, cols, std::vector<cplx>(rows * cols, cplx{0.0, 0.0})};
}

ComplexMatrix diagonal_matrix(const std::vector<cplx>& d) {
    const std::size_t n = d.size();
    std::vector<cplx> e(n * n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
    return {n, n, std::move(e)};
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    std::vector<cplx> e(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            e[j * a.rows() + i] = std::conj(a(i, j));
        }
    }
    return {a.cols(), a.rows(), std::move(e)};
}

namespace {

void check_same_dims(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch");
    }
}

} // namespace

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dims(a, b, "add");
    std::vector<cplx> e(a.entries());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.entries()[k];
    return {a.rows(), a.cols(), std::move(e)};
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dims(a, b, "subtract");
    std::vector<cplx> e(a.entries());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] -= b.entries()[k];
    return {a.rows(), a.cols(), std::move(e)};
}

ComplexMatrix scale(const ComplexMatrix& a, cplx factor) {
    std::vector<cplx> e(a.entries());
    for (cplx& z : e) z *= factor;
    return {a.rows(), a.cols(), std::move(e)};
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("multiply: inner dimension mismatch");
    }
    std::vector<cplx> e(a.rows() * b.cols(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                e[i * b.cols() + j] += aik * b(k, j);
            }
        }
    }
    return {a.rows(), b.cols(), std::move(e)};
}

ComplexMatrix shift_diagonal(const ComplexMatrix& a, cplx lambda) {
    if (!a.square()) {
        throw std::invalid_argument("shift_diagonal: matrix must be square");
    }
    std::vector<cplx> e(a.entries());
    for (std::size_t i = 0; i < a.rows(); ++i) e[i * a.cols() + i] -= lambda;
    return {a.rows(), a.cols(), std::move(e)};
}

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    std::vector<cplx> e(rows * cols);
    for (cplx& z : e) z = rng.cgauss();
    return {rows, cols, std::move(e)};
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
    // Householder QR of a Gaussian matrix; Q is accumulated explicitly.
    std::vector<cplx> a = random_matrix(n, n, rng).entries();
    std::vector<cplx> q = identity(n).entries();
    std::vector<cplx> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        double norm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) norm2 += std::norm(a[i * n + k]);
        double norm = std::sqrt(norm2);
        if (norm == 0.0) continue;
        cplx akk = a[k * n + k];
        double akk_abs = std::abs(akk);
        cplx phase = akk_abs > 0.0 ? akk / akk_abs : cplx{1.0, 0.0};
        cplx alpha = -phase * norm;
        // v = x - alpha*e_k, normalized
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = a[i * n + k];
            if (i == k) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        double vnorm = std::sqrt(vnorm2);
        for (std::size_t i = k; i < n; ++i) v[i] /= vnorm;
        // apply H = I - 2 v v* on the left of A and on the right of Q (accumulating Q = H_1 ... H_n)
        for (std::size_t j = k; j < n; ++j) {
            cplx dot{0.0, 0.0};
            for (std::size_t i = k; i < n; ++i) dot += std::conj(v[i]) * a[i * n + j];
            dot *= 2.0;
            for (std::size_t i = k; i < n; ++i) a[i * n + j] -= dot * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            cplx dot{0.0, 0.0};
            for (std::size_t j = k; j < n; ++j) dot += q[i * n + j] * v[j];
            dot *= 2.0;
            for (std::size_t j = k; j < n; ++j) q[i * n + j] -= dot * std::conj(v[j]);
        }
    }
    return {n, n, std::move(q)};
}

} // namespace pspec
