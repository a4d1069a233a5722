#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "pspec/rng.hpp"

namespace pspec {

using cplx = std::complex<double>;

// Dense complex matrix, row-major, immutable after construction.
// Entries must be finite; dimensions are capped at 2048 per side.
class ComplexMatrix {
public:
    static constexpr std::size_t kMaxDim = 2048;

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    const cplx& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }
    const std::vector<cplx>& entries() const { return entries_; }

    bool operator==(const ComplexMatrix& other) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<cplx> entries_;
};

ComplexMatrix identity(std::size_t n);
ComplexMatrix zero_matrix(std::size_t rows, std::size_t cols);
ComplexMatrix diagonal_matrix(const std::vector<cplx>& d);

// result[i,j] = conj(a[j,i])
ComplexMatrix adjoint(const ComplexMatrix& a);

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, cplx factor);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

// A - lambda*I for square A
ComplexMatrix shift_diagonal(const ComplexMatrix& a, cplx lambda);

// Entries drawn as independent complex standard normals, row-major draw order.
ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);

// Unitary Q from the Householder QR of a random complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

} // namespace pspec
