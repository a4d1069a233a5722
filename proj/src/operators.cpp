#include "pspec/operators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pspec/svd.hpp"

namespace pspec {

FiniteOperator::FiniteOperator(ComplexMatrix m) : matrix(std::move(m)) {
    if (!matrix.square()) {
        throw std::invalid_argument("FiniteOperator: matrix must be square");
    }
}

ComplexMatrix shifted(const FiniteOperator& a, cplx lambda) {
    return shift_diagonal(a.matrix, lambda);
}

cplx rule_coefficient(const DiagonalRule& rule, std::int64_t position) {
    if (const auto* c = std::get_if<ConstRule>(&rule)) {
        return c->value;
    }
    if (const auto* p = std::get_if<PeriodicRule>(&rule)) {
        const auto q = static_cast<std::int64_t>(p->values.size());
        std::int64_t r = position % q;
        if (r < 0) r += q;
        return p->values[static_cast<std::size_t>(r)];
    }
    const auto& pert = std::get<PerturbedRule>(rule);
    const auto it = pert.support.find(position);
    return it == pert.support.end() ? pert.base : it->second;
}

BandOperator::BandOperator(std::int64_t bandwidth, std::map<std::int64_t, DiagonalRule> diagonals)
    : bandwidth_(bandwidth), diagonals_(std::move(diagonals)) {
    if (bandwidth_ < 0) {
        throw std::invalid_argument("BandOperator: bandwidth must be nonnegative");
    }
    for (const auto& [offset, rule] : diagonals_) {
        if (offset < -bandwidth_ || offset > bandwidth_) {
            throw std::invalid_argument("BandOperator: diagonal offset outside [-b, b]");
        }
        if (const auto* p = std::get_if<PeriodicRule>(&rule)) {
            if (p->values.empty()) {
                throw std::invalid_argument("BandOperator: periodic rule needs a nonempty period");
            }
        }
    }
}

cplx BandOperator::entry(std::int64_t i, std::int64_t j) const {
    const std::int64_t offset = j - i;
    if (offset < -bandwidth_ || offset > bandwidth_) return {0.0, 0.0};
    const auto it = diagonals_.find(offset);
    if (it == diagonals_.end()) return {0.0, 0.0};
    return rule_coefficient(it->second, i);
}

FiniteOperator finite_section(const BandOperator& b, std::int64_t n) {
    if (n < 0) {
        throw std::invalid_argument("finite_section: n must be >= 0");
    }
    const std::size_t dim = static_cast<std::size_t>(2 * n + 1);
    std::vector<cplx> e(dim * dim, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            e[i * dim + j] = b.entry(static_cast<std::int64_t>(i) - n,
                                     static_cast<std::int64_t>(j) - n);
        }
    }
    return FiniteOperator(ComplexMatrix(dim, dim, std::move(e)));
}

double window_lower_norm(const BandOperator& b, cplx lambda, std::int64_t d,
                         std::int64_t positions_lo, std::int64_t positions_hi) {
    if (d < 1) {
        throw std::invalid_argument("window_lower_norm: window width d must be >= 1");
    }
    if (positions_lo > positions_hi) {
        throw std::invalid_argument("window_lower_norm: empty position range");
    }
    const std::int64_t bw = b.bandwidth();
    const std::size_t nrows = static_cast<std::size_t>(d + 2 * bw);
    const std::size_t ncols = static_cast<std::size_t>(d);

    double best = std::numeric_limits<double>::infinity();
    std::vector<cplx> slice(nrows * ncols);
    for (std::int64_t k = positions_lo; k <= positions_hi; ++k) {
        // columns k..k+d-1 of (B - lambda*I), rows k-bw..k+d-1+bw
        for (std::size_t r = 0; r < nrows; ++r) {
            const std::int64_t row = k - bw + static_cast<std::int64_t>(r);
            for (std::size_t c = 0; c < ncols; ++c) {
                const std::int64_t colpos = k + static_cast<std::int64_t>(c);
                cplx v = b.entry(row, colpos);
                if (row == colpos) v -= lambda;
                slice[r * ncols + c] = v;
            }
        }
        best = std::min(best, sigma_min(ComplexMatrix(nrows, ncols, slice)));
    }
    return best;
}

OperatorSequence::OperatorSequence(Kind kind, std::int64_t n_min, std::int64_t n_max)
    : kind_(std::move(kind)), n_min_(n_min), n_max_(n_max) {
    if (n_min_ > n_max_) {
        throw std::invalid_argument("OperatorSequence: empty index range");
    }
}

OperatorSequence OperatorSequence::explicit_list(std::vector<ComplexMatrix> matrices,
                                                 std::int64_t n_min) {
    if (matrices.empty()) {
        throw std::invalid_argument("OperatorSequence: explicit list must be nonempty");
    }
    for (const auto& m : matrices) {
        if (!m.square()) {
            throw std::invalid_argument("OperatorSequence: explicit members must be square");
        }
    }
    const std::int64_t n_max = n_min + static_cast<std::int64_t>(matrices.size()) - 1;
    return {ExplicitKind{std::move(matrices)}, n_min, n_max};
}

OperatorSequence OperatorSequence::perturbation_decay(ComplexMatrix a, ComplexMatrix e,
                                                      std::int64_t n_min, std::int64_t n_max) {
    if (!a.square() || a.rows() != e.rows() || a.cols() != e.cols()) {
        throw std::invalid_argument("OperatorSequence: A and E must be square of equal size");
    }
    if (n_min < 1) {
        throw std::invalid_argument("OperatorSequence: perturbation decay needs n >= 1");
    }
    return {PerturbationKind{std::move(a), std::move(e)}, n_min, n_max};
}

OperatorSequence OperatorSequence::finite_sections(BandOperator band, std::int64_t n_min,
                                                   std::int64_t n_max) {
    if (n_min < 0) {
        throw std::invalid_argument("OperatorSequence: sections need n >= 0");
    }
    return {SectionsKind{std::move(band)}, n_min, n_max};
}

FiniteOperator OperatorSequence::member(std::int64_t n) const {
    if (n < n_min_ || n > n_max_) {
        throw std::out_of_range("OperatorSequence: index " + std::to_string(n) +
                                " outside [" + std::to_string(n_min_) + ", " +
                                std::to_string(n_max_) + "]");
    }
    if (const auto* ex = std::get_if<ExplicitKind>(&kind_)) {
        return FiniteOperator(ex->matrices[static_cast<std::size_t>(n - n_min_)]);
    }
    if (const auto* pd = std::get_if<PerturbationKind>(&kind_)) {
        const double inv = 1.0 / static_cast<double>(n);
        std::vector<cplx> e(pd->a.entries());
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += pd->e.entries()[k] * inv;
        return FiniteOperator(ComplexMatrix(pd->a.rows(), pd->a.cols(), std::move(e)));
    }
    return finite_section(std::get<SectionsKind>(kind_).band, n);
}

FiniteOperator sequence_member(const OperatorSequence& s, std::int64_t n) {
    return s.member(n);
}

} // namespace pspec
