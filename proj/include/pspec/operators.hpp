#pragma once

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "pspec/complex_matrix.hpp"

namespace pspec {

// A concrete finite operator: a square complex matrix.
struct FiniteOperator {
    ComplexMatrix matrix;

    explicit FiniteOperator(ComplexMatrix m);
    std::size_t dim() const { return matrix.rows(); }
};

// A - lambda*I
ComplexMatrix shifted(const FiniteOperator& a, cplx lambda);

// Coefficient rule of one diagonal of a band operator, indexed by the row
// position in Z. Periodic rules use phase 0 at position 0 (mathematical mod).
// Perturbed rules take the constant base except at the listed positions,
// where the stored value replaces the base.
struct ConstRule {
    cplx value;
};
struct PeriodicRule {
    std::vector<cplx> values; // period length = values.size()
};
struct PerturbedRule {
    cplx base;
    std::map<std::int64_t, cplx> support;
};
using DiagonalRule = std::variant<ConstRule, PeriodicRule, PerturbedRule>;

cplx rule_coefficient(const DiagonalRule& rule, std::int64_t position);

// Band operator on l^2(Z): finitely many diagonals at offsets in [-b, b],
// each given by a coefficient rule over row positions.
class BandOperator {
public:
    BandOperator(std::int64_t bandwidth, std::map<std::int64_t, DiagonalRule> diagonals);

    std::int64_t bandwidth() const { return bandwidth_; }
    const std::map<std::int64_t, DiagonalRule>& diagonals() const { return diagonals_; }

    // entry at row i, column j of the bi-infinite matrix
    cplx entry(std::int64_t i, std::int64_t j) const;

private:
    std::int64_t bandwidth_;
    std::map<std::int64_t, DiagonalRule> diagonals_;
};

// (2n+1) x (2n+1) truncation to index window [-n, n]
FiniteOperator finite_section(const BandOperator& b, std::int64_t n);

// min over window starts k in [positions_lo, positions_hi] of sigma_min of
// the columns k..k+d-1 of (B - lambda*I) restricted to rows k-b..k+d-1+b.
// An upper bound on nu(B - lambda*I), nonincreasing as d grows.
double window_lower_norm(const BandOperator& b, cplx lambda, std::int64_t d,
                         std::int64_t positions_lo, std::int64_t positions_hi);

// Rule-generated family n -> A_n over an index range.
class OperatorSequence {
public:
    // explicit list: member n is matrices[n - n_min]
    static OperatorSequence explicit_list(std::vector<ComplexMatrix> matrices,
                                          std::int64_t n_min = 1);
    // A_n = A + E/n
    static OperatorSequence perturbation_decay(ComplexMatrix a, ComplexMatrix e,
                                               std::int64_t n_min, std::int64_t n_max);
    // A_n = finite_section(band, n)
    static OperatorSequence finite_sections(BandOperator band, std::int64_t n_min,
                                            std::int64_t n_max);

    std::int64_t n_min() const { return n_min_; }
    std::int64_t n_max() const { return n_max_; }

    FiniteOperator member(std::int64_t n) const;

private:
    struct ExplicitKind {
        std::vector<ComplexMatrix> matrices;
    };
    struct PerturbationKind {
        ComplexMatrix a;
        ComplexMatrix e;
    };
    struct SectionsKind {
        BandOperator band;
    };
    using Kind = std::variant<ExplicitKind, PerturbationKind, SectionsKind>;

    OperatorSequence(Kind kind, std::int64_t n_min, std::int64_t n_max);

    Kind kind_;
    std::int64_t n_min_;
    std::int64_t n_max_;
};

FiniteOperator sequence_member(const OperatorSequence& s, std::int64_t n);

} // namespace pspec
