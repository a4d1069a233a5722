#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pspec/complex_matrix.hpp"
#include "pspec/operators.hpp"

namespace pspec {

// Rectangular grid of nodes in C. Node (ix, iy) sits at
//   center + (-half_width + ix * hx) + i * (-half_height + iy * hy),
// ix in [0, nx), iy in [0, ny). Row-major node index = iy * nx + ix.
struct GridSpec {
    cplx center;
    double half_width = 0.0;
    double half_height = 0.0;
    std::size_t nx = 0;
    std::size_t ny = 0;

    GridSpec(cplx c, double hw, double hh, std::size_t nx_, std::size_t ny_);

    double hx() const { return 2.0 * half_width / static_cast<double>(nx - 1); }
    double hy() const { return 2.0 * half_height / static_cast<double>(ny - 1); }
    // cell diagonal
    double h() const;

    std::size_t node_count() const { return nx * ny; }
    cplx node(std::size_t ix, std::size_t iy) const;

    // square grid centered at 0 with the given half-extent, nodes_per_side^2 nodes
    static GridSpec square(double half_extent, std::size_t nodes_per_side);

    bool operator==(const GridSpec&) const = default;
};

// sp_eps(A) is contained in the disk of radius op_norm(A) + eps
double bounding_radius(const FiniteOperator& a, double eps);

// Sampled nonnegative scalar field on a grid.
struct ScalarField {
    GridSpec grid;
    std::vector<double> values; // node-indexed, size nx*ny
    std::string source;

    ScalarField(GridSpec g, std::vector<double> v, std::string src);

    double value(std::size_t ix, std::size_t iy) const {
        return values[iy * grid.nx + ix];
    }
};

// Closed-form example families. Parameter n >= 1 selects a member; n = 0
// selects the pointwise limit where the family has one (ex2, ex3).
enum class FamilyId { ex2, ex3, ex5 };

struct AnalyticFamily {
    FamilyId id;
    std::int64_t n; // member index; 0 = limit function

    double operator()(cplx lambda) const;
    std::string tag() const;
};

AnalyticFamily make_family(const std::string& id, std::int64_t n);

// f(lambda) = mu(A - lambda*I) at every node. Data-parallel over rows;
// a node where the SVD fails aborts the evaluation, naming the node.
ScalarField evaluate_field(const FiniteOperator& a, const GridSpec& grid);
ScalarField evaluate_field(const AnalyticFamily& family, const GridSpec& grid);

enum class Closedness { strict, closed };

// Sublevel region of a sampled field: mask + node point set + level curves.
struct RegionSample {
    GridSpec grid;
    std::vector<std::uint8_t> mask; // node-indexed
    std::vector<cplx> points;       // mask nodes, row-major order
    std::vector<std::vector<cplx>> boundary;
    double level = 0.0;
    Closedness closedness = Closedness::strict;
};

RegionSample sublevel(const ScalarField& field, double eps, Closedness closedness);

// Level-eps curves of the field by marching squares with linear edge
// interpolation; saddle cells are resolved by the cell-center average.
std::vector<std::vector<cplx>> boundary_polyline(const ScalarField& field, double eps);

} // namespace pspec
