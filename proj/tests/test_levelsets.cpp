#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pspec/levelsets.hpp"
#include "pspec/setgeom.hpp"
#include "pspec/svd.hpp"

using namespace pspec;

TEST_CASE("grid spec: spacing, node layout, validation") {
    const GridSpec g({1.0, 1.0}, 2.0, 1.0, 5, 3);
    CHECK(g.hx() == doctest::Approx(1.0));
    CHECK(g.hy() == doctest::Approx(1.0));
    CHECK(g.h() == doctest::Approx(std::sqrt(2.0)));
    CHECK(g.node(0, 0) == cplx{-1.0, 0.0});
    CHECK(g.node(4, 2) == cplx{3.0, 2.0});
    CHECK_THROWS_AS(GridSpec({0, 0}, 0.0, 1.0, 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec({0, 0}, 1.0, 1.0, 1, 5), std::invalid_argument);
}

TEST_CASE("bounding_radius: identity, zero, Jordan cell") {
    CHECK(bounding_radius(FiniteOperator(identity(3)), 0.5) == doctest::Approx(1.5));
    CHECK(bounding_radius(FiniteOperator(zero_matrix(2, 2)), 1.0) == doctest::Approx(1.0));
    const FiniteOperator j(ComplexMatrix(2, 2, {{0, 0}, {1, 0}, {0, 0}, {0, 0}}));
    CHECK(bounding_radius(j, 0.1) == doctest::Approx(1.1));
    CHECK_THROWS_AS(bounding_radius(j, 0.0), std::invalid_argument);
}

TEST_CASE("evaluate_field: diagonal operator equals distance to the spectrum") {
    const FiniteOperator d(diagonal_matrix({{0, 0}, {2, 0}}));
    const GridSpec grid({1.0, 0.0}, 2.0, 2.0, 21, 21);
    const ScalarField field = evaluate_field(d, grid);
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            const cplx z = grid.node(ix, iy);
            const double exact = std::min(std::abs(z), std::abs(z - cplx{2, 0}));
            CHECK(std::abs(field.value(ix, iy) - exact) <= 1e-10);
        }
    }
}

TEST_CASE("evaluate_field agrees between the bidiagonal path and plain Jacobi") {
    // a dense non-bidiagonal copy of a bidiagonal matrix forces the generic path
    Rng rng(91);
    const std::size_t n = 6;
    std::vector<cplx> entries(n * n, cplx{0, 0});
    for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = rng.cgauss();
    for (std::size_t i = 0; i + 1 < n; ++i) entries[i * n + i + 1] = rng.cgauss();
    const ComplexMatrix bidiag(n, n, entries);
    entries[n * n - 2] = cplx{1e-300, 0.0}; // breaks the structure detection only
    const ComplexMatrix dense(n, n, entries);

    const GridSpec grid = GridSpec::square(2.0, 17);
    const ScalarField fast = evaluate_field(FiniteOperator(bidiag), grid);
    const ScalarField plain = evaluate_field(FiniteOperator(dense), grid);
    for (std::size_t k = 0; k < fast.values.size(); ++k) {
        CHECK(std::abs(fast.values[k] - plain.values[k]) <= 1e-10);
    }
}

TEST_CASE("analytic families: closed-form values") {
    const AnalyticFamily g2{FamilyId::ex2, 1};
    CHECK(g2(cplx{3, 4}) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(make_family("ex2", 2)(cplx{3, 4}) == doctest::Approx(2.5).epsilon(1e-14));

    const AnalyticFamily g5{FamilyId::ex5, 2};
    CHECK(g5(cplx{0.25, 0}) == doctest::Approx(1.0).epsilon(1e-14)); // |sin(2 pi 0.25)|
    CHECK(g5(cplx{1.5, 0}) == doctest::Approx(0.5).epsilon(1e-14));  // x - 1 branch

    // ex3 members interpolate h towards h1 = x^2/4
    const AnalyticFamily g3{FamilyId::ex3, 1};
    CHECK(g3(cplx{1.0, 0}) == doctest::Approx(0.25).epsilon(1e-14));
    const AnalyticFamily g3lim{FamilyId::ex3, 0};
    CHECK(g3lim(cplx{1.5, 0}) == doctest::Approx(1.0).epsilon(1e-14)); // locally constant band

    CHECK_THROWS_AS(make_family("ex5", 0), std::invalid_argument);
    CHECK_THROWS_AS(make_family("nope", 1), std::invalid_argument);
    CHECK_THROWS_AS(make_family("ex2", -1), std::invalid_argument);
}

TEST_CASE("sublevel: diagonal operator mask equals the two-disk predicate") {
    const FiniteOperator d(diagonal_matrix({{0, 0}, {2, 0}}));
    const GridSpec grid({1.0, 0.0}, 2.0, 2.0, 40, 40); // spacing avoids level ties
    const ScalarField field = evaluate_field(d, grid);
    const RegionSample region = sublevel(field, 0.5, Closedness::strict);
    std::size_t expected_points = 0;
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            const cplx z = grid.node(ix, iy);
            const bool inside = std::min(std::abs(z), std::abs(z - cplx{2, 0})) < 0.5;
            CHECK(static_cast<bool>(region.mask[iy * grid.nx + ix]) == inside);
            if (inside) ++expected_points;
        }
    }
    CHECK(region.points.size() == expected_points);
    CHECK(expected_points > 0);
    CHECK(testing::flood_fill_components(region.mask, grid.nx, grid.ny) == 2);

    CHECK_THROWS_AS(sublevel(field, 0.0, Closedness::strict), std::invalid_argument);
}

TEST_CASE("sublevel of the ex3 family at level 1: D for the limit, 2D for members") {
    const GridSpec grid = GridSpec::square(2.5, 101);
    const ScalarField g = evaluate_field(AnalyticFamily{FamilyId::ex3, 0}, grid);
    const ScalarField g7 = evaluate_field(AnalyticFamily{FamilyId::ex3, 7}, grid);
    const RegionSample limit_region = sublevel(g, 1.0, Closedness::strict);
    const RegionSample member_region = sublevel(g7, 1.0, Closedness::strict);
    CHECK(limit_region.points == grid_sample(SymbolicRegion{Disk{{0, 0}, 1.0}}, grid));
    CHECK(member_region.points == grid_sample(SymbolicRegion{Disk{{0, 0}, 2.0}}, grid));
}

TEST_CASE("ex2 sublevel equals n*eps*D exactly on the grid") {
    const double eps = 0.37;
    const GridSpec grid = GridSpec::square(2.5, 101);
    for (std::int64_t n : {1, 2, 3}) {
        const ScalarField field = evaluate_field(AnalyticFamily{FamilyId::ex2, n}, grid);
        const RegionSample region = sublevel(field, eps, Closedness::strict);
        CHECK(region.points ==
              grid_sample(SymbolicRegion{Disk{{0, 0}, static_cast<double>(n) * eps}}, grid));
    }
}

TEST_CASE("boundary_polyline: circle from the scalar operator [0]") {
    const FiniteOperator scalar_zero(zero_matrix(1, 1));
    const GridSpec grid = GridSpec::square(2.0, 81);
    const ScalarField field = evaluate_field(scalar_zero, grid); // f = |lambda|
    const auto loops = boundary_polyline(field, 1.0);
    REQUIRE(loops.size() == 1);
    const auto& loop = loops.front();
    CHECK(loop.size() > 20);
    CHECK(loop.front() == loop.back()); // closed
    for (const cplx v : loop) {
        CHECK(std::abs(std::abs(v) - 1.0) <= grid.h());
    }
}

TEST_CASE("boundary_polyline: constant field below the level has no boundary") {
    const GridSpec grid = GridSpec::square(1.0, 9);
    const ScalarField flat(grid, std::vector<double>(81, 0.0), "flat");
    CHECK(boundary_polyline(flat, 1.0).empty());
    const RegionSample region = sublevel(flat, 1.0, Closedness::strict);
    CHECK(region.points.size() == 81);
    CHECK(region.boundary.empty());
}

TEST_CASE("boundary_polyline: two loops around a two-point spectrum") {
    const FiniteOperator d(diagonal_matrix({{0, 0}, {2, 0}}));
    const GridSpec grid({1.0, 0.0}, 2.0, 2.0, 64, 64);
    const ScalarField field = evaluate_field(d, grid);
    const RegionSample region = sublevel(field, 0.5, Closedness::strict);
    const int components = testing::flood_fill_components(region.mask, grid.nx, grid.ny);
    CHECK(components == 2);
    CHECK(region.boundary.size() == static_cast<std::size_t>(components));
    for (const auto& loop : region.boundary) CHECK(loop.front() == loop.back());
}

TEST_CASE("mask monotonicity in eps and strict vs closed") {
    Rng rng(55);
    const FiniteOperator a(random_matrix(4, 4, rng));
    const GridSpec grid = GridSpec::square(4.0, 33);
    const ScalarField field = evaluate_field(a, grid);
    const RegionSample r1 = sublevel(field, 0.4, Closedness::strict);
    const RegionSample r2 = sublevel(field, 0.9, Closedness::strict);
    const RegionSample r1c = sublevel(field, 0.4, Closedness::closed);
    for (std::size_t k = 0; k < field.values.size(); ++k) {
        if (r1.mask[k]) CHECK(r2.mask[k]);
        if (r1.mask[k]) CHECK(r1c.mask[k]);
    }
}

TEST_CASE("region points stay inside the bounding disk") {
    Rng rng(56);
    const FiniteOperator a(random_matrix(5, 5, rng));
    const double eps = 0.7;
    const double r = bounding_radius(a, eps);
    const GridSpec grid = GridSpec::square(r + 0.5, 65);
    const ScalarField field = evaluate_field(a, grid);
    const RegionSample region = sublevel(field, eps, Closedness::strict);
    CHECK(!region.points.empty());
    for (const cplx z : region.points) {
        CHECK(std::abs(z) <= r + grid.h());
    }
}

TEST_CASE("field is grid-Lipschitz with constant 1") {
    Rng rng(57);
    const FiniteOperator a(random_matrix(4, 4, rng));
    const GridSpec grid = GridSpec::square(3.5, 33);
    const ScalarField field = evaluate_field(a, grid);
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            if (ix + 1 < grid.nx) {
                CHECK(std::abs(field.value(ix + 1, iy) - field.value(ix, iy)) <=
                      grid.hx() + 2e-10);
            }
            if (iy + 1 < grid.ny) {
                CHECK(std::abs(field.value(ix, iy + 1) - field.value(ix, iy)) <=
                      grid.hy() + 2e-10);
            }
        }
    }
}

TEST_CASE("closed and strict regions differ only near the boundary under refinement") {
    // f = |lambda - 0.5| hits the level exactly on grid nodes by construction
    const FiniteOperator a(diagonal_matrix({{0.5, 0.0}}));
    for (std::size_t nodes : {9, 17, 33}) {
        const GridSpec grid = GridSpec::square(1.0, nodes);
        const ScalarField field = evaluate_field(a, grid);
        const RegionSample strict = sublevel(field, 0.25, Closedness::strict);
        const RegionSample closed = sublevel(field, 0.25, Closedness::closed);
        for (std::size_t iy = 0; iy < grid.ny; ++iy) {
            for (std::size_t ix = 0; ix < grid.nx; ++ix) {
                const std::size_t k = iy * grid.nx + ix;
                if (closed.mask[k] && !strict.mask[k]) {
                    const cplx z = grid.node(ix, iy);
                    double nearest = std::numeric_limits<double>::infinity();
                    for (const auto& loop : strict.boundary) {
                        for (const cplx v : loop) nearest = std::min(nearest, std::abs(z - v));
                    }
                    CHECK(nearest <= grid.h());
                }
            }
        }
    }
}

TEST_CASE("scalar field validation") {
    const GridSpec grid = GridSpec::square(1.0, 3);
    CHECK_THROWS_AS(ScalarField(grid, std::vector<double>(4, 0.0), "bad size"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ScalarField(grid, std::vector<double>(9, -1.0), "negative"),
                    std::invalid_argument);
}
