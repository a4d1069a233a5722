#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "pspec/complex_matrix.hpp"
#include "pspec/errors.hpp"
#include "pspec/svd.hpp"

using namespace pspec;

namespace {

ComplexMatrix from_rows(std::size_t rows, std::size_t cols, std::vector<cplx> e) {
    return {rows, cols, std::move(e)};
}

} // namespace

TEST_CASE("adjoint: identity, nilpotent, conjugation") {
    CHECK(adjoint(identity(3)) == identity(3));

    const ComplexMatrix j = from_rows(2, 2, {{0, 0}, {1, 0}, {0, 0}, {0, 0}});
    const ComplexMatrix jt = from_rows(2, 2, {{0, 0}, {0, 0}, {1, 0}, {0, 0}});
    CHECK(adjoint(j) == jt);

    const ComplexMatrix i1 = from_rows(1, 1, {{0, 1}});
    CHECK(adjoint(i1)(0, 0) == cplx{0, -1});

    // dims swap
    const ComplexMatrix rect = zero_matrix(2, 3);
    CHECK(adjoint(rect).rows() == 3);
    CHECK(adjoint(rect).cols() == 2);
}

TEST_CASE("matrix invariants: finiteness, dimensions") {
    CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<cplx>(3)), std::invalid_argument);
    CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx{std::nan(""), 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx{HUGE_VAL, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(zero_matrix(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(zero_matrix(2049, 2), std::invalid_argument);
}

TEST_CASE("svd: identity and diagonal magnitudes") {
    const SvdResult id = svd(identity(4));
    CHECK(id.converged);
    REQUIRE(id.singular_values.size() == 4);
    for (double s : id.singular_values) CHECK(s == doctest::Approx(1.0).epsilon(1e-14));

    // diagonal entries of mixed phase; singular values are the magnitudes
    const ComplexMatrix d = diagonal_matrix({cplx{0.0, 3.0}, cplx{-2.0, 0.0}, cplx{1.0, 0.0}});
    const SvdResult r = svd(d);
    CHECK(r.converged);
    CHECK(r.singular_values[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(r.singular_values[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.singular_values[2] == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(svd(identity(2), 0.0), std::invalid_argument);
}

TEST_CASE("svd: random 5x5 matches the inverse-power-iteration oracle to 1e-10") {
    Rng rng(42);
    const ComplexMatrix a = random_matrix(5, 5, rng);
    const SvdResult r = svd(a);
    REQUIRE(r.converged);
    const double smin_oracle = testing::oracle_sigma_min(a);
    const double smax_oracle = testing::oracle_sigma_max(a);
    CHECK(std::abs(r.singular_values.back() - smin_oracle) <= 1e-10 * smin_oracle);
    CHECK(std::abs(r.singular_values.front() - smax_oracle) <= 1e-10 * smax_oracle);
}

TEST_CASE("svd: result shape on rectangular inputs") {
    Rng rng(7);
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{6, 3}, {3, 6}, {4, 4}}) {
        const SvdResult r = svd(random_matrix(m, n, rng));
        CHECK(r.converged);
        REQUIRE(r.singular_values.size() == std::min(m, n));
        for (std::size_t k = 0; k + 1 < r.singular_values.size(); ++k) {
            CHECK(r.singular_values[k] >= r.singular_values[k + 1]);
        }
        CHECK(r.singular_values.back() >= 0.0);
    }
}

TEST_CASE("sigma_min: nilpotent, shifted identity, oracle match") {
    const ComplexMatrix j = from_rows(2, 2, {{0, 0}, {1, 0}, {0, 0}, {0, 0}});
    CHECK(sigma_min(j) <= 1e-15);

    const ComplexMatrix shifted_id = shift_diagonal(identity(5), cplx{0.5, 0.0});
    CHECK(sigma_min(shifted_id) == doctest::Approx(0.5).epsilon(1e-14));

    Rng rng(2024);
    const ComplexMatrix a = random_matrix(6, 6, rng);
    const double oracle = testing::oracle_sigma_min(a);
    CHECK(std::abs(sigma_min(a) - oracle) <= 1e-10 * std::max(1.0, oracle));
}

TEST_CASE("op_norm: identity, scaling, Jordan cell") {
    CHECK(op_norm(identity(3)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(op_norm(scale(identity(3), {2.0, 0.0})) == doctest::Approx(2.0).epsilon(1e-14));
    const ComplexMatrix j = from_rows(2, 2, {{0, 0}, {1, 0}, {0, 0}, {0, 0}});
    CHECK(op_norm(j) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("mu: diagonal, nilpotent, square identity sigma_min(A)=sigma_min(A*)") {
    CHECK(mu(diagonal_matrix({{1, 0}, {2, 0}})) == doctest::Approx(1.0).epsilon(1e-14));
    const ComplexMatrix j = from_rows(2, 2, {{0, 0}, {1, 0}, {0, 0}, {0, 0}});
    CHECK(mu(j) <= 1e-15);

    Rng rng(5);
    const ComplexMatrix a = random_matrix(5, 5, rng);
    CHECK(std::abs(mu(a) - sigma_min(a)) <= 1e-10);

    CHECK_THROWS_AS(mu(zero_matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("lower_norm_sampled: isometry, nilpotent bound, svd agreement") {
    for (int p : {1, 2, 0}) {
        CHECK(lower_norm_sampled(identity(2), p, 100, 9) == doctest::Approx(1.0).epsilon(1e-12));
    }

    const ComplexMatrix j = from_rows(2, 2, {{0, 0}, {1, 0}, {0, 0}, {0, 0}});
    CHECK(lower_norm_sampled(j, 2, 100000, 11) <= 0.01); // true value 0

    Rng rng(31);
    const ComplexMatrix a = random_matrix(3, 3, rng);
    const double smin = sigma_min(a);
    const double sampled = lower_norm_sampled(a, 2, 100000, 13);
    CHECK(std::abs(sampled - smin) <= 0.05);
    CHECK(sampled >= smin - 1e-12); // sampled infimum is an upper bound

    CHECK_THROWS_AS(lower_norm_sampled(identity(2), 3, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(lower_norm_sampled(identity(2), 2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(lower_norm_sampled(identity(9), 2, 10, 1), std::invalid_argument);
}

TEST_CASE("lipschitz bound over 1000 random pairs") {
    Rng rng(1001);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next() % 8);
        const ComplexMatrix a = random_matrix(n, n, rng);
        const ComplexMatrix b = random_matrix(n, n, rng);
        const double gap = op_norm(subtract(a, b));
        CHECK(std::abs(sigma_min(a) - sigma_min(b)) <= gap + 1e-10);
        CHECK(std::abs(mu(a) - mu(b)) <= gap + 1e-10);
    }
}

TEST_CASE("sigma_min equals sigma_min of the adjoint for square matrices") {
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next() % 8);
        const ComplexMatrix a = random_matrix(n, n, rng);
        CHECK(std::abs(sigma_min(a) - sigma_min(adjoint(a))) <= 1e-10);
    }
}

TEST_CASE("singular values invariant under random unitary factors") {
    Rng rng(88);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % 6);
        const ComplexMatrix a = random_matrix(n, n, rng);
        const ComplexMatrix u = random_unitary(n, rng);
        const SvdResult plain = svd(a);
        const SvdResult rotated = svd(multiply(u, a));
        REQUIRE(plain.converged);
        REQUIRE(rotated.converged);
        for (std::size_t k = 0; k < plain.singular_values.size(); ++k) {
            CHECK(std::abs(plain.singular_values[k] - rotated.singular_values[k]) <= 1e-9);
        }
    }
}

TEST_CASE("bidiagonal bisection agrees with Jacobi") {
    Rng rng(404);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next() % 12);
        std::vector<double> diag(n), super(n > 1 ? n - 1 : 0);
        std::vector<cplx> entries(n * n, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i) {
            const cplx z = rng.cgauss();
            diag[i] = std::abs(z);
            entries[i * n + i] = z;
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const cplx z = rng.cgauss();
            super[i] = std::abs(z);
            entries[i * n + i + 1] = z;
        }
        const ComplexMatrix b(n, n, std::move(entries));
        const double via_jacobi = sigma_min(b);
        const double via_bisection = sigma_min_bidiagonal(diag, super);
        CHECK(std::abs(via_jacobi - via_bisection) <= 1e-10 * std::max(1.0, op_norm(b)));
    }
}

TEST_CASE("deterministic generator reproduces draws bit for bit") {
    Rng a(123), b(123);
    for (int k = 0; k < 100; ++k) CHECK(a.next() == b.next());
    Rng c(123), d(124);
    bool differs = false;
    for (int k = 0; k < 10; ++k) differs = differs || (c.next() != d.next());
    CHECK(differs);
}
