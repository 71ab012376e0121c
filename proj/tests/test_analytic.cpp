#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "ptspec/analytic.hpp"
#include "ptspec/errors.hpp"
#include "ptspec/gridfn.hpp"

using namespace ptspec;

namespace {

// second derivative by central differences, h chosen for ~1e-8 accuracy
template <typename F>
cplx d2(F f, double x, double h = 1e-4) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

constexpr cplx I{0.0, 1.0};

}  // namespace

TEST_CASE("fundamental pair Wronskian is conserved") {
    // The pair is oriented so that u v' - u' v equals +2ik(k^2-1).
    const double k = 3.0;
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> xs(-kPi, kPi);
    for (int j = 0; j < 25; ++j) {
        double x = xs(rng);
        cplx w = analytic::psi2(x, k) * analytic::psi1_prime(x, k) -
                 analytic::psi2_prime(x, k) * analytic::psi1(x, k);
        CHECK(std::abs(w - cplx(0.0, 48.0)) < 1e-10);
    }
}

TEST_CASE("k=1 pair has Wronskian 4") {
    std::mt19937 rng(8u);
    std::uniform_real_distribution<double> xs(-kPi, kPi);
    for (int j = 0; j < 25; ++j) {
        double x = xs(rng);
        cplx w = analytic::psi1_k1(x) * analytic::psi2_k1_prime(x) -
                 analytic::psi1_k1_prime(x) * analytic::psi2_k1(x);
        CHECK(std::abs(w - cplx(4.0, 0.0)) < 1e-10);
    }
    CHECK_THROWS_AS(analytic::psi1(0.3, 1.0), PreconditionError);
    CHECK_THROWS_AS(analytic::psi2(0.3, 1.0), PreconditionError);
}

TEST_CASE("fundamental solutions satisfy the equation") {
    const double k = 2.7;
    std::mt19937 rng(9u);
    std::uniform_real_distribution<double> xs(-kPi + 0.01, kPi - 0.01);
    for (int j = 0; j < 100; ++j) {
        double x = xs(rng);
        cplx psi = analytic::psi1(x, k);
        cplx lhs = -d2([k](double t) { return analytic::psi1(t, k); }, x) +
                   (analytic::potential(x) - k * k) * psi;
        CHECK(std::abs(lhs) < 1e-6 * std::max(1.0, std::abs(psi)));
    }
}

TEST_CASE("characteristic function values") {
    CHECK(analytic::characteristic(2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(analytic::characteristic(1.0) == doctest::Approx(-3.0 * kPi).epsilon(1e-12));
    CHECK(analytic::characteristic(-1.0) == doctest::Approx(-3.0 * kPi).epsilon(1e-12));  // even in k
    CHECK(analytic::characteristic(0.25) == doctest::Approx(16.8).epsilon(1e-12));
    CHECK(analytic::characteristic(0.0) == doctest::Approx(8.0 * kPi).epsilon(1e-12));
    // roots at n/2 for n = 1, 3, 4, 5, ... and specifically NOT at k = 1
    for (int n : {1, 3, 4, 5, 6, 7})
        CHECK(std::abs(analytic::characteristic(0.5 * n)) < 1e-12);
    CHECK(std::abs(analytic::characteristic(1.0)) > 9.0);
    // continuity across the rearranged windows around the removable points
    for (double k : {0.5 - 1e-7, 1.0 + 1e-7, 2e-8}) {
        double a = analytic::characteristic(k);
        double b = analytic::characteristic(k + 1e-9);
        CHECK(std::abs(a - b) < 1e-6);
    }
}

TEST_CASE("eigenfunctions and the n=2 gap") {
    CHECK_THROWS_AS(analytic::eigenfunction_n(2, 0.3), PreconditionError);

    // eigenfunction_n(4, .) is proportional to the displayed psi4
    std::vector<double> grid = uniform_grid(513);
    std::vector<cplx> a(grid.size()), b(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        a[j] = analytic::eigenfunction_n(4, grid[j]);
        b[j] = analytic::psi4(grid[j]);
    }
    double h = grid_step(513);
    cplx c = fit_constant(a, b, h);
    std::vector<cplx> diff(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) diff[j] = a[j] - c * b[j];
    CHECK(l2_norm(diff, h) / l2_norm(a, h) < 1e-10);

    // Dirichlet boundary values vanish to rounding
    CHECK(std::abs(analytic::psi4(kPi)) < 1e-13);
    CHECK(std::abs(analytic::psi4(-kPi)) < 1e-13);
    for (int n : {1, 3, 5, 6}) {
        CHECK(std::abs(analytic::eigenfunction_n(n, kPi)) < 1e-13);
        CHECK(std::abs(analytic::eigenfunction_n(n, -kPi)) < 1e-13);
    }
}

TEST_CASE("norm formulas") {
    CHECK(analytic::bilinear_nn(1) == doctest::Approx(45.0 * kPi));
    CHECK(analytic::bilinear_nn(3) == doctest::Approx(-35.0 * kPi));
    CHECK(analytic::bilinear_nn(4) == doctest::Approx(0.0));
    CHECK(analytic::bilinear_nn(5) == doctest::Approx(189.0 * kPi));
    CHECK(analytic::pt_norm_n(1) == doctest::Approx(45.0 * kPi));
    CHECK(analytic::pt_norm_n(3) == doctest::Approx(-35.0 * kPi));
    CHECK(analytic::pt_norm_n(6) == doctest::Approx(-640.0 * kPi));
    CHECK(analytic::shooting_slope(1) == doctest::Approx(1.5));
    CHECK(analytic::shooting_slope(3) == doctest::Approx(-7.5));
}

TEST_CASE("associated function identities") {
    // phi4 = 12 psidot + (7 - 12 i pi) psi_shoot, rearranged from the psidot display
    std::mt19937 rng(10u);
    std::uniform_real_distribution<double> xs(-kPi, kPi);
    for (int j = 0; j < 50; ++j) {
        double x = xs(rng);
        cplx lhs = analytic::phi4(x);
        cplx rhs = 12.0 * analytic::assoc_psi_dot(x) +
                   (7.0 - 12.0 * I * kPi) * analytic::shooting_psi_k2(x);
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
    }

    // psi4 = -24 * shooting-normalized k=2 eigenfunction
    for (int j = 0; j < 20; ++j) {
        double x = xs(rng);
        CHECK(std::abs(analytic::psi4(x) + 24.0 * analytic::shooting_psi_k2(x)) < 1e-12);
    }

    // psidot carries zero boundary data: the double root in action
    CHECK(std::abs(analytic::assoc_psi_dot(kPi)) < 1e-12);
    CHECK(std::abs(analytic::assoc_psi_dot(-kPi)) < 1e-12);
}

TEST_CASE("associated function solves the inhomogeneous equation") {
    // (-d_xx + V - 4) psidot = 4 psi(x,2) with psi(x,2) shooting-normalized
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> xs(-kPi + 0.01, kPi - 0.01);
    for (int j = 0; j < 100; ++j) {
        double x = xs(rng);
        cplx lhs = -d2([](double t) { return analytic::assoc_psi_dot(t); }, x) +
                   (analytic::potential(x) - 4.0) * analytic::assoc_psi_dot(x);
        cplx rhs = 4.0 * analytic::shooting_psi_k2(x);
        CHECK(std::abs(lhs - rhs) < 1e-6 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("boundary slopes at the roots") {
    // psi'(pi, n/2) = (-1)^n for the shooting normalization
    for (int n : {1, 2, 3, 4, 5, 6, 7}) {
        if (n == 2) continue;  // not a spectral point; covered via shooting elsewhere
        double expect = (n % 2 == 0) ? 1.0 : -1.0;
        // derivative of the shooting eigenfunction: scale eigenfunction_n by the
        // slope normalization psi_n'(-pi) = n(4-n^2)/2
        double slope = analytic::shooting_slope(n);
        cplx dpsi = (analytic::eigenfunction_n(n, kPi) -
                     analytic::eigenfunction_n(n, kPi - 1e-6)) /
                    1e-6 / slope;
        CHECK(std::abs(dpsi - expect) < 1e-4);
    }
}
