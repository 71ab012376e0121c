#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "ptspec/analytic.hpp"
#include "ptspec/errors.hpp"
#include "ptspec/gridfn.hpp"
#include "ptspec/ode.hpp"
#include "ptspec/potential.hpp"

using namespace ptspec;

TEST_CASE("zero potential reproduces the sine solution") {
    PotentialExpr V = builtin_potential("zero");
    Trajectory t = integrate(V, 1.0, {cplx(0.0), cplx(1.0)}, 1e-10, 4097);
    double worst = 0.0;
    for (std::size_t j = 0; j < t.grid.size(); ++j)
        worst = std::max(worst, std::abs(t.psi[j] - std::sin(t.grid[j] + kPi)));
    CHECK(worst < 1e-9);
    CHECK(t.psi.front() == cplx(0.0));
    CHECK(t.dpsi.front() == cplx(1.0));
}

TEST_CASE("model potential reproduces the analytic solution") {
    PotentialExpr V = builtin_potential("paper");
    const double k = 3.0;
    Trajectory t = integrate(V, k, {analytic::psi1(-kPi, k), analytic::psi1_prime(-kPi, k)},
                             1e-10, 2049);
    double worst = 0.0;
    for (std::size_t j = 0; j < t.grid.size(); ++j)
        worst = std::max(worst, std::abs(t.psi[j] - analytic::psi1(t.grid[j], k)));
    CHECK(worst < 1e-8);
}

TEST_CASE("Wronskian of the fundamental pair") {
    PotentialExpr V = builtin_potential("paper");
    const double k = 3.0;
    // order chosen so u v' - u' v = +2ik(k^2-1) = 48i
    Trajectory u = integrate(V, k, {analytic::psi2(-kPi, k), analytic::psi2_prime(-kPi, k)},
                             1e-10, 1025);
    Trajectory v = integrate(V, k, {analytic::psi1(-kPi, k), analytic::psi1_prime(-kPi, k)},
                             1e-10, 1025);
    std::vector<cplx> w = wronskian(u, v);
    for (const cplx& wj : w)
        CHECK(std::abs(wj - cplx(0.0, 48.0)) < 48.0 * 1e-8);
    CHECK(wronskian_drift(u, v) <= 100 * 1e-10);
}

TEST_CASE("Wronskian conservation for random data") {
    std::mt19937 rng(20240818u);
    std::uniform_real_distribution<double> ks(0.3, 6.0);
    std::uniform_real_distribution<double> cs(-1.0, 1.0);
    for (const char* name : {"paper", "zero"}) {
        PotentialExpr V = builtin_potential(name);
        for (int run = 0; run < 6; ++run) {
            double k = ks(rng);
            std::pair<cplx, cplx> u0{cplx(cs(rng), cs(rng)), cplx(cs(rng), cs(rng))};
            std::pair<cplx, cplx> v0{cplx(cs(rng), cs(rng)), cplx(cs(rng), cs(rng))};
            Trajectory u = integrate(V, k, u0, 1e-10, 257);
            Trajectory v = integrate(V, k, v0, 1e-10, 257);
            cplx w0 = u0.first * v0.second - u0.second * v0.first;
            if (std::abs(w0) < 0.1)
                continue;  // keep the relative drift well conditioned
            CHECK(wronskian_drift(u, v) <= 100 * 1e-10);
        }
    }
}

TEST_CASE("variational solution at the zero potential") {
    PotentialExpr V = builtin_potential("zero");
    Trajectory t = integrate_with_variation(V, 1.0, {cplx(0.0), cplx(1.0)},
                                            {cplx(0.0), cplx(0.0)}, 1e-10, 4097);
    REQUIRE(t.has_variation());
    double worst = 0.0;
    for (std::size_t j = 0; j < t.grid.size(); ++j) {
        double u = t.grid[j] + kPi;
        cplx exact = u * std::cos(u) - std::sin(u);
        worst = std::max(worst, std::abs(t.psik[j] - exact));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("variational endpoint vanishes at the double root") {
    PotentialExpr V = builtin_potential("paper");
    Trajectory t = integrate_with_variation(V, 2.0, {cplx(0.0), cplx(1.0)},
                                            {cplx(0.0), cplx(0.0)}, 1e-10, 4097);
    double scale = max_abs(t.psik);
    CHECK(std::abs(t.psik.back()) < 1e-6 * scale);
}

TEST_CASE("variational equation residual on the grid") {
    PotentialExpr V = builtin_potential("paper");
    const int n = 4097;
    Trajectory t = integrate_with_variation(V, 2.0, {cplx(0.0), cplx(1.0)},
                                            {cplx(0.0), cplx(0.0)}, 1e-10, n);
    const double h = grid_step(n);
    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < t.grid.size(); ++j) {
        cplx second = (t.psik[j + 1] - 2.0 * t.psik[j] + t.psik[j - 1]) / (h * h);
        cplx res = -second + (eval_potential(V, t.grid[j]) - 4.0) * t.psik[j] - 4.0 * t.psi[j];
        worst = std::max(worst, std::abs(res));
    }
    CHECK(worst < 1e-4 * max_abs(t.psi));
}

TEST_CASE("fixed-step convergence order") {
    PotentialExpr V = builtin_potential("zero");
    const double k = 1.0;
    auto endpoint_error = [&](int n_steps) {
        Trajectory t = integrate_fixed(V, k, {cplx(0.0), cplx(1.0)}, n_steps, 257);
        return std::abs(t.psi.back() - std::sin(2.0 * kPi));
    };
    double e1 = endpoint_error(64);
    double e2 = endpoint_error(128);
    double e3 = endpoint_error(256);
    double order12 = std::log2(e1 / e2);
    double order23 = std::log2(e2 / e3);
    CHECK(order12 >= 4.0);
    CHECK(order23 >= 4.0);
}

TEST_CASE("integration is linear in the initial data") {
    PotentialExpr V = builtin_potential("paper");
    const double k = 1.7, tol = 1e-10;
    cplx a(0.3, -0.2), b(-1.1, 0.4);
    Trajectory t1 = integrate(V, k, {cplx(1.0), cplx(0.0)}, tol, 513);
    Trajectory t2 = integrate(V, k, {cplx(0.0), cplx(1.0)}, tol, 513);
    Trajectory t3 = integrate(V, k, {a, b}, tol, 513);
    double scale = std::max(max_abs(t3.psi), 1.0);
    for (std::size_t j = 0; j < t3.psi.size(); ++j)
        CHECK(std::abs(t3.psi[j] - (a * t1.psi[j] + b * t2.psi[j])) <= 10 * tol * scale);
}

TEST_CASE("preconditions") {
    PotentialExpr V = builtin_potential("zero");
    std::pair<cplx, cplx> y0{cplx(0.0), cplx(1.0)};
    CHECK_THROWS_AS(integrate(V, 1.0, y0, 1e-15, 4097), PreconditionError);
    CHECK_THROWS_AS(integrate(V, 1.0, y0, 1e-3, 4097), PreconditionError);
    CHECK_THROWS_AS(integrate(V, 1.0, y0, 1e-10, 4096), PreconditionError);
    CHECK_THROWS_AS(integrate(V, 1.0, y0, 1e-10, 255), PreconditionError);
}

TEST_CASE("a potential pole stops the march") {
    PotentialExpr V = parse_potential("1/x");
    CHECK_THROWS_AS(integrate(V, 1.0, {cplx(0.0), cplx(1.0)}, 1e-10, 257), StepFailure);
}
