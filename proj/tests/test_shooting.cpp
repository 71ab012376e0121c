#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ptspec/analytic.hpp"
#include "ptspec/errors.hpp"
#include "ptspec/gridfn.hpp"
#include "ptspec/potential.hpp"
#include "ptspec/shooting.hpp"

using namespace ptspec;

TEST_CASE("double root: value and slope both vanish") {
    ShootingResult r = shoot(builtin_potential("paper"), 2.0);
    CHECK(std::abs(r.D) < 1e-8);
    CHECK(std::abs(r.Dprime) < 1e-8);
    CHECK(r.trajectory.psi.front() == cplx(0.0));
    CHECK(r.trajectory.dpsi.front() == cplx(1.0));
}

TEST_CASE("k=1 is not a spectral point") {
    ShootingResult r = shoot(builtin_potential("paper"), 1.0);
    CHECK(std::abs(r.D - cplx(-3.0 * kPi, 0.0)) < 1e-8 * 3.0 * kPi);
}

TEST_CASE("endpoint slope at an odd root") {
    ShootingResult r = shoot(builtin_potential("paper"), 1.5);
    CHECK(std::abs(r.endpoint_slope - cplx(-1.0, 0.0)) < 1e-8);
}

TEST_CASE("scan matches the closed-form characteristic function") {
    auto scan = characteristic_scan(builtin_potential("paper"), 0.1, 3.1, 301, 1e-10);
    REQUIRE(scan.size() == 301);
    double worst = 0.0;
    for (const ScanPoint& p : scan) {
        REQUIRE(p.ok);
        worst = std::max(worst, std::abs(p.D - cplx(analytic::characteristic(p.k), 0.0)));
    }
    CHECK(worst < 1e-8);
    CHECK(scan.front().k == doctest::Approx(0.1));
    CHECK(scan.back().k == doctest::Approx(3.1));
}

TEST_CASE("zero-potential scan matches sin(2 pi k)/k") {
    auto scan = characteristic_scan(builtin_potential("zero"), 0.1, 3.1, 301, 1e-10);
    double worst = 0.0;
    for (const ScanPoint& p : scan)
        worst = std::max(worst, std::abs(p.D - cplx(std::sin(2.0 * kPi * p.k) / p.k, 0.0)));
    CHECK(worst < 1e-8);
}

TEST_CASE("the characteristic function stays real for symmetric potentials") {
    for (const char* name : {"paper", "zero"}) {
        auto scan = characteristic_scan(builtin_potential(name), 0.1, 6.1, 121, 1e-10);
        for (const ScanPoint& p : scan)
            CHECK(std::abs(p.D.imag()) <= 1e-6 * std::max(1.0, std::abs(p.D)));
    }
}

TEST_CASE("variational slope agrees with finite differences") {
    PotentialExpr V = builtin_potential("paper");
    const double dk = 1e-5;
    for (double k : {0.7, 1.3, 2.2, 3.3}) {
        ShootingResult c = shoot(V, k);
        if (std::abs(c.Dprime) <= 1e-3)
            continue;
        cplx fd = (shoot(V, k + dk).D - shoot(V, k - dk).D) / (2.0 * dk);
        CHECK(std::abs(c.Dprime - fd) < 1e-5 * std::abs(c.Dprime));
    }
}

TEST_CASE("scan preconditions") {
    PotentialExpr V = builtin_potential("zero");
    CHECK_THROWS_AS(characteristic_scan(V, 0.1, 3.1, 1, 1e-10), PreconditionError);
    CHECK_THROWS_AS(characteristic_scan(V, -0.5, 3.1, 100, 1e-10), PreconditionError);
    CHECK_THROWS_AS(characteristic_scan(V, 2.0, 2.0, 100, 1e-10), PreconditionError);
}

TEST_CASE("per-point failures do not stop the scan") {
    auto scan = characteristic_scan(parse_potential("1/x"), 0.5, 1.5, 16, 1e-10);
    REQUIRE(scan.size() == 16);
    for (const ScanPoint& p : scan) {
        CHECK_FALSE(p.ok);
        CHECK_FALSE(p.error.empty());
    }
}
