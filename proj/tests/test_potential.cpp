#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "ptspec/errors.hpp"
#include "ptspec/gridfn.hpp"
#include "ptspec/potential.hpp"

using namespace ptspec;

namespace {
cplx ev(const std::string& src, double x) { return eval_potential(parse_potential(src), x); }
}  // namespace

TEST_CASE("literals and the imaginary suffix") {
    CHECK(ev("42", 0.0) == cplx(42.0, 0.0));
    CHECK(ev("2i", 0.0) == cplx(0.0, 2.0));
    CHECK(ev("2.5i", 0.0) == cplx(0.0, 2.5));
    CHECK(ev("2e3", 0.0) == cplx(2000.0, 0.0));
    CHECK(ev("1.5e-2", 0.0) == cplx(0.015, 0.0));
    CHECK(ev("i", 0.0) == cplx(0.0, 1.0));
    // adjacency only: "2 i" is not a literal and has no implicit product
    CHECK_THROWS_AS(parse_potential("2 i"), SyntaxError);
    // "2e" backtracks to the number 2 followed by the unknown identifier e
    CHECK_THROWS_AS(parse_potential("2e"), UnknownIdentifier);
}

TEST_CASE("precedence and associativity") {
    CHECK(ev("1+2*3", 0.0) == cplx(7.0, 0.0));
    CHECK(ev("(1+2)*3", 0.0) == cplx(9.0, 0.0));
    CHECK(ev("2^3^2", 0.0) == cplx(512.0, 0.0));  // right-associative power
    CHECK(ev("-2^2", 0.0) == cplx(-4.0, 0.0));    // minus binds outside the power
    CHECK(ev("6/3/2", 0.0) == cplx(1.0, 0.0));    // left-associative division
    CHECK(ev("2i*x", 1.5) == cplx(0.0, 3.0));
    CHECK(ev("2*i*x", 1.5) == ev("2i*x", 1.5));
}

TEST_CASE("function calls and variables") {
    CHECK(std::abs(ev("sin(x)", 0.7) - cplx(std::sin(0.7), 0.0)) < 1e-15);
    CHECK(std::abs(ev("exp(i*x)", 0.7) - std::exp(cplx(0.0, 0.7))) < 1e-15);
    CHECK(std::abs(ev("sqrt(0-1)", 0.0) - cplx(0.0, 1.0)) < 1e-15);  // principal branch
    CHECK(std::abs(ev("(0-1)^0.5", 0.0) - cplx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(ev("abs(0-3i)", 0.0) - cplx(3.0, 0.0)) < 1e-15);
    CHECK(std::abs(ev("tan(x)/tan(x)", 0.3) - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("syntax errors carry offsets") {
    try {
        parse_potential("x + ");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.offset() == 4);
    }
    CHECK_THROWS_AS(parse_potential(""), SyntaxError);
    CHECK_THROWS_AS(parse_potential("sin x"), SyntaxError);   // calls need parentheses
    CHECK_THROWS_AS(parse_potential("x x"), SyntaxError);     // no implicit product
    CHECK_THROWS_AS(parse_potential("--x"), SyntaxError);     // a single leading minus
    CHECK_THROWS_AS(parse_potential("(x"), SyntaxError);
    CHECK_THROWS_AS(parse_potential("1e999"), SyntaxError);   // literal out of range
    CHECK_THROWS_AS(parse_potential("y+1"), UnknownIdentifier);
}

TEST_CASE("nesting depth is capped") {
    std::string deep;
    for (int j = 0; j < 300; ++j) deep += '(';
    deep += 'x';
    for (int j = 0; j < 300; ++j) deep += ')';
    CHECK_THROWS_AS(parse_potential(deep), SyntaxError);
    std::string ok(10, '(');
    ok += "x";
    ok += std::string(10, ')');
    CHECK(ev(ok, 0.25) == cplx(0.25, 0.0));
}

TEST_CASE("pole detection during evaluation") {
    PotentialExpr p = parse_potential("1/x");
    CHECK_THROWS_AS(eval_potential(p, 0.0), PoleError);
    CHECK(std::abs(eval_potential(p, 2.0) - cplx(0.5, 0.0)) < 1e-15);
    CHECK_THROWS_AS(ev("1/(exp(x)-1)", 0.0), PoleError);
    CHECK_THROWS_AS(ev("log(0)", 0.0), PoleError);  // non-finite result
}

TEST_CASE("builtin potentials") {
    PotentialExpr paper = builtin_potential("paper");
    // V(pi/2) = -6/(2i)^2 = 3/2
    CHECK(std::abs(eval_potential(paper, kPi / 2) - cplx(1.5, 0.0)) < 1e-14);
    // V*(-x) = V(x): the complex-symmetry defect vanishes
    CHECK(pt_symmetry_defect(paper, 257) < 1e-12);
    PotentialExpr zero = builtin_potential("zero");
    CHECK(eval_potential(zero, 1.0) == cplx(0.0, 0.0));
    CHECK_THROWS_AS(builtin_potential("cubic"), UnknownName);
}

TEST_CASE("symmetry defect measures the asymmetry") {
    // V(x) = x: V(x) - V*(-x) = 2x, largest at the endpoints
    CHECK(pt_symmetry_defect(parse_potential("x"), 257) == doctest::Approx(2 * kPi).epsilon(1e-12));
    CHECK(pt_symmetry_defect(parse_potential("i*x"), 257) < 1e-15);  // ix is PT-symmetric
    CHECK_THROWS_AS(pt_symmetry_defect(parse_potential("x"), 1), PreconditionError);
}

TEST_CASE("print-parse round trip evaluates identically") {
    const char* sources[] = {
        "-6/(cos(x)+2i*sin(x))^2",
        "2i*x^2 - sin(x)/(1+0.5i) + exp(-x)",
        "sqrt(abs(x)+1) * tan(x/4) + 1e-3",
        "x^2^2 - -x",  // binary minus followed by a negated factor
    };
    std::mt19937 rng(20240817u);
    std::uniform_real_distribution<double> xs(-kPi, kPi);
    for (const char* src : sources) {
        PotentialExpr a = parse_potential(src);
        PotentialExpr b = parse_potential(to_string(a));
        for (int j = 0; j < 1000; ++j) {
            double x = xs(rng);
            cplx va = eval_potential(a, x);
            cplx vb = eval_potential(b, x);
            REQUIRE(va.real() == vb.real());
            REQUIRE(va.imag() == vb.imag());
        }
    }
}
