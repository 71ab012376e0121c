#include "ptspec/analytic.hpp"

#include <cmath>

#include "ptspec/errors.hpp"
#include "ptspec/gridfn.hpp"

namespace ptspec::analytic {
namespace {

const cplx I{0.0, 1.0};

// d(x) = cos x + 2i sin x; never vanishes for real x (|d|^2 = 1 + 3 sin^2 x).
cplx dfun(double x) { return cplx(std::cos(x), 2.0 * std::sin(x)); }
cplx dfun_prime(double x) { return cplx(-std::sin(x), 2.0 * std::cos(x)); }

// s(x) = 3 sin x / d(x), the regular form of 3/(2i + cot x); s'(x) = 3/d(x)^2.
cplx sfun(double x) { return 3.0 * std::sin(x) / dfun(x); }
cplx sfun_prime(double x) {
    cplx d = dfun(x);
    return 3.0 / (d * d);
}

double sinc(double z) { return z == 0.0 ? 1.0 : std::sin(z) / z; }

}  // namespace

cplx potential(double x) {
    cplx d = dfun(x);
    return -6.0 / (d * d);
}

cplx psi1(double x, double k) {
    if (k == 1.0) throw PreconditionError("psi1/psi2 degenerate at k = 1; use the k = 1 pair");
    return std::exp(I * k * x) * ((2.0 - k) * I + sfun(x));
}

cplx psi2(double x, double k) {
    if (k == 1.0) throw PreconditionError("psi1/psi2 degenerate at k = 1; use the k = 1 pair");
    return std::exp(-I * k * x) * ((2.0 + k) * I + sfun(x));
}

cplx psi1_prime(double x, double k) {
    if (k == 1.0) throw PreconditionError("psi1/psi2 degenerate at k = 1; use the k = 1 pair");
    return std::exp(I * k * x) * (I * k * ((2.0 - k) * I + sfun(x)) + sfun_prime(x));
}

cplx psi2_prime(double x, double k) {
    if (k == 1.0) throw PreconditionError("psi1/psi2 degenerate at k = 1; use the k = 1 pair");
    return std::exp(-I * k * x) * (-I * k * ((2.0 + k) * I + sfun(x)) + sfun_prime(x));
}

cplx psi1_k1(double x) { return 1.0 / dfun(x); }

cplx psi2_k1(double x) {
    cplx num(5.0 * std::sin(2.0 * x) - 6.0 * x, -4.0 * std::cos(2.0 * x));
    return num / dfun(x);
}

cplx psi1_k1_prime(double x) {
    cplx d = dfun(x);
    return -dfun_prime(x) / (d * d);
}

cplx psi2_k1_prime(double x) {
    cplx d = dfun(x);
    cplx num(5.0 * std::sin(2.0 * x) - 6.0 * x, -4.0 * std::cos(2.0 * x));
    cplx num_prime(10.0 * std::cos(2.0 * x) - 6.0, 8.0 * std::sin(2.0 * x));
    return (num_prime * d - num * dfun_prime(x)) / (d * d);
}

double characteristic(double k) {
    double num = k * k - 4.0;
    // Algebraically equivalent rearrangements, each exact at its removable
    // singularity: sin(2k pi) = 2 pi e sinc(2 pi e) with e the distance to
    // the nearest integer-period point.
    if (std::abs(k) < 0.5)
        return num * 2.0 * kPi * sinc(2.0 * kPi * k) / (k * k - 1.0);
    if (std::abs(k - 1.0) < 0.5) {
        double e = k - 1.0;
        return num * 2.0 * kPi * sinc(2.0 * kPi * e) / (k * (k + 1.0));
    }
    if (std::abs(k + 1.0) < 0.5) {
        double e = k + 1.0;
        return num * 2.0 * kPi * sinc(2.0 * kPi * e) / (k * (k - 1.0));
    }
    return num * std::sin(2.0 * kPi * k) / (k * (k * k - 1.0));
}

cplx eigenfunction_n(int n, double x) {
    if (n < 1 || n == 2) throw PreconditionError("eigenfunction_n needs n >= 1, n != 2");
    double nn = static_cast<double>(n) * n;
    double half = 0.5 * n * (kPi + x);
    cplx bracket = (16.0 - nn) * std::cos(x) - 2.0 * I * (nn - 4.0) * std::sin(x);
    return (bracket * std::sin(half) - 6.0 * n * std::sin(x) * std::cos(half)) / dfun(x);
}

cplx psi4(double x) { return -24.0 * std::exp(2.0 * I * x) * std::sin(x) / dfun(x); }

cplx shooting_psi_k2(double x) { return std::exp(2.0 * I * x) * std::sin(x) / dfun(x); }

cplx phi4(double x) {
    cplx num = 12.0 * I * x * std::exp(2.0 * I * x) - std::exp(-2.0 * I * x) + 8.0;
    return num * std::sin(x) / dfun(x);
}

cplx assoc_psi_dot(double x) {
    cplx bracket = 12.0 * I * kPi - 7.0 + 12.0 * I * x + 8.0 * std::exp(-2.0 * I * x) -
                   std::exp(-4.0 * I * x);
    return bracket / 12.0 * shooting_psi_k2(x);
}

double bilinear_nn(int n) {
    if (n < 1 || n == 2) throw PreconditionError("bilinear_nn needs n >= 1, n != 2");
    double nn = static_cast<double>(n) * n;
    return kPi * (nn - 4.0) * (nn - 16.0);
}

double pt_norm_n(int n) { return (n % 2 == 0 ? -1.0 : 1.0) * bilinear_nn(n); }

double shooting_slope(int n) {
    if (n < 1 || n == 2) throw PreconditionError("shooting_slope needs n >= 1, n != 2");
    double nn = static_cast<double>(n) * n;
    return 0.5 * n * (4.0 - nn);
}

}  // namespace ptspec::analytic
