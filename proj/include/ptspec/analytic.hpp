#pragma once

#include <complex>

namespace ptspec::analytic {

using cplx = std::complex<double>;

// Closed forms for the exactly solvable reference model
//   V(x) = -6 / (cos x + 2i sin x)^2   on [-pi, pi], Dirichlet ends,
// used as ground truth by the test suites. All functions are pure.

/// V(x).
cplx potential(double x);

/// Fundamental pair at energy E = k^2, valid for k != 1:
///   psi1 = e^{ikx} [(2-k)i + 3 sin x/(cos x + 2i sin x)]
///   psi2 = e^{-ikx}[(2+k)i + 3 sin x/(cos x + 2i sin x)]
/// and their x-derivatives.
cplx psi1(double x, double k);
cplx psi2(double x, double k);
cplx psi1_prime(double x, double k);
cplx psi2_prime(double x, double k);

/// Replacement pair at k = 1 (where the pair above degenerates):
///   psi1 = 1/(cos x + 2i sin x)
///   psi2 = (5 sin 2x - 4i cos 2x - 6x)/(cos x + 2i sin x)
cplx psi1_k1(double x);
cplx psi2_k1(double x);
cplx psi1_k1_prime(double x);
cplx psi2_k1_prime(double x);

/// Characteristic function of the Dirichlet shooting solution,
///   D(k) = (k^2 - 4) sin(2 k pi) / (k (k^2 - 1)),
/// with the removable singularities at k = 0, +-1 evaluated by their limits
/// (D(0) = 8 pi, D(+-1) = -3 pi).
double characteristic(double k);

/// Eigenfunction for root index n (k = n/2; n >= 1, n != 2):
///   { [(16-n^2) cos x - 2i(n^2-4) sin x] sin[n(pi+x)/2]
///     - 6n sin x cos[n(pi+x)/2] } / (cos x + 2i sin x)
cplx eigenfunction_n(int n, double x);

/// The zero-bilinear-norm eigenfunction at the double root k = 2:
///   psi4 = -24 e^{2ix} sin x / (cos x + 2i sin x)
cplx psi4(double x);

/// Companion spanning the k = 2 root subspace with psi4:
///   phi4 = (12ix e^{2ix} - e^{-2ix} + 8) sin x / (cos x + 2i sin x)
cplx phi4(double x);

/// k-derivative of the unit-slope shooting solution at the double root:
///   assoc_psi_dot = (1/12)[12i pi - 7 + 12ix + 8 e^{-2ix} - e^{-4ix}] s(x),
/// where s(x) = e^{2ix} sin x/(cos x + 2i sin x) is the shooting solution at
/// k = 2 (= psi4/(-24)). Solves (-d^2/dx^2 + V - 4) f = 4 s with f(+-pi) = 0.
cplx assoc_psi_dot(double x);

/// Unit-slope shooting solution at k = 2 (psi4 / (-24)).
cplx shooting_psi_k2(double x);

/// Unconjugated self-product of eigenfunction_n: pi (n^2-4)(n^2-16).
double bilinear_nn(int n);

/// Product against the reversed conjugate: pi (-1)^{n+1} (n^2-4)(n^2-16).
double pt_norm_n(int n);

/// Slope of eigenfunction_n at x = -pi: n(4-n^2)/2. Dividing by it yields
/// the unit-slope shooting normalization; the slope at +pi is (-1)^n times it.
double shooting_slope(int n);

}  // namespace ptspec::analytic
