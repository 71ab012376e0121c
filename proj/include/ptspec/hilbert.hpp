#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ptspec/modes.hpp"
#include "ptspec/potential.hpp"
#include "ptspec/spectrum.hpp"

namespace ptspec {

/// Expansion coefficients a_n = bilinear(f, xi_n) over the basis members.
/// f must be sampled on the basis grid (GridMismatch otherwise) and vanish at
/// the endpoints to tolerance (PreconditionError otherwise).
std::vector<cplx> expand(const std::vector<cplx>& f, const Basis& basis);

/// Partial sum sum_{n < n_terms} coeffs[n] * xi_n on the basis grid.
/// Requires n_terms <= basis size and n_terms <= coeffs.size().
std::vector<cplx> reconstruct(const std::vector<cplx>& coeffs, const Basis& basis,
                              std::size_t n_terms);

/// Relative L2 distance between f and its n_terms-member reconstruction.
double reconstruction_error(const std::vector<cplx>& f, const Basis& basis, std::size_t n_terms);

/// Metric induced by declaring the xi-members orthonormal: expand both
/// arguments and form sum conj(a_n) b_n.  Positive semidefinite by
/// construction; equals the L2 inner product only where the basis is an
/// orthonormal set in the Hermitian sense too (e.g. the zero potential).
cplx dynamical_inner_product(const std::vector<cplx>& f, const std::vector<cplx>& g,
                             const Basis& basis);

/// A named smooth Dirichlet test function sampled on a grid.
struct TestFunction {
    std::string name;
    std::vector<cplx> values;
};

/// Fixed suite: sin(m(x+pi)/2) for m = 1..4 and (pi^2 - x^2) exp(x/pi).
std::vector<TestFunction> completeness_test_suite(const std::vector<double>& grid);

/// Reconstruction-error decay for one test function.  terms[i] is the member
/// count of the i-th partial sum, errors[i] the relative L2 error at it.
struct CompletenessCurve {
    std::string name;
    std::vector<std::size_t> terms;
    std::vector<double> errors;
};

/// Error-vs-terms curves for each test function.  Partial sums grow by whole
/// root subspaces (subspace_partition): the two members of a multiplicity-2
/// subspace are orthonormal under the bilinear form but strongly non-orthogonal
/// in L2, so adding one of them alone can transiently raise the L2 error;
/// subspace-aligned prefixes decrease monotonically.
std::vector<CompletenessCurve> completeness_curves(const Basis& basis,
                                                   const std::vector<TestFunction>& fns);

/// Weak test of the truncated reproducing kernel K_N(x,y) = sum xi_n(x)xi_n(y):
/// for each test function g, the action integral K_N g is compared against g in
/// relative L2, at subspace-aligned truncations up to n_terms members.
struct DeltaKernelReport {
    std::size_t n_terms = 0;
    std::vector<CompletenessCurve> curves;
};
DeltaKernelReport delta_kernel_test(const Basis& basis, const std::vector<TestFunction>& fns,
                                    std::size_t n_terms);

/// End-to-end verdict: spectrum with multiplicities, zero-norm eigenfunctions,
/// and whether completing the basis needed associated functions.
struct DiagonalizabilityReport {
    SpectrumReport spectrum;
    Basis basis;
    std::vector<double> zero_norm_roots;  // k where |(psi,psi)| < 1e-8 * int |psi|^2
    std::size_t associated_members = 0;
    std::string verdict;
    std::vector<std::string> warnings;
};

DiagonalizabilityReport diagonalizability_report(const PotentialExpr& V, double kmin, double kmax,
                                                 int n_scan, double tol = 1e-10,
                                                 int n_nodes = 4097);

}  // namespace ptspec
