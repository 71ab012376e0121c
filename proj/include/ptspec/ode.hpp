#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "ptspec/potential.hpp"

namespace ptspec {

/// Solution samples of psi'' = (V(x) - k^2) psi on the uniform grid over
/// [-pi, pi], optionally with the first variational system in k,
/// psik'' = (V - k^2) psik - 2k psi. Immutable once returned.
struct Trajectory {
    std::vector<double> grid;   // uniform, endpoints exactly -pi and pi
    std::vector<cplx> psi;
    std::vector<cplx> dpsi;     // psi'
    std::vector<cplx> psik;     // d psi / dk (variational runs only)
    std::vector<cplx> dpsik;
    cplx k;
    double tol = 0.0;

    bool has_variation() const { return !psik.empty(); }
};

/// Integrate psi'' = (V - k^2) psi from x = -pi with (psi, psi') = y0 using
/// an adaptive Dormand-Prince 5(4) pair; dense output resampled onto the
/// uniform grid. Node 0 carries y0 exactly. tol is applied as both relative
/// and absolute per-step error weight.
/// pre: tol in [1e-14, 1e-4]; n_nodes odd, >= 257.
/// Throws StepFailure when the step size underflows (x location attached).
Trajectory integrate(const PotentialExpr& V, cplx k, std::pair<cplx, cplx> y0,
                     double tol = 1e-10, int n_nodes = 4097);

/// Same, with the variational system integrated jointly from (psik, psik') =
/// yk0 (never by re-differencing separate trajectories).
Trajectory integrate_with_variation(const PotentialExpr& V, cplx k, std::pair<cplx, cplx> y0,
                                    std::pair<cplx, cplx> yk0, double tol = 1e-10,
                                    int n_nodes = 4097);

/// Fixed-step variant (n_steps uniform steps of the same tableau, no error
/// control); used for convergence-order studies.
Trajectory integrate_fixed(const PotentialExpr& V, cplx k, std::pair<cplx, cplx> y0, int n_steps,
                           int n_nodes = 4097);

/// Pointwise Wronskian u v' - u' v; constant in x for two solutions at the
/// same k.
std::vector<cplx> wronskian(const Trajectory& u, const Trajectory& v);

/// max_j |W_j - W_0| / |W_0| over the pointwise Wronskian.
double wronskian_drift(const Trajectory& u, const Trajectory& v);

}  // namespace ptspec
