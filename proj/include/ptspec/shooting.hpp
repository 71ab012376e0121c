#pragma once

#include <string>
#include <vector>

#include "ptspec/ode.hpp"

namespace ptspec {

/// Characteristic data at one k: the shooting solution fixed by
/// psi(-pi) = 0, psi'(-pi) = 1 gives D(k) = psi(pi, k); Dprime is dD/dk from
/// the jointly integrated variational system; endpoint_slope is psi'(pi, k).
struct ShootingResult {
    cplx k;
    cplx D;
    cplx Dprime;
    cplx endpoint_slope;
    Trajectory trajectory;
};

ShootingResult shoot(const PotentialExpr& V, cplx k, double tol = 1e-10, int n_nodes = 4097);

struct ScanPoint {
    double k = 0.0;
    cplx D;
    cplx Dprime;
    bool ok = false;
    std::string error;  // set when !ok
};

/// shoot at n uniformly spaced real k in [kmin, kmax] (endpoints included).
/// Individual integration failures are recorded per point; the scan goes on.
/// pre: 0 <= kmin < kmax; n >= 16.
std::vector<ScanPoint> characteristic_scan(const PotentialExpr& V, double kmin, double kmax,
                                           int n, double tol = 1e-10);

}  // namespace ptspec
