#include "ptspec/shooting.hpp"

#include "ptspec/errors.hpp"

namespace ptspec {

namespace {
// Scans keep no trajectories, so the coarsest admissible grid suffices; the
// adaptive step control, not the output grid, sets the accuracy of D.
constexpr int kScanNodes = 257;
}  // namespace

ShootingResult shoot(const PotentialExpr& V, cplx k, double tol, int n_nodes) {
    ShootingResult r;
    r.k = k;
    r.trajectory = integrate_with_variation(V, k, {cplx(0.0), cplx(1.0)}, {cplx(0.0), cplx(0.0)},
                                            tol, n_nodes);
    r.D = r.trajectory.psi.back();
    r.Dprime = r.trajectory.psik.back();
    r.endpoint_slope = r.trajectory.dpsi.back();
    return r;
}

std::vector<ScanPoint> characteristic_scan(const PotentialExpr& V, double kmin, double kmax, int n,
                                           double tol) {
    if (!(kmin >= 0.0 && kmin < kmax)) throw PreconditionError("scan needs 0 <= kmin < kmax");
    if (n < 16) throw PreconditionError("scan needs n >= 16");
    std::vector<ScanPoint> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        ScanPoint& p = out[static_cast<std::size_t>(j)];
        p.k = kmin + (kmax - kmin) * j / (n - 1);
        try {
            ShootingResult r = shoot(V, p.k, tol, kScanNodes);
            p.D = r.D;
            p.Dprime = r.Dprime;
            p.ok = true;
        } catch (const Error& e) {
            p.ok = false;
            p.error = e.what();
        }
    }
    return out;
}

}  // namespace ptspec
