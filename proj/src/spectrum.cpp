#include "ptspec/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "ptspec/errors.hpp"

namespace ptspec {
namespace {

constexpr int kRefineNodes = 257;   // endpoint values only; coarse grid is fine
constexpr int kMaxNewtonIters = 50;
constexpr double kFdStep = 1e-4;    // k-step for higher-derivative differencing

cplx dprime_at(const PotentialExpr& V, double k, double tol) {
    return shoot(V, k, tol, kRefineNodes).Dprime;
}

}  // namespace

std::vector<std::pair<double, double>> bracket_roots(const std::vector<ScanPoint>& scan,
                                                     double floor_frac) {
    if (scan.size() < 16) throw PreconditionError("bracket_roots needs a scan of length >= 16");
    for (std::size_t j = 1; j < scan.size(); ++j)
        if (!(scan[j].k > scan[j - 1].k))
            throw PreconditionError("bracket_roots needs a k-sorted scan");

    double scale = 0.0;
    for (const ScanPoint& p : scan)
        if (p.ok) scale = std::max(scale, std::abs(p.D));
    if (scale == 0.0) return {};

    std::vector<std::pair<double, double>> seeds;
    std::vector<bool> sign_change(scan.size(), false);  // [j] covers (j, j+1)
    for (std::size_t j = 0; j + 1 < scan.size(); ++j) {
        if (!scan[j].ok || !scan[j + 1].ok) continue;
        if (scan[j].D.real() == 0.0) continue;  // grid point dead on a root: the minimum rule gets it
        if (scan[j].D.real() * scan[j + 1].D.real() < 0.0) {
            sign_change[j] = true;
            seeds.emplace_back(scan[j].k, scan[j + 1].k);
        }
    }
    // tangential (even-order) zeros: |D| dips low without Re D changing sign
    for (std::size_t j = 1; j + 1 < scan.size(); ++j) {
        if (!scan[j - 1].ok || !scan[j].ok || !scan[j + 1].ok) continue;
        double dm = std::abs(scan[j - 1].D), d0 = std::abs(scan[j].D), dp = std::abs(scan[j + 1].D);
        if (d0 < dm && d0 <= dp && d0 < floor_frac * scale && !sign_change[j - 1] &&
            !sign_change[j])
            seeds.emplace_back(scan[j - 1].k, scan[j + 1].k);
    }
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

RefineResult refine_root(const PotentialExpr& V, double k0, double tol, double klo, double khi,
                         double scale) {
    if (!(khi > klo)) throw PreconditionError("refine_root needs khi > klo");
    if (!(scale > 0.0)) throw PreconditionError("refine_root needs a positive scale");
    double k = k0;
    for (int iter = 0; iter < kMaxNewtonIters; ++iter) {
        ShootingResult sh = shoot(V, k, tol, kRefineNodes);
        double dk;
        if (std::abs(sh.Dprime) < kEpsMult * scale) {
            // derivative degenerate: the root of Dprime is the multiple root
            cplx d2 = (dprime_at(V, k + kFdStep, tol) - dprime_at(V, k - kFdStep, tol)) /
                      (2.0 * kFdStep);
            if (std::abs(d2) < 1e-300) throw NoConvergence(k);
            dk = (sh.Dprime / d2).real();
        } else {
            dk = (sh.D / sh.Dprime).real();
        }
        double k_new = k - dk;
        if (k_new < klo || k_new > khi) throw DivergedOutOfWindow(k_new, klo, khi);
        k = k_new;
        if (std::abs(dk) < tol) {
            ShootingResult fin = shoot(V, k, tol, kRefineNodes);
            return {k, std::abs(fin.D), std::abs(fin.Dprime)};
        }
    }
    throw NoConvergence(k);
}

RefineResult refine_root(const PotentialExpr& V, double k0, double tol) {
    double klo = std::max(k0 - 0.5, 1e-6);
    double khi = k0 + 0.5;
    double scale = 0.0;
    for (int j = 0; j <= 4; ++j) {
        double kp = klo + (khi - klo) * j / 4.0;
        scale = std::max(scale, std::abs(shoot(V, kp, tol, kRefineNodes).D));
    }
    if (scale == 0.0) scale = 1.0;
    return refine_root(V, k0, tol, klo, khi, scale);
}

int classify_multiplicity(const PotentialExpr& V, double kstar, double tol, double scale) {
    if (!(scale > 0.0)) throw PreconditionError("classify_multiplicity needs a positive scale");
    double thresh = kEpsMult * scale;
    cplx d1 = dprime_at(V, kstar, tol);
    if (std::abs(d1) >= thresh) return 1;
    cplx dp_p = dprime_at(V, kstar + kFdStep, tol);
    cplx dp_m = dprime_at(V, kstar - kFdStep, tol);
    cplx d2 = (dp_p - dp_m) / (2.0 * kFdStep);
    if (std::abs(d2) >= thresh) return 2;
    cplx d3 = (dp_p - 2.0 * d1 + dp_m) / (kFdStep * kFdStep);
    if (std::abs(d3) >= thresh) return 3;
    cplx dp_2p = dprime_at(V, kstar + 2.0 * kFdStep, tol);
    cplx dp_2m = dprime_at(V, kstar - 2.0 * kFdStep, tol);
    cplx d4 = (dp_2p - 2.0 * dp_p + 2.0 * dp_m - dp_2m) /
              (2.0 * kFdStep * kFdStep * kFdStep);
    if (std::abs(d4) >= thresh) return 4;
    throw OrderTooHigh(kstar);
}

SpectrumReport find_spectrum(const PotentialExpr& V, double kmin, double kmax, int n_scan,
                             double tol) {
    SpectrumReport report;
    report.kmin = kmin;
    report.kmax = kmax;
    report.tol = tol;
    report.eps_mult = kEpsMult;
    report.merge_tol = 10.0 * tol;

    std::vector<ScanPoint> scan = characteristic_scan(V, kmin, kmax, n_scan, tol);
    std::size_t failures = 0;
    for (const ScanPoint& p : scan) {
        if (p.ok)
            report.scale = std::max(report.scale, std::abs(p.D));
        else
            ++failures;
    }
    if (failures > 0) {
        const auto bad = std::find_if(scan.begin(), scan.end(),
                                      [](const ScanPoint& p) { return !p.ok; });
        report.warnings.push_back(std::to_string(failures) + " scan point(s) failed, first at k=" +
                                  std::to_string(bad->k) + ": " + bad->error);
    }
    if (report.scale == 0.0) {
        report.warnings.push_back("no usable scan points; no roots reported");
        return report;
    }

    std::vector<RefineResult> candidates;
    for (const auto& [a, b] : bracket_roots(scan)) {
        double seed = 0.5 * (a + b);
        try {
            RefineResult r = refine_root(V, seed, tol, kmin, kmax, report.scale);
            if (r.abs_D < kRootResidual * report.scale) {
                candidates.push_back(r);
            } else {
                report.warnings.push_back("seed " + std::to_string(seed) + " refined to k=" +
                                          std::to_string(r.k) +
                                          " but failed the residual gate; dropped");
            }
        } catch (const Error& e) {
            report.warnings.push_back("seed " + std::to_string(seed) + ": " + e.what());
        }
    }

    std::sort(candidates.begin(), candidates.end(),
              [](const RefineResult& u, const RefineResult& v) { return u.k < v.k; });
    std::vector<RefineResult> merged;
    for (const RefineResult& c : candidates) {
        if (!merged.empty() && c.k - merged.back().k <= report.merge_tol) {
            if (c.abs_D < merged.back().abs_D) merged.back() = c;
        } else {
            merged.push_back(c);
        }
    }

    for (const RefineResult& r : merged) {
        if (r.k <= 0.0) continue;  // E = k^2 is even in k; keep the k > 0 half-line
        try {
            int mult = classify_multiplicity(V, r.k, tol, report.scale);
            report.roots.push_back({r.k, r.k * r.k, mult, r.abs_D, r.abs_Dprime});
        } catch (const Error& e) {
            report.warnings.push_back("root k=" + std::to_string(r.k) +
                                      " could not be classified: " + e.what());
        }
    }
    report.diagonalizable = std::all_of(report.roots.begin(), report.roots.end(),
                                        [](const RootInfo& r) { return r.multiplicity == 1; });
    return report;
}

}  // namespace ptspec
