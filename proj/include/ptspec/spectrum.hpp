#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ptspec/shooting.hpp"

namespace ptspec {

struct RootInfo {
    double k = 0.0;
    double E = 0.0;          // k^2
    int multiplicity = 1;
    double abs_D = 0.0;      // |D(k)| residual
    double abs_Dprime = 0.0; // |dD/dk(k)|
};

struct SpectrumReport {
    std::vector<RootInfo> roots;  // ascending in k, separated by > merge_tol
    double kmin = 0.0, kmax = 0.0;
    bool diagonalizable = true;   // true iff every multiplicity is 1
    double tol = 0.0;
    double eps_mult = 0.0;        // derivative-degeneracy threshold (relative)
    double merge_tol = 0.0;
    double scale = 0.0;           // max |D| over the scan
    std::vector<std::string> warnings;
};

/// Derivative-degeneracy threshold relative to the scan scale: |Dprime| below
/// eps_mult * scale is treated as a vanishing derivative.
inline constexpr double kEpsMult = 1e-5;

/// Residual gate: a refined k counts as a root only if |D| < this * scale.
inline constexpr double kRootResidual = 1e-7;

/// Seed intervals from a k-sorted scan: sign changes of Re D, plus isolated
/// local minima of |D| below floor_frac * max|D| (tangential double zeros
/// produce no sign change). pre: scan sorted, length >= 16.
std::vector<std::pair<double, double>> bracket_roots(const std::vector<ScanPoint>& scan,
                                                     double floor_frac = 0.05);

struct RefineResult {
    double k = 0.0;
    double abs_D = 0.0;
    double abs_Dprime = 0.0;
};

/// Newton refinement of a seed: iterate k <- k - Re(D/Dprime); once |Dprime|
/// drops under eps_mult * scale, switch the iteration to Dprime (its zero is
/// the double root). Converged when |dk| < tol.
/// Throws NoConvergence (50 iterations) or DivergedOutOfWindow.
RefineResult refine_root(const PotentialExpr& V, double k0, double tol, double klo, double khi,
                         double scale);

/// Convenience overload: window k0 +- 0.5 (clipped to k > 0), scale probed
/// from a few characteristic samples across that window.
RefineResult refine_root(const PotentialExpr& V, double k0, double tol);

/// Order of the zero at kstar: 1 if |Dprime| clears eps_mult * scale, else
/// successive central differences of Dprime (step 1e-4) up to order 4.
/// pre: |D(kstar)| already below the root residual gate.
/// Throws OrderTooHigh past order 4.
int classify_multiplicity(const PotentialExpr& V, double kstar, double tol, double scale);

/// scan -> bracket -> refine -> classify -> merge duplicates (within
/// 10 * tol) -> report. Per-root failures become warnings, not aborts.
/// Roots are restricted to k > 0.
SpectrumReport find_spectrum(const PotentialExpr& V, double kmin, double kmax, int n_scan,
                             double tol = 1e-10);

}  // namespace ptspec
