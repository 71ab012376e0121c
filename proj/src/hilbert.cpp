#include "ptspec/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ptspec/errors.hpp"
#include "ptspec/gridfn.hpp"

namespace ptspec {

namespace {

constexpr double kEndpointRel = 1e-6;  // Dirichlet check on expansion inputs
constexpr double kZeroNormRel = 1e-8;  // |(psi,psi)| vs int |psi|^2, as in basis building

void check_expandable(const std::vector<cplx>& f, const Basis& basis) {
    if (f.size() != basis.grid.size())
        throw GridMismatch(f.size(), basis.grid.size());
    if (f.empty())
        throw PreconditionError("empty grid function");
    const double scale = max_abs(f);
    const double gate = kEndpointRel * (1.0 + scale);
    if (std::abs(f.front()) > gate || std::abs(f.back()) > gate)
        throw PreconditionError("grid function does not vanish at the interval endpoints");
}

std::string format_k(double k) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", k);
    return buf;
}

}  // namespace

std::vector<cplx> expand(const std::vector<cplx>& f, const Basis& basis) {
    check_expandable(f, basis);
    std::vector<cplx> coeffs;
    coeffs.reserve(basis.members.size());
    for (const Mode& xi : basis.members)
        coeffs.push_back(bilinear(f, xi.values, basis.h));
    return coeffs;
}

std::vector<cplx> reconstruct(const std::vector<cplx>& coeffs, const Basis& basis,
                              std::size_t n_terms) {
    if (n_terms > basis.members.size())
        throw PreconditionError("partial sum longer than the basis");
    if (n_terms > coeffs.size())
        throw PreconditionError("partial sum longer than the coefficient vector");
    std::vector<cplx> out(basis.grid.size(), cplx(0.0, 0.0));
    for (std::size_t n = 0; n < n_terms; ++n) {
        const std::vector<cplx>& xi = basis.members[n].values;
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] += coeffs[n] * xi[j];
    }
    return out;
}

double reconstruction_error(const std::vector<cplx>& f, const Basis& basis, std::size_t n_terms) {
    const std::vector<cplx> coeffs = expand(f, basis);
    const std::vector<cplx> partial = reconstruct(coeffs, basis, n_terms);
    return rel_l2_error(partial, f, basis.h);
}

cplx dynamical_inner_product(const std::vector<cplx>& f, const std::vector<cplx>& g,
                             const Basis& basis) {
    const std::vector<cplx> a = expand(f, basis);
    const std::vector<cplx> b = expand(g, basis);
    cplx sum(0.0, 0.0);
    for (std::size_t n = 0; n < a.size(); ++n)
        sum += std::conj(a[n]) * b[n];
    return sum;
}

std::vector<TestFunction> completeness_test_suite(const std::vector<double>& grid) {
    std::vector<TestFunction> fns;
    const char* sine_names[4] = {"sin((x+pi)/2)", "sin(x+pi)", "sin(3(x+pi)/2)", "sin(2(x+pi))"};
    for (int m = 1; m <= 4; ++m) {
        TestFunction fn;
        fn.name = sine_names[m - 1];
        fn.values.reserve(grid.size());
        for (double x : grid)
            fn.values.emplace_back(std::sin(0.5 * m * (x + kPi)), 0.0);
        fns.push_back(std::move(fn));
    }
    TestFunction bump;
    bump.name = "(pi^2-x^2)exp(x/pi)";
    bump.values.reserve(grid.size());
    for (double x : grid)
        bump.values.emplace_back((kPi * kPi - x * x) * std::exp(x / kPi), 0.0);
    fns.push_back(std::move(bump));
    return fns;
}

std::vector<CompletenessCurve> completeness_curves(const Basis& basis,
                                                   const std::vector<TestFunction>& fns) {
    const auto partition = subspace_partition(basis);
    std::vector<CompletenessCurve> curves;
    curves.reserve(fns.size());
    for (const TestFunction& fn : fns) {
        CompletenessCurve curve;
        curve.name = fn.name;
        const std::vector<cplx> coeffs = expand(fn.values, basis);
        for (const auto& block : partition) {
            curve.terms.push_back(block.second);
            curve.errors.push_back(
                rel_l2_error(reconstruct(coeffs, basis, block.second), fn.values, basis.h));
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

DeltaKernelReport delta_kernel_test(const Basis& basis, const std::vector<TestFunction>& fns,
                                    std::size_t n_terms) {
    if (n_terms > basis.members.size())
        throw PreconditionError("kernel truncation longer than the basis");
    // The Simpson quadrature in y factors through the coefficient integral, so
    // the action of K_N on g is arithmetically identical to the partial-sum
    // reconstruction of g; no separate kernel assembly is needed.
    DeltaKernelReport report;
    report.n_terms = n_terms;
    const auto partition = subspace_partition(basis);
    for (const TestFunction& fn : fns) {
        CompletenessCurve curve;
        curve.name = fn.name;
        const std::vector<cplx> coeffs = expand(fn.values, basis);
        for (const auto& block : partition) {
            if (block.second > n_terms)
                break;
            curve.terms.push_back(block.second);
            curve.errors.push_back(
                rel_l2_error(reconstruct(coeffs, basis, block.second), fn.values, basis.h));
        }
        if ((curve.terms.empty() || curve.terms.back() < n_terms) &&
            n_terms <= basis.members.size()) {
            curve.terms.push_back(n_terms);
            curve.errors.push_back(
                rel_l2_error(reconstruct(coeffs, basis, n_terms), fn.values, basis.h));
        }
        report.curves.push_back(std::move(curve));
    }
    return report;
}

DiagonalizabilityReport diagonalizability_report(const PotentialExpr& V, double kmin, double kmax,
                                                 int n_scan, double tol, int n_nodes) {
    DiagonalizabilityReport report;
    report.spectrum = find_spectrum(V, kmin, kmax, n_scan, tol);

    int total_members = 0;
    for (const RootInfo& root : report.spectrum.roots)
        total_members += root.multiplicity;
    report.basis = build_xi_basis(V, report.spectrum, total_members, tol, n_nodes);

    for (const RootInfo& root : report.spectrum.roots) {
        try {
            Mode psi = eigenmode(V, root.k, tol, n_nodes);
            const cplx b = bilinear(psi, psi, report.basis.h);
            double s = 0.0;
            for (const cplx& v : psi.values)
                s += std::norm(v);
            s *= report.basis.h;  // Riemann scale is enough for a threshold
            if (std::abs(b) < kZeroNormRel * s)
                report.zero_norm_roots.push_back(root.k);
        } catch (const Error& err) {
            report.warnings.push_back("zero-norm check failed at k = " + format_k(root.k) + ": " +
                                      err.what());
        }
    }

    for (const Mode& m : report.basis.members)
        if (m.chain_index > 0)
            ++report.associated_members;

    std::vector<double> multiple_roots;
    bool all_double = true;
    for (const RootInfo& root : report.spectrum.roots) {
        if (root.multiplicity > 1) {
            multiple_roots.push_back(root.k);
            if (root.multiplicity != 2)
                all_double = false;
        }
    }
    if (multiple_roots.empty()) {
        report.verdict = "diagonalizable";
    } else {
        std::string ks;
        for (std::size_t i = 0; i < multiple_roots.size(); ++i) {
            if (i)
                ks += ", ";
            ks += format_k(multiple_roots[i]);
        }
        const std::size_t m = report.associated_members;
        report.verdict = std::string("non-diagonalizable: ") +
                         (all_double ? "double" : "multiple") + " root at k=" + ks +
                         "; basis completed with " + std::to_string(m) + " associated function" +
                         (m == 1 ? "" : "s");
    }

    report.warnings.insert(report.warnings.end(), report.spectrum.warnings.begin(),
                           report.spectrum.warnings.end());
    report.warnings.insert(report.warnings.end(), report.basis.warnings.begin(),
                           report.basis.warnings.end());
    return report;
}

}  // namespace ptspec
