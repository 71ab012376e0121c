#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "ptspec/errors.hpp"

namespace ptspec {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Uniform grid over [-pi, pi]; endpoints exactly -pi and pi. n_nodes odd >= 3.
inline std::vector<double> uniform_grid(int n_nodes) {
    if (n_nodes < 3 || n_nodes % 2 == 0)
        throw PreconditionError("grid needs an odd node count >= 3");
    std::vector<double> x(static_cast<std::size_t>(n_nodes));
    double h = 2.0 * kPi / (n_nodes - 1);
    for (int j = 0; j < n_nodes; ++j) x[static_cast<std::size_t>(j)] = -kPi + h * j;
    x.front() = -kPi;
    x.back() = kPi;
    return x;
}

inline double grid_step(int n_nodes) { return 2.0 * kPi / (n_nodes - 1); }

/// Composite Simpson rule with uniform step h; f.size() odd >= 3.
inline cplx simpson(const std::vector<cplx>& f, double h) {
    if (f.size() < 3 || f.size() % 2 == 0)
        throw PreconditionError("Simpson rule needs an odd sample count >= 3");
    cplx odd{}, even{};
    for (std::size_t j = 1; j + 1 < f.size(); j += 2) odd += f[j];
    for (std::size_t j = 2; j + 1 < f.size(); j += 2) even += f[j];
    return h / 3.0 * (f.front() + f.back() + 4.0 * odd + 2.0 * even);
}

/// Hermitian L2 inner product ∫ conj(f) g dx (Simpson).
inline cplx l2_inner(const std::vector<cplx>& f, const std::vector<cplx>& g, double h) {
    if (f.size() != g.size()) throw GridMismatch(f.size(), g.size());
    std::vector<cplx> prod(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) prod[j] = std::conj(f[j]) * g[j];
    return simpson(prod, h);
}

inline double l2_norm(const std::vector<cplx>& f, double h) {
    return std::sqrt(std::abs(l2_inner(f, f, h)));
}

/// Least-squares constant c minimizing ||target - c*model||_2.
inline cplx fit_constant(const std::vector<cplx>& target, const std::vector<cplx>& model, double h) {
    cplx denom = l2_inner(model, model, h);
    if (std::abs(denom) < 1e-300) throw ZeroFunction();
    return l2_inner(model, target, h) / denom;
}

/// Relative L2 distance ||f - g|| / ||g||.
inline double rel_l2_error(const std::vector<cplx>& f, const std::vector<cplx>& g, double h) {
    if (f.size() != g.size()) throw GridMismatch(f.size(), g.size());
    std::vector<cplx> diff(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) diff[j] = f[j] - g[j];
    double scale = l2_norm(g, h);
    if (scale < 1e-300) throw ZeroFunction();
    return l2_norm(diff, h) / scale;
}

inline double max_abs(const std::vector<cplx>& f) {
    double m = 0.0;
    for (const cplx& v : f) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace ptspec
