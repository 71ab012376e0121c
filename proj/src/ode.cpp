#include "ptspec/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ptspec/errors.hpp"
#include "ptspec/gridfn.hpp"

namespace ptspec {
namespace {

// Dormand-Prince 5(4) tableau (FSAL: stage 7 = first stage of the next step).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Difference between the 5th- and embedded 4th-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output coefficients of the 4th-order continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kMinStep = 1e-13;
constexpr long kMaxSteps = 10'000'000;

template <std::size_t N>
using State = std::array<cplx, N>;

// One DOPRI5 step from (x, y) with k1 = f(x, y) already available.
// On return: y5 holds the 5th-order result, ks[2..7] the stages, and the
// weighted RMS error estimate is returned (tol as both atol and rtol).
template <std::size_t N, class Rhs>
double dopri_step(Rhs&& f, double x, double h, const State<N>& y, const State<N>& k1,
                  std::array<State<N>, 8>& ks, State<N>& y5, double tol) {
    State<N> t;
    for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + h * a21 * k1[i];
    f(x + c2 * h, t, ks[2]);
    for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * ks[2][i]);
    f(x + c3 * h, t, ks[3]);
    for (std::size_t i = 0; i < N; ++i)
        t[i] = y[i] + h * (a41 * k1[i] + a42 * ks[2][i] + a43 * ks[3][i]);
    f(x + c4 * h, t, ks[4]);
    for (std::size_t i = 0; i < N; ++i)
        t[i] = y[i] + h * (a51 * k1[i] + a52 * ks[2][i] + a53 * ks[3][i] + a54 * ks[4][i]);
    f(x + c5 * h, t, ks[5]);
    for (std::size_t i = 0; i < N; ++i)
        t[i] = y[i] + h * (a61 * k1[i] + a62 * ks[2][i] + a63 * ks[3][i] + a64 * ks[4][i] +
                           a65 * ks[5][i]);
    f(x + h, t, ks[6]);
    for (std::size_t i = 0; i < N; ++i)
        y5[i] = y[i] + h * (b1 * k1[i] + b3 * ks[3][i] + b4 * ks[4][i] + b5 * ks[5][i] +
                            b6 * ks[6][i]);
    f(x + h, y5, ks[7]);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        cplx e = h * (e1 * k1[i] + e3 * ks[3][i] + e4 * ks[4][i] + e5 * ks[5][i] + e6 * ks[6][i] +
                      e7 * ks[7][i]);
        double sc = tol + tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        err += std::norm(e / sc);
    }
    return std::sqrt(err / N);
}

template <std::size_t N>
struct Dense {
    State<N> r1, r2, r3, r4, r5;

    void build(const State<N>& y0, const State<N>& y1, const State<N>& k1, const State<N>& k3,
               const State<N>& k4, const State<N>& k5, const State<N>& k6, const State<N>& k7,
               double h) {
        for (std::size_t i = 0; i < N; ++i) {
            cplx ydiff = y1[i] - y0[i];
            cplx bspl = h * k1[i] - ydiff;
            r1[i] = y0[i];
            r2[i] = ydiff;
            r3[i] = bspl;
            r4[i] = ydiff - h * k7[i] - bspl;
            r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                         d7 * k7[i]);
        }
    }

    State<N> eval(double theta) const {
        State<N> y;
        double th1 = 1.0 - theta;
        for (std::size_t i = 0; i < N; ++i)
            y[i] = r1[i] + theta * (r2[i] + th1 * (r3[i] + theta * (r4[i] + th1 * r5[i])));
        return y;
    }
};

// Adaptive driver over [-pi, pi]; emit(node, y) is called once per grid node
// in order (node 0 emitted from the initial state before stepping).
template <std::size_t N, class Rhs, class Emit>
void drive_adaptive(Rhs&& f, State<N> y, double tol, const std::vector<double>& grid,
                    Emit&& emit) {
    const double x_end = kPi;
    double x = -kPi;
    std::size_t next = 0;
    emit(next++, y);

    std::array<State<N>, 8> ks;
    f(x, y, ks[1]);
    double h = 1e-3;
    bool just_rejected = false;
    Dense<N> dense;
    State<N> y5;

    for (long steps = 0; x < x_end; ++steps) {
        if (steps > kMaxSteps) throw StepFailure(x);
        bool final_step = x + h >= x_end;
        if (final_step) h = x_end - x;
        if (h < kMinStep) throw StepFailure(x);

        double err;
        bool blew_up = false;
        try {
            err = dopri_step<N>(f, x, h, y, ks[1], ks, y5, tol);
        } catch (const PoleError&) {
            // potential singularity under a stage point: treat like a wildly
            // failed step and retreat; persistent failure underflows h above
            blew_up = true;
            err = 2.0;
        }
        if (!blew_up && !std::isfinite(err)) {
            blew_up = true;
            err = 2.0;
        }

        if (err <= 1.0) {
            dense.build(y, y5, ks[1], ks[3], ks[4], ks[5], ks[6], ks[7], h);
            double x_new = final_step ? x_end : x + h;
            while (next < grid.size() && grid[next] <= x_new) {
                State<N> yi = dense.eval((grid[next] - x) / h);
                emit(next++, yi);
            }
            x = x_new;
            y = y5;
            ks[1] = ks[7];  // FSAL
            double fac = 0.9 * std::pow(err > 1e-20 ? err : 1e-20, -0.2);
            fac = std::clamp(fac, 0.2, just_rejected ? 1.0 : 10.0);
            h *= fac;
            just_rejected = false;
        } else {
            double fac = blew_up ? 0.2 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            h *= fac;
            just_rejected = true;
        }
    }
    // the final accepted step lands exactly on x_end and fills the last node
    // through the theta = 1 interpolant (== y5); emit any stragglers from
    // floating-point grid comparisons
    while (next < grid.size()) emit(next++, y);
}

// RHS builders. V is evaluated once per stage point.
struct Rhs2 {
    const PotentialExpr& V;
    cplx k2;
    void operator()(double x, const State<2>& y, State<2>& f) const {
        f[0] = y[1];
        f[1] = (eval_potential(V, x) - k2) * y[0];
    }
};

struct Rhs4 {
    const PotentialExpr& V;
    cplx k2, two_k;
    void operator()(double x, const State<4>& y, State<4>& f) const {
        cplx w = eval_potential(V, x) - k2;
        f[0] = y[1];
        f[1] = w * y[0];
        f[2] = y[3];
        f[3] = w * y[2] - two_k * y[0];
    }
};

void check_pre(double tol, int n_nodes) {
    if (!(tol >= 1e-14 && tol <= 1e-4))
        throw PreconditionError("integration tol must lie in [1e-14, 1e-4]");
    if (n_nodes < 257 || n_nodes % 2 == 0)
        throw PreconditionError("n_nodes must be odd and >= 257");
}

}  // namespace

Trajectory integrate(const PotentialExpr& V, cplx k, std::pair<cplx, cplx> y0, double tol,
                     int n_nodes) {
    check_pre(tol, n_nodes);
    Trajectory tr;
    tr.grid = uniform_grid(n_nodes);
    tr.psi.resize(tr.grid.size());
    tr.dpsi.resize(tr.grid.size());
    tr.k = k;
    tr.tol = tol;
    Rhs2 rhs{V, k * k};
    State<2> y{y0.first, y0.second};
    drive_adaptive<2>(rhs, y, tol, tr.grid, [&](std::size_t j, const State<2>& v) {
        tr.psi[j] = v[0];
        tr.dpsi[j] = v[1];
    });
    return tr;
}

Trajectory integrate_with_variation(const PotentialExpr& V, cplx k, std::pair<cplx, cplx> y0,
                                    std::pair<cplx, cplx> yk0, double tol, int n_nodes) {
    check_pre(tol, n_nodes);
    Trajectory tr;
    tr.grid = uniform_grid(n_nodes);
    tr.psi.resize(tr.grid.size());
    tr.dpsi.resize(tr.grid.size());
    tr.psik.resize(tr.grid.size());
    tr.dpsik.resize(tr.grid.size());
    tr.k = k;
    tr.tol = tol;
    Rhs4 rhs{V, k * k, 2.0 * k};
    State<4> y{y0.first, y0.second, yk0.first, yk0.second};
    drive_adaptive<4>(rhs, y, tol, tr.grid, [&](std::size_t j, const State<4>& v) {
        tr.psi[j] = v[0];
        tr.dpsi[j] = v[1];
        tr.psik[j] = v[2];
        tr.dpsik[j] = v[3];
    });
    return tr;
}

Trajectory integrate_fixed(const PotentialExpr& V, cplx k, std::pair<cplx, cplx> y0, int n_steps,
                           int n_nodes) {
    if (n_steps < 1) throw PreconditionError("integrate_fixed needs n_steps >= 1");
    if (n_nodes < 257 || n_nodes % 2 == 0)
        throw PreconditionError("n_nodes must be odd and >= 257");
    Trajectory tr;
    tr.grid = uniform_grid(n_nodes);
    tr.psi.resize(tr.grid.size());
    tr.dpsi.resize(tr.grid.size());
    tr.k = k;
    tr.tol = 0.0;
    Rhs2 rhs{V, k * k};
    State<2> y{y0.first, y0.second};
    std::size_t next = 0;
    tr.psi[0] = y[0];
    tr.dpsi[0] = y[1];
    ++next;

    std::array<State<2>, 8> ks;
    rhs(-kPi, y, ks[1]);
    double h = 2.0 * kPi / n_steps;
    Dense<2> dense;
    State<2> y5;
    for (int s = 0; s < n_steps; ++s) {
        double x = -kPi + h * s;
        double x_new = s + 1 == n_steps ? kPi : x + h;
        dopri_step<2>(rhs, x, h, y, ks[1], ks, y5, 1.0);
        dense.build(y, y5, ks[1], ks[3], ks[4], ks[5], ks[6], ks[7], h);
        while (next < tr.grid.size() && tr.grid[next] <= x_new) {
            State<2> yi = dense.eval((tr.grid[next] - x) / h);
            tr.psi[next] = yi[0];
            tr.dpsi[next] = yi[1];
            ++next;
        }
        y = y5;
        ks[1] = ks[7];
    }
    while (next < tr.grid.size()) {
        tr.psi[next] = y[0];
        tr.dpsi[next] = y[1];
        ++next;
    }
    return tr;
}

std::vector<cplx> wronskian(const Trajectory& u, const Trajectory& v) {
    if (u.psi.size() != v.psi.size()) throw GridMismatch(u.psi.size(), v.psi.size());
    std::vector<cplx> w(u.psi.size());
    for (std::size_t j = 0; j < w.size(); ++j)
        w[j] = u.psi[j] * v.dpsi[j] - u.dpsi[j] * v.psi[j];
    return w;
}

double wronskian_drift(const Trajectory& u, const Trajectory& v) {
    std::vector<cplx> w = wronskian(u, v);
    double w0 = std::abs(w.front());
    if (w0 < 1e-300) throw ZeroFunction();
    double drift = 0.0;
    for (const cplx& wi : w) drift = std::max(drift, std::abs(wi - w.front()) / w0);
    return drift;
}

}  // namespace ptspec
