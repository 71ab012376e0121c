#include "ptspec/modes.hpp"

#include <cmath>

#include "ptspec/errors.hpp"
#include "ptspec/gridfn.hpp"

namespace ptspec {
namespace {

const cplx I{0.0, 1.0};

constexpr double kRootGate = 1e-6;      // |D| gate relative to 1 + max|psi|
constexpr double kZeroNormRel = 1e-8;   // zero self-product threshold vs ∫|psi|^2
constexpr double kParityResidual = 1e-6;

std::vector<cplx> scaled(const std::vector<cplx>& f, cplx a) {
    std::vector<cplx> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = a * f[j];
    return out;
}

}  // namespace

const char* to_string(NormTag tag) {
    switch (tag) {
        case NormTag::Shooting: return "shooting";
        case NormTag::Reference: return "reference";
        case NormTag::UnitBilinear: return "unit-bilinear";
    }
    return "?";
}

cplx bilinear(const std::vector<cplx>& f, const std::vector<cplx>& g, double h) {
    if (f.size() != g.size()) throw GridMismatch(f.size(), g.size());
    std::vector<cplx> prod(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) prod[j] = f[j] * g[j];
    return simpson(prod, h);
}

cplx bilinear(const Mode& f, const Mode& g, double h) { return bilinear(f.values, g.values, h); }

std::vector<cplx> pt_apply(const std::vector<cplx>& f) {
    std::vector<cplx> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = std::conj(f[f.size() - 1 - j]);
    return out;
}

PtParity pt_parity(const std::vector<cplx>& f, double h) {
    cplx ff = l2_inner(f, f, h);
    if (std::abs(ff) < 1e-300) throw ZeroFunction();
    std::vector<cplx> pf = pt_apply(f);
    cplx lambda = l2_inner(f, pf, h) / ff;
    std::vector<cplx> res(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) res[j] = pf[j] - lambda * f[j];
    PtParity out;
    out.lambda = lambda;
    out.residual = l2_norm(res, h) / std::sqrt(std::abs(ff));
    return out;
}

PtNorm pt_norm(const std::vector<cplx>& f, double h) {
    PtNorm out;
    out.with_pt = bilinear(f, pt_apply(f), h);
    out.plain = bilinear(f, f, h);
    return out;
}

Mode eigenmode(const PotentialExpr& V, double k, double tol, int n_nodes) {
    ShootingResult sh = shoot(V, k, tol, n_nodes);
    double scale = 1.0 + max_abs(sh.trajectory.psi);
    if (std::abs(sh.D) > kRootGate * scale) throw NotARoot(k, std::abs(sh.D));
    Mode m;
    m.k = k;
    m.E = k * k;
    m.multiplicity = 1;
    m.chain_index = 0;
    m.values = std::move(sh.trajectory.psi);
    m.norm = NormTag::Shooting;
    return m;
}

Mode associated_mode(const PotentialExpr& V, double k, double tol, int n_nodes) {
    ShootingResult sh = shoot(V, k, tol, n_nodes);
    double psi_scale = 1.0 + max_abs(sh.trajectory.psi);
    if (std::abs(sh.D) > kRootGate * psi_scale) throw NotARoot(k, std::abs(sh.D));
    double dot_scale = max_abs(sh.trajectory.psik);
    if (std::abs(sh.Dprime) > 1e-6 * dot_scale) throw NotDoubleRoot(k);
    Mode m;
    m.k = k;
    m.E = k * k;
    m.multiplicity = 2;
    m.chain_index = 1;
    m.values = std::move(sh.trajectory.psik);
    m.norm = NormTag::Shooting;
    return m;
}

std::pair<Mode, Mode> root_subspace_orthonormalize(const Mode& psi, const Mode& phi, double h) {
    if (psi.values.size() != phi.values.size())
        throw GridMismatch(psi.values.size(), phi.values.size());
    double s_psi = std::abs(l2_inner(psi.values, psi.values, h));
    double s_phi = std::abs(l2_inner(phi.values, phi.values, h));
    if (s_psi < 1e-300 || s_phi < 1e-300) throw DegenerateGram("zero input function");

    cplx psi_self = bilinear(psi.values, psi.values, h);
    if (std::abs(psi_self) > 1e-6 * s_psi)
        throw DegenerateGram("eigenfunction self-product is not zero; nothing to repair");
    cplx pp = bilinear(phi.values, phi.values, h);
    if (std::abs(pp) < kZeroNormRel * s_phi)
        throw DegenerateGram("companion self-product vanishes");
    cplx ps = bilinear(phi.values, psi.values, h);
    if (std::abs(ps) < kZeroNormRel * std::sqrt(s_phi * s_psi))
        throw DegenerateGram("companion-eigenfunction cross product vanishes");

    cplx root_pp = std::sqrt(pp);
    Mode xi_a = psi;
    Mode xi_b = phi;
    xi_b.values = scaled(phi.values, 1.0 / root_pp);
    xi_b.norm = NormTag::UnitBilinear;
    xi_a.values.resize(psi.values.size());
    for (std::size_t j = 0; j < psi.values.size(); ++j)
        xi_a.values[j] = I * psi.values[j] * root_pp / ps - I * phi.values[j] / root_pp;
    xi_a.norm = NormTag::UnitBilinear;
    return {std::move(xi_a), std::move(xi_b)};
}

Basis build_xi_basis(const PotentialExpr& V, const SpectrumReport& spectrum, int n_max,
                     double tol, int n_nodes) {
    if (n_max < 0) throw PreconditionError("build_xi_basis needs n_max >= 0");
    Basis basis;
    basis.grid = uniform_grid(n_nodes);
    basis.h = grid_step(n_nodes);

    for (const RootInfo& root : spectrum.roots) {
        std::size_t room = static_cast<std::size_t>(n_max) - basis.members.size();
        if (root.multiplicity == 1) {
            if (room < 1) break;
            Mode m = eigenmode(V, root.k, tol, n_nodes);
            cplx b = bilinear(m.values, m.values, basis.h);
            double s = std::abs(l2_inner(m.values, m.values, basis.h));
            if (std::abs(b) < kZeroNormRel * s) throw ZeroNormWithoutChain(root.k);
            m.values = scaled(m.values, 1.0 / std::sqrt(b));
            m.norm = NormTag::UnitBilinear;
            basis.members.push_back(std::move(m));
        } else if (root.multiplicity == 2) {
            if (room < 2) break;
            Mode psi = eigenmode(V, root.k, tol, n_nodes);
            psi.multiplicity = 2;
            Mode companion = associated_mode(V, root.k, tol, n_nodes);

            // Rotate the companion to a definite parity under pt_apply. With
            // PT psi = lambda psi one finds PT psidot = lambda (psidot + g psi)
            // for a purely imaginary g; adding c psi with c = g/2 restores
            // PT(psidot + c psi) = lambda (psidot + c psi), since the
            // antilinearity turns c into conj(c) = -c on the reflected side.
            // Real shifts are gauge and stay zero.
            PtParity par = pt_parity(psi.values, basis.h);
            if (par.residual < kParityResidual) {
                std::vector<cplx> r = pt_apply(companion.values);
                for (std::size_t j = 0; j < r.size(); ++j)
                    r[j] -= par.lambda * companion.values[j];
                cplx gamma = l2_inner(psi.values, r, basis.h) /
                             l2_inner(psi.values, psi.values, basis.h);
                double im_c = (gamma / (2.0 * I * par.lambda)).real();
                for (std::size_t j = 0; j < companion.values.size(); ++j)
                    companion.values[j] += cplx(0.0, im_c) * psi.values[j];
            } else {
                basis.warnings.push_back("eigenfunction at k=" + std::to_string(root.k) +
                                         " has no definite parity (residual " +
                                         std::to_string(par.residual) +
                                         "); companion left unrotated");
            }

            auto [xi_a, xi_b] = root_subspace_orthonormalize(psi, companion, basis.h);
            basis.members.push_back(std::move(xi_a));
            basis.members.push_back(std::move(xi_b));
        } else {
            basis.warnings.push_back("root k=" + std::to_string(root.k) + " has multiplicity " +
                                     std::to_string(root.multiplicity) +
                                     "; chains longer than 2 are not constructed");
        }
    }

    std::size_t n = basis.members.size();
    basis.labels.resize(n);
    for (std::size_t j = 0; j < n; ++j) basis.labels[j] = static_cast<int>(j) + 1;
    basis.gram.assign(n, std::vector<cplx>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            cplx g = bilinear(basis.members[a].values, basis.members[b].values, basis.h);
            basis.gram[a][b] = g;
            basis.gram[b][a] = g;
        }
    return basis;
}

Basis remove_associated_members(const Basis& basis) {
    Basis out;
    out.grid = basis.grid;
    out.h = basis.h;
    out.warnings = basis.warnings;
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < basis.members.size(); ++j)
        if (basis.members[j].chain_index == 0) keep.push_back(j);
    for (std::size_t j : keep) out.members.push_back(basis.members[j]);
    std::size_t n = keep.size();
    out.labels.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.labels[j] = static_cast<int>(j) + 1;
    out.gram.assign(n, std::vector<cplx>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out.gram[a][b] = basis.gram[keep[a]][keep[b]];
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> subspace_partition(const Basis& basis) {
    std::vector<std::pair<std::size_t, std::size_t>> parts;
    std::size_t j = 0;
    while (j < basis.members.size()) {
        std::size_t end = j + 1;
        while (end < basis.members.size() && basis.members[end].k == basis.members[j].k &&
               basis.members[end].chain_index > 0)
            ++end;
        parts.emplace_back(j, end);
        j = end;
    }
    return parts;
}

}  // namespace ptspec
