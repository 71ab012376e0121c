#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ptspec/spectrum.hpp"

namespace ptspec {

enum class NormTag {
    Shooting,      // unit slope at x = -pi
    Reference,     // closed-form reference normalization
    UnitBilinear,  // self-product 1 under the unconjugated form
};

const char* to_string(NormTag tag);

/// One eigenfunction or associated function on the uniform grid.
struct Mode {
    double k = 0.0;
    double E = 0.0;
    int multiplicity = 1;
    int chain_index = 0;  // 0 = eigenfunction, 1 = first associated function
    std::vector<cplx> values;
    NormTag norm = NormTag::Shooting;
};

/// Unconjugated product ∫ f g dx over [-pi, pi] (composite Simpson, step h).
/// This is the indefinite bilinear form of the problem, not the L2 inner
/// product; no complex conjugation anywhere.
cplx bilinear(const std::vector<cplx>& f, const std::vector<cplx>& g, double h);
cplx bilinear(const Mode& f, const Mode& g, double h);

/// Antilinear parity-reflection-conjugation: out[j] = conj(in[N-1-j]).
std::vector<cplx> pt_apply(const std::vector<cplx>& f);

struct PtParity {
    cplx lambda;      // minimizer of ||pt_apply(f) - lambda f||_2
    double residual;  // minimized norm / ||f||_2
};
PtParity pt_parity(const std::vector<cplx>& f, double h);

struct PtNorm {
    cplx with_pt;  // ∫ f * pt_apply(f) dx
    cplx plain;    // ∫ f^2 dx
};
PtNorm pt_norm(const std::vector<cplx>& f, double h);

/// Shooting-normalized eigenfunction at a validated root k.
/// Throws NotARoot when |D(k)| exceeds 1e-6 * (1 + max node |psi|).
Mode eigenmode(const PotentialExpr& V, double k, double tol = 1e-10, int n_nodes = 4097);

/// First associated function at a multiplicity-2 root: the k-derivative
/// component of the jointly integrated variational system (zero initial
/// data). Its own endpoint must vanish: |psik(pi)| < 1e-6 * max|psik|,
/// else NotDoubleRoot.
Mode associated_mode(const PotentialExpr& V, double k, double tol = 1e-10, int n_nodes = 4097);

/// Orthonormalize a zero-self-product eigenfunction psi and a companion phi
/// spanning the same root subspace:
///   xi_b = phi / sqrt((phi,phi))
///   xi_a = i psi sqrt((phi,phi)) / (phi,psi)  -  i phi / sqrt((phi,phi))
/// (principal square roots). The pair Gram is the identity whenever
/// (psi,psi) ~ 0, (phi,phi) != 0, (phi,psi) != 0; DegenerateGram otherwise.
std::pair<Mode, Mode> root_subspace_orthonormalize(const Mode& psi, const Mode& phi, double h);

struct Basis {
    std::vector<Mode> members;             // ascending k; chain pairs adjacent
    std::vector<std::vector<cplx>> gram;   // bilinear products, members order
    std::vector<int> labels;               // 1-based positional labels
    std::vector<double> grid;
    double h = 0.0;
    std::vector<std::string> warnings;
};

/// Build the orthonormal basis for the spectrum's roots, in ascending k,
/// capped at n_max members: simple-root modes scaled by
/// 1/sqrt(bilinear(psi,psi)); each multiplicity-2 subspace contributes the
/// orthonormalized pair, with the companion direction first rotated so both
/// pair members acquire a definite parity under pt_apply (a purely imaginary
/// multiple of the eigenfunction is added; real multiples are free gauge).
/// Throws ZeroNormWithoutChain when a simple root has
/// |bilinear(psi,psi)| < 1e-8 ∫|psi|^2; propagates DegenerateGram.
Basis build_xi_basis(const PotentialExpr& V, const SpectrumReport& spectrum, int n_max,
                     double tol = 1e-10, int n_nodes = 4097);

/// Copy of a basis without the chain_index = 1 members (Gram and labels
/// sliced accordingly); the incompleteness exhibits expand against this.
Basis remove_associated_members(const Basis& basis);

/// Index ranges [first, last) of members sharing one root subspace, in basis
/// order; multiplicity-2 pairs stay atomic.
std::vector<std::pair<std::size_t, std::size_t>> subspace_partition(const Basis& basis);

}  // namespace ptspec
