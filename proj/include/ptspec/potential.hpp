#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace ptspec {

using cplx = std::complex<double>;

enum class ExprOp {
    Const,  // literal value (real or pure-imaginary at parse time)
    Var,    // x
    Add, Sub, Mul, Div, Pow,
    Neg,
    Sin, Cos, Tan, Exp, Log, Sqrt, Abs,
};

struct ExprNode {
    ExprOp op;
    int a = -1;     // left child / unary operand (index into nodes)
    int b = -1;     // right child
    cplx value{};   // Const only
};

/// Parsed potential V(x). Immutable after construction; safe to share across
/// threads. `source` keeps the original text, `nodes[root]` the tree.
struct PotentialExpr {
    std::vector<ExprNode> nodes;
    int root = -1;
    std::string source;
};

/// Parse expression text over {x, i, complex literals, + - * / ^, unary -,
/// sin cos tan exp log sqrt abs}. Precedence ^ > unary- > * / > + -,
/// ^ right-associative. "2i" (no space) is an imaginary literal; implicit
/// multiplication is otherwise not supported.
/// Throws SyntaxError (with byte offset and expected-token set) or
/// UnknownIdentifier.
PotentialExpr parse_potential(std::string_view src);

/// Evaluate at real x. Principal branches for log/sqrt/non-integer powers.
/// Throws PoleError on division by magnitude < 1e-300 or a non-finite result.
cplx eval_potential(const PotentialExpr& p, double x);

/// max over n_samples uniform points in [-pi, pi] (endpoints included) of
/// |conj(V(-x)) - V(x)|. Zero for a PT-symmetric potential.
double pt_symmetry_defect(const PotentialExpr& p, int n_samples);

/// Registered closed-form potentials: "paper" (the exactly solvable
/// reference potential -6/(cos x + 2i sin x)^2) and "zero".
/// Throws UnknownName.
PotentialExpr builtin_potential(const std::string& name);

/// Canonical fully-parenthesized print with shortest round-trip numeric
/// literals; re-parsing yields an expression that evaluates bitwise
/// identically.
std::string to_string(const PotentialExpr& p);

}  // namespace ptspec
