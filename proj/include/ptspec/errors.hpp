#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ptspec {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed expression text. Carries the byte offset of the failure and
/// the set of token kinds that would have been accepted there.
class SyntaxError : public Error {
  public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
        : Error(format(offset, expected, detail)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

  private:
    static std::string format(std::size_t offset, const std::vector<std::string>& expected,
                              const std::string& detail);
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Identifier outside the allowed set {x, i, sin, cos, tan, exp, log, sqrt, abs}.
class UnknownIdentifier : public Error {
  public:
    UnknownIdentifier(const std::string& name, std::size_t offset)
        : Error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
          name_(name), offset_(offset) {}
    const std::string& name() const { return name_; }
    std::size_t offset() const { return offset_; }

  private:
    std::string name_;
    std::size_t offset_;
};

/// Unknown builtin potential name.
class UnknownName : public Error {
  public:
    explicit UnknownName(const std::string& name)
        : Error("unknown builtin potential '" + name + "'") {}
};

/// Division by a value of magnitude below 1e-300 during evaluation.
class PoleError : public Error {
  public:
    explicit PoleError(double x)
        : Error("potential pole encountered at x = " + std::to_string(x)), x_(x) {}
    double x() const { return x_; }

  private:
    double x_;
};

/// Integrator step size underflowed; x() reports where.
class StepFailure : public Error {
  public:
    explicit StepFailure(double x)
        : Error("integration step underflow at x = " + std::to_string(x)), x_(x) {}
    double x() const { return x_; }

  private:
    double x_;
};

/// Root refinement did not converge within the iteration budget.
class NoConvergence : public Error {
  public:
    explicit NoConvergence(double k)
        : Error("root refinement did not converge near k = " + std::to_string(k)) {}
};

/// Newton iterate left the search window.
class DivergedOutOfWindow : public Error {
  public:
    DivergedOutOfWindow(double k, double klo, double khi)
        : Error("root iterate k = " + std::to_string(k) + " left window [" +
                std::to_string(klo) + ", " + std::to_string(khi) + "]") {}
};

/// Zero of the characteristic function degenerate beyond order 4.
class OrderTooHigh : public Error {
  public:
    explicit OrderTooHigh(double k)
        : Error("characteristic zero at k = " + std::to_string(k) + " degenerate beyond order 4") {}
};

/// |D(k)| too large for k to count as a spectral point.
class NotARoot : public Error {
  public:
    NotARoot(double k, double absD)
        : Error("k = " + std::to_string(k) + " is not a root, |D| = " + std::to_string(absD)) {}
};

/// Root is not a double zero of the characteristic function.
class NotDoubleRoot : public Error {
  public:
    explicit NotDoubleRoot(double k)
        : Error("k = " + std::to_string(k) + " is not a double root") {}
};

/// Root-subspace bilinear data unusable for orthonormalization.
class DegenerateGram : public Error {
  public:
    explicit DegenerateGram(const std::string& what) : Error("degenerate Gram data: " + what) {}
};

/// Simple root whose eigenfunction has (numerically) zero bilinear norm.
class ZeroNormWithoutChain : public Error {
  public:
    explicit ZeroNormWithoutChain(double k)
        : Error("simple root k = " + std::to_string(k) +
                " has zero bilinear norm and no associated chain") {}
};

/// Grid functions of different length combined.
class GridMismatch : public Error {
  public:
    GridMismatch(std::size_t a, std::size_t b)
        : Error("grid size mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

/// Identically zero input where a nonzero function is required.
class ZeroFunction : public Error {
  public:
    ZeroFunction() : Error("zero function") {}
};

/// Argument outside a documented precondition.
class PreconditionError : public Error {
  public:
    explicit PreconditionError(const std::string& what) : Error("precondition violated: " + what) {}
};

inline std::string SyntaxError::format(std::size_t offset, const std::vector<std::string>& expected,
                                       const std::string& detail) {
    std::string msg = "syntax error at offset " + std::to_string(offset);
    if (!detail.empty()) msg += ": " + detail;
    if (!expected.empty()) {
        msg += " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += i + 1 == expected.size() ? " or " : ", ";
            msg += expected[i];
        }
        msg += ")";
    }
    return msg;
}

}  // namespace ptspec
