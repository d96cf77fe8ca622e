#pragma once

#include <stdexcept>
#include <string>

namespace biotf {

// Base class for all structured errors raised by the toolkit.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- symbolic core ---------------------------------------------------------

class ZeroDenominatorError : public Error {
  public:
    ZeroDenominatorError() : Error("denominator is the zero polynomial") {}
};

class DivisionByZeroFnError : public Error {
  public:
    DivisionByZeroFnError() : Error("division by the zero rational function") {}
};

class EvalPoleError : public Error {
  public:
    explicit EvalPoleError(const std::string& where)
        : Error("denominator vanishes at evaluation point " + where) {}
};

class UnboundParameterError : public Error {
  public:
    explicit UnboundParameterError(const std::string& param)
        : Error("unbound parameter: " + param), param_(param) {}
    const std::string& param() const { return param_; }

  private:
    std::string param_;
};

// --- block diagrams ---------------------------------------------------------

class EmptyComponentListError : public Error {
  public:
    EmptyComponentListError() : Error("component list must be non-empty") {}
};

class AlgebraicLoopError : public Error {
  public:
    AlgebraicLoopError() : Error("feedback loop has identically zero closed-form denominator") {}
};

// --- ODE models -------------------------------------------------------------

class ImproperSystemError : public Error {
  public:
    ImproperSystemError(std::size_t out_order, std::size_t in_order)
        : Error("input order " + std::to_string(in_order) + " exceeds output order " +
                std::to_string(out_order)) {}
};

class EmptyCoefficientsError : public Error {
  public:
    EmptyCoefficientsError() : Error("coefficient list must be non-empty") {}
};

class ZeroLeadingCoefficientError : public Error {
  public:
    ZeroLeadingCoefficientError() : Error("highest-order output coefficient must be nonzero") {}
};

// --- numerical oracle -------------------------------------------------------

class StepTooLargeError : public Error {
  public:
    StepTooLargeError(double dt, double pole_bound)
        : Error("dt=" + std::to_string(dt) + " too large for pole magnitude bound " +
                std::to_string(pole_bound)) {}
};

class RegionOfConvergenceError : public Error {
  public:
    RegionOfConvergenceError(double re_s, double a)
        : Error("Re(s)=" + std::to_string(re_s) + " not greater than exponential order a=" +
                std::to_string(a)) {}
};

class InputTransformNearZeroError : public Error {
  public:
    explicit InputTransformNearZeroError(const std::string& where)
        : Error("input transform magnitude below threshold at " + where) {}
};

// --- circuit DSL ------------------------------------------------------------

struct SourceSpan {
    int line = 0;        // 1-based
    int col_begin = 0;   // 1-based, inclusive
    int col_end = 0;     // 1-based, exclusive

    bool operator==(const SourceSpan&) const = default;
};

class CircuitError : public Error {
  public:
    CircuitError(const std::string& what, SourceSpan span) : Error(what), span_(span) {}
    SourceSpan span() const { return span_; }

  private:
    SourceSpan span_;
};

class SyntaxError : public CircuitError {
  public:
    SyntaxError(SourceSpan span, const std::string& expected)
        : CircuitError("syntax error at line " + std::to_string(span.line) + ", column " +
                           std::to_string(span.col_begin) + ": expected " + expected,
                       span),
          expected_(expected) {}
    const std::string& expected() const { return expected_; }

  private:
    std::string expected_;
};

class DuplicateNameError : public CircuitError {
  public:
    DuplicateNameError(const std::string& name, SourceSpan span)
        : CircuitError("duplicate name: " + name, span), name_(name) {}
    const std::string& name() const { return name_; }

  private:
    std::string name_;
};

class UndeclaredNameError : public CircuitError {
  public:
    UndeclaredNameError(const std::string& name, SourceSpan span)
        : CircuitError("undeclared name: " + name, span), name_(name) {}
    const std::string& name() const { return name_; }

  private:
    std::string name_;
};

class UnsupportedTopologyError : public CircuitError {
  public:
    UnsupportedTopologyError(const std::string& detail, SourceSpan span)
        : CircuitError("unsupported topology: " + detail, span) {}
};

class MalformedCircuitError : public CircuitError {
  public:
    MalformedCircuitError(const std::string& detail, SourceSpan span)
        : CircuitError(detail, span) {}
};

// --- certificates -----------------------------------------------------------

class MalformedCertificateError : public Error {
  public:
    explicit MalformedCertificateError(const std::string& detail)
        : Error("malformed certificate: " + detail) {}
};

}  // namespace biotf
