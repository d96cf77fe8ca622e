#pragma once

#include <complex>
#include <map>

#include "biotf/spoly.hpp"

namespace biotf {

// Ratio of two SPoly in canonical form; the transfer-function type.
//
// Canonical form:
//  * zero is always 0/1;
//  * parameter-free pairs are reduced to coprime num/den with monic den;
//  * pairs with symbolic coefficients are normalized by stripping the common
//    numeric content and making the leading coefficient of den's leading
//    ParamPoly positive. Symbolic gcd cancellation is deliberately not
//    attempted; equality is decided by cross-multiplication (equivalent()).
class RationalFn {
  public:
    // 0/1
    RationalFn() : num_(), den_(1) {}

    // Throws ZeroDenominatorError when den is the zero polynomial.
    static RationalFn make(const SPoly& num, const SPoly& den);

    static RationalFn constant(const Rational& value) { return make(SPoly(ParamPoly(value)), SPoly(1)); }
    static RationalFn from_poly(const SPoly& p) { return make(p, SPoly(1)); }

    const SPoly& num() const { return num_; }
    const SPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    RationalFn operator+(const RationalFn& rhs) const;
    RationalFn operator-() const;
    RationalFn operator-(const RationalFn& rhs) const;
    RationalFn operator*(const RationalFn& rhs) const;
    // Throws DivisionByZeroFnError when rhs is the zero function.
    RationalFn operator/(const RationalFn& rhs) const;

    // Structural identity of the canonical representation.
    bool operator==(const RationalFn& rhs) const = default;

    void collect_params(std::set<ParamId>& out) const;

    // Substitutes parameter values and evaluates at s. Throws EvalPoleError
    // when the substituted denominator vanishes, UnboundParameterError when a
    // parameter is missing from the bindings.
    std::complex<double> evaluate(const std::map<ParamId, Rational>& bindings,
                                  std::complex<double> s) const;

  private:
    RationalFn(SPoly num, SPoly den) : num_(std::move(num)), den_(std::move(den)) {}

    SPoly num_;
    SPoly den_;
};

// Exact equality on the fraction field: a.num*b.den - b.num*a.den == 0.
bool equivalent(const RationalFn& a, const RationalFn& b);

RationalFn pow(const RationalFn& base, unsigned exp);

}  // namespace biotf
