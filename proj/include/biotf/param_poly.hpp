#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "biotf/rational.hpp"

namespace biotf {

// Named circuit parameter (a degradation rate, a regulation gain, ...).
// Identity is the name.
struct ParamId {
    std::string name;

    auto operator<=>(const ParamId&) const = default;
};

// Product of parameters with positive integer exponents, e.g. alpha*gamma^2.
// Factors are kept sorted by name; the empty monomial is the constant 1.
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(const ParamId& p) : factors_{{p, 1}} {}
    Monomial(std::vector<std::pair<ParamId, int>> factors);

    const std::vector<std::pair<ParamId, int>>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    int total_degree() const;

    Monomial operator*(const Monomial& rhs) const;

    // Total order: lexicographic on the sorted name sequence, ties broken by
    // the exponent vector. Fixes storage order, printing and hashing.
    std::strong_ordering operator<=>(const Monomial& rhs) const;
    bool operator==(const Monomial& rhs) const { return factors_ == rhs.factors_; }

  private:
    std::vector<std::pair<ParamId, int>> factors_;
};

// Exact multivariate polynomial in named parameters over the rationals.
// No zero coefficients are stored; term order is the Monomial total order.
class ParamPoly {
  public:
    ParamPoly() = default;
    ParamPoly(const Rational& constant);          // NOLINT: implicit by design
    ParamPoly(long constant) : ParamPoly(rational(constant)) {}
    explicit ParamPoly(const ParamId& p);

    static ParamPoly term(const Monomial& m, const Rational& coeff);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant value; zero polynomial yields 0. Caller checks is_constant().
    Rational constant_value() const;

    const std::map<Monomial, Rational>& terms() const { return terms_; }

    // Largest monomial under the term order and its coefficient.
    const Monomial& leading_monomial() const;
    const Rational& leading_coefficient() const;

    ParamPoly operator+(const ParamPoly& rhs) const;
    ParamPoly operator-() const;
    ParamPoly operator-(const ParamPoly& rhs) const;
    ParamPoly operator*(const ParamPoly& rhs) const;
    ParamPoly operator*(const Rational& scalar) const;

    bool operator==(const ParamPoly& rhs) const { return terms_ == rhs.terms_; }

    // Positive gcd of all coefficient rationals; 0 for the zero polynomial.
    Rational content() const;

    void collect_params(std::set<ParamId>& out) const;

    // Exact evaluation at rational parameter values. Throws UnboundParameterError.
    Rational evaluate(const std::map<ParamId, Rational>& bindings) const;

  private:
    void insert_term(const Monomial& m, const Rational& coeff);

    std::map<Monomial, Rational> terms_;
};

inline ParamPoly operator*(const Rational& scalar, const ParamPoly& p) { return p * scalar; }

}  // namespace biotf
