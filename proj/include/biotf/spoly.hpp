#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "biotf/param_poly.hpp"

namespace biotf {

// Polynomial in the Laplace variable s with ParamPoly coefficients, lowest
// power first. The zero polynomial is the empty coefficient sequence; any
// other value has a nonzero trailing (highest-degree) coefficient.
class SPoly {
  public:
    SPoly() = default;
    SPoly(const ParamPoly& constant);  // NOLINT: implicit by design
    SPoly(long constant) : SPoly(ParamPoly(constant)) {}
    explicit SPoly(std::vector<ParamPoly> coeffs);

    // The monomial c * s^power.
    static SPoly s_power(std::size_t power, const ParamPoly& c = ParamPoly(1));

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is reported as 0
    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    const std::vector<ParamPoly>& coeffs() const { return coeffs_; }
    const ParamPoly& coeff(std::size_t power) const;
    const ParamPoly& leading() const;

    // True when every coefficient is parameter-free.
    bool is_numeric() const;
    // True when the polynomial is a parameter-free constant (degree 0 or zero).
    bool is_numeric_constant() const { return coeffs_.size() <= 1 && is_numeric(); }

    SPoly operator+(const SPoly& rhs) const;
    SPoly operator-() const;
    SPoly operator-(const SPoly& rhs) const;
    SPoly operator*(const SPoly& rhs) const;
    SPoly operator*(const Rational& scalar) const;

    bool operator==(const SPoly& rhs) const { return coeffs_ == rhs.coeffs_; }

    // Positive gcd of the rational coefficients of all ParamPoly terms.
    Rational content() const;

    void collect_params(std::set<ParamId>& out) const;

    // Exact coefficient evaluation followed by complex Horner in s.
    std::complex<double> evaluate(const std::map<ParamId, Rational>& bindings,
                                  std::complex<double> s) const;

  private:
    void trim();

    std::vector<ParamPoly> coeffs_;
};

inline SPoly operator*(const Rational& scalar, const SPoly& p) { return p * scalar; }

// Quotient/remainder for parameter-free polynomials (rational coefficients).
// Precondition: divisor nonzero and numeric.
std::pair<SPoly, SPoly> numeric_divmod(const SPoly& dividend, const SPoly& divisor);

// Monic gcd over Q[s] for parameter-free polynomials; gcd(0,0) = 0.
SPoly numeric_gcd(const SPoly& a, const SPoly& b);

}  // namespace biotf
