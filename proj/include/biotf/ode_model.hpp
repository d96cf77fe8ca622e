#pragma once

#include <set>
#include <utility>
#include <vector>

#include "biotf/certificate.hpp"
#include "biotf/obligation.hpp"
#include "biotf/rational_fn.hpp"

namespace biotf {

// Linear constant-coefficient ODE
//     sum_k out_coeffs[k] * y^(k)(t) = sum_k in_coeffs[k] * u^(k)(t)
// with coefficient index = derivative order. The system must be proper
// (output order >= input order) and the highest-order output coefficient
// nonzero. Parameters listed in positive_params are rate constants the caller
// declares positive; positivity is recorded as an obligation, never checked.
class LinearOde {
  public:
    static LinearOde make(std::vector<ParamPoly> out_coeffs, std::vector<ParamPoly> in_coeffs,
                          std::set<ParamId> positive_params = {});

    const std::vector<ParamPoly>& out_coeffs() const { return out_coeffs_; }
    const std::vector<ParamPoly>& in_coeffs() const { return in_coeffs_; }
    const std::set<ParamId>& positive_params() const { return positive_params_; }

    std::size_t output_order() const { return out_coeffs_.size() - 1; }
    std::size_t input_order() const { return in_coeffs_.size() - 1; }

    void collect_params(std::set<ParamId>& out) const;

  private:
    LinearOde(std::vector<ParamPoly> out_coeffs, std::vector<ParamPoly> in_coeffs,
              std::set<ParamId> positive_params)
        : out_coeffs_(std::move(out_coeffs)),
          in_coeffs_(std::move(in_coeffs)),
          positive_params_(std::move(positive_params)) {}

    std::vector<ParamPoly> out_coeffs_;
    std::vector<ParamPoly> in_coeffs_;
    std::set<ParamId> positive_params_;
};

// Laplace-domain polynomials (output side, input side) obtained by replacing
// k-th derivatives with s^k under zero initial conditions.
std::pair<SPoly, SPoly> characteristic_polys(const LinearOde& ode);

struct DerivationResult {
    RationalFn tf;
    std::vector<Obligation> obligations;
    Certificate certificate;
};

// Transfer function in_poly/out_poly together with the side-condition ledger:
// positivity of each declared-positive parameter, differentiability, Laplace
// existence for input and output, zero initial conditions, a nonzero input
// transform, and a nonzero characteristic polynomial.
DerivationResult derive_transfer_function(const LinearOde& ode);

struct EquivalenceReport {
    bool equivalent = false;
    RationalFn tf_a;
    RationalFn tf_b;
    std::vector<Obligation> obligations;  // union of both ledgers
};

// Cross-multiplication equality of a derivation result against an
// independently obtained transfer function (typically a diagram reduction).
EquivalenceReport check_equivalence(const DerivationResult& a, const RationalFn& b_tf,
                                    const std::vector<Obligation>& b_obligations);

}  // namespace biotf
