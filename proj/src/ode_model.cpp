#include "biotf/ode_model.hpp"

#include "biotf/errors.hpp"
#include "biotf/render.hpp"

namespace biotf {

LinearOde LinearOde::make(std::vector<ParamPoly> out_coeffs, std::vector<ParamPoly> in_coeffs,
                          std::set<ParamId> positive_params) {
    if (out_coeffs.empty() || in_coeffs.empty()) throw EmptyCoefficientsError();
    if (out_coeffs.back().is_zero()) throw ZeroLeadingCoefficientError();
    if (in_coeffs.size() > out_coeffs.size()) {
        throw ImproperSystemError(out_coeffs.size() - 1, in_coeffs.size() - 1);
    }
    return LinearOde(std::move(out_coeffs), std::move(in_coeffs), std::move(positive_params));
}

void LinearOde::collect_params(std::set<ParamId>& out) const {
    for (const auto& c : out_coeffs_) c.collect_params(out);
    for (const auto& c : in_coeffs_) c.collect_params(out);
}

std::pair<SPoly, SPoly> characteristic_polys(const LinearOde& ode) {
    return {SPoly(ode.out_coeffs()), SPoly(ode.in_coeffs())};
}

namespace {

// One LaplaceDerivRule step per nonzero coefficient: L[c * f^(k)] = c * s^k * F
// under zero initial conditions; then one LaplaceLinearity step summing them.
SPoly record_side(const std::vector<ParamPoly>& coeffs, std::vector<CertStep>& steps) {
    std::vector<std::string> term_strings;
    SPoly total;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        const SPoly coeff(coeffs[k]);
        const SPoly power = SPoly::s_power(k);
        const SPoly term = coeff * power;
        steps.push_back({CertRule::LaplaceDerivRule, {render(coeff), render(power)}, render(term)});
        term_strings.push_back(render(term));
        total = total + term;
    }
    if (term_strings.empty()) {
        // all-zero side transforms to the zero polynomial
        steps.push_back({CertRule::LaplaceLinearity, {"0"}, "0"});
        return SPoly();
    }
    steps.push_back({CertRule::LaplaceLinearity, std::move(term_strings), render(total)});
    return total;
}

}  // namespace

DerivationResult derive_transfer_function(const LinearOde& ode) {
    DerivationResult result;

    std::vector<CertStep> steps;
    const SPoly out_poly = record_side(ode.out_coeffs(), steps);
    const SPoly in_poly = record_side(ode.in_coeffs(), steps);
    result.tf = RationalFn::make(in_poly, out_poly);

    // Ledger mirrors the derivation's side conditions in a fixed order:
    // parameter positivity, differentiability, Laplace existence of input and
    // output, zero initial conditions, nonzero input transform, nonzero
    // characteristic polynomial.
    const ObligationOrigin origin{"derive_transfer_function", "ode"};
    for (const auto& p : ode.positive_params()) {
        result.obligations.push_back(Obligation{Positivity{p}, origin});
    }
    result.obligations.push_back(Obligation{Differentiability{}, origin});
    result.obligations.push_back(Obligation{LaplaceExists{"u"}, origin});
    result.obligations.push_back(Obligation{LaplaceExists{"y"}, origin});
    result.obligations.push_back(Obligation{ZeroInitCond{}, origin});
    result.obligations.push_back(Obligation{InputTransformNonzero{"u"}, origin});
    result.obligations.push_back(Obligation{NonzeroDenom{out_poly}, origin});

    const std::string rendered_tf = render(result.tf);
    steps.push_back({CertRule::CrossMultEq, {rendered_tf, rendered_tf}, "equal"});

    result.certificate.steps = std::move(steps);
    result.certificate.obligations = result.obligations;
    result.certificate.conclusion = "Y(s)/U(s) = " + rendered_tf;
    return result;
}

EquivalenceReport check_equivalence(const DerivationResult& a, const RationalFn& b_tf,
                                    const std::vector<Obligation>& b_obligations) {
    EquivalenceReport report;
    report.tf_a = a.tf;
    report.tf_b = b_tf;
    report.equivalent = equivalent(a.tf, b_tf);
    report.obligations = merge_obligations(a.obligations, b_obligations);
    return report;
}

}  // namespace biotf
