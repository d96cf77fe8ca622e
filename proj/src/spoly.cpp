#include "biotf/spoly.hpp"

#include "biotf/errors.hpp"

namespace biotf {

SPoly::SPoly(const ParamPoly& constant) {
    if (!constant.is_zero()) coeffs_.push_back(constant);
}

SPoly::SPoly(std::vector<ParamPoly> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

SPoly SPoly::s_power(std::size_t power, const ParamPoly& c) {
    SPoly out;
    if (c.is_zero()) return out;
    out.coeffs_.assign(power + 1, ParamPoly());
    out.coeffs_[power] = c;
    return out;
}

const ParamPoly& SPoly::coeff(std::size_t power) const {
    static const ParamPoly zero;
    return power < coeffs_.size() ? coeffs_[power] : zero;
}

const ParamPoly& SPoly::leading() const {
    if (coeffs_.empty()) throw Error("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

bool SPoly::is_numeric() const {
    for (const auto& c : coeffs_) {
        if (!c.is_constant()) return false;
    }
    return true;
}

void SPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

SPoly SPoly::operator+(const SPoly& rhs) const {
    SPoly out;
    out.coeffs_.resize(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i) {
        out.coeffs_[i] = coeff(i) + rhs.coeff(i);
    }
    out.trim();
    return out;
}

SPoly SPoly::operator-() const {
    SPoly out;
    out.coeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.coeffs_.push_back(-c);
    return out;
}

SPoly SPoly::operator-(const SPoly& rhs) const { return *this + (-rhs); }

SPoly SPoly::operator*(const SPoly& rhs) const {
    SPoly out;
    if (is_zero() || rhs.is_zero()) return out;
    out.coeffs_.assign(coeffs_.size() + rhs.coeffs_.size() - 1, ParamPoly());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            out.coeffs_[i + j] = out.coeffs_[i + j] + coeffs_[i] * rhs.coeffs_[j];
        }
    }
    out.trim();
    return out;
}

SPoly SPoly::operator*(const Rational& scalar) const {
    SPoly out;
    if (scalar == 0) return out;
    out.coeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.coeffs_.push_back(c * scalar);
    return out;
}

Rational SPoly::content() const {
    Rational g = 0;
    for (const auto& c : coeffs_) g = rational_gcd(g, c.content());
    return g;
}

void SPoly::collect_params(std::set<ParamId>& out) const {
    for (const auto& c : coeffs_) c.collect_params(out);
}

std::complex<double> SPoly::evaluate(const std::map<ParamId, Rational>& bindings,
                                     std::complex<double> s) const {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc = acc * s + std::complex<double>(to_double(coeffs_[i].evaluate(bindings)), 0.0);
    }
    return acc;
}

std::pair<SPoly, SPoly> numeric_divmod(const SPoly& dividend, const SPoly& divisor) {
    if (divisor.is_zero()) throw Error("polynomial division by zero");
    if (!dividend.is_numeric() || !divisor.is_numeric()) {
        throw Error("numeric_divmod requires parameter-free polynomials");
    }
    std::vector<Rational> rem(dividend.coeffs().size());
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] = dividend.coeff(i).constant_value();
    const std::size_t dd = divisor.degree();
    const Rational lead = divisor.leading().constant_value();

    std::vector<Rational> quot;
    if (rem.size() > dd) quot.assign(rem.size() - dd, rational(0));
    while (rem.size() >= dd + 1 && !rem.empty()) {
        const Rational factor(rem.back() / lead);
        const std::size_t shift = rem.size() - 1 - dd;
        quot[shift] = factor;
        for (std::size_t i = 0; i <= dd; ++i) {
            rem[shift + i] = Rational(rem[shift + i] - factor * divisor.coeff(i).constant_value());
        }
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (rem.size() <= dd) break;
    }

    auto to_spoly = [](const std::vector<Rational>& cs) {
        std::vector<ParamPoly> ps;
        ps.reserve(cs.size());
        for (const auto& c : cs) ps.emplace_back(c);
        return SPoly(std::move(ps));
    };
    return {to_spoly(quot), to_spoly(rem)};
}

SPoly numeric_gcd(const SPoly& a, const SPoly& b) {
    SPoly x = a;
    SPoly y = b;
    while (!y.is_zero()) {
        auto [q, r] = numeric_divmod(x, y);
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    // monic normalization
    const Rational inv_lead(1 / x.leading().constant_value());
    return x * inv_lead;
}

}  // namespace biotf
