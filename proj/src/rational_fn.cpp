#include "biotf/rational_fn.hpp"

#include "biotf/errors.hpp"
#include "biotf/render.hpp"

namespace biotf {

RationalFn RationalFn::make(const SPoly& num, const SPoly& den) {
    if (den.is_zero()) throw ZeroDenominatorError();
    if (num.is_zero()) return RationalFn(SPoly(), SPoly(1));

    SPoly n = num;
    SPoly d = den;
    if (n.is_numeric() && d.is_numeric()) {
        const SPoly g = numeric_gcd(n, d);
        if (g.degree() > 0) {
            n = numeric_divmod(n, g).first;
            d = numeric_divmod(d, g).first;
        }
        const Rational inv_lead(1 / d.leading().constant_value());
        n = n * inv_lead;
        d = d * inv_lead;
    } else {
        const Rational c = rational_gcd(n.content(), d.content());
        if (c != 0 && c != 1) {
            const Rational inv_c(1 / c);
            n = n * inv_c;
            d = d * inv_c;
        }
        if (sign(d.leading().leading_coefficient()) < 0) {
            n = -n;
            d = -d;
        }
    }
    return RationalFn(std::move(n), std::move(d));
}

RationalFn RationalFn::operator+(const RationalFn& rhs) const {
    return make(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RationalFn RationalFn::operator-() const {
    RationalFn out = *this;
    out.num_ = -out.num_;
    if (!out.num_.is_zero() && out.num_.is_numeric() && out.den_.is_numeric()) {
        return make(out.num_, out.den_);
    }
    // symbolic case: sign normalization lives in den, so -num is canonical
    return out;
}

RationalFn RationalFn::operator-(const RationalFn& rhs) const { return *this + (-rhs); }

RationalFn RationalFn::operator*(const RationalFn& rhs) const {
    return make(num_ * rhs.num_, den_ * rhs.den_);
}

RationalFn RationalFn::operator/(const RationalFn& rhs) const {
    if (rhs.is_zero()) throw DivisionByZeroFnError();
    return make(num_ * rhs.den_, den_ * rhs.num_);
}

void RationalFn::collect_params(std::set<ParamId>& out) const {
    num_.collect_params(out);
    den_.collect_params(out);
}

std::complex<double> RationalFn::evaluate(const std::map<ParamId, Rational>& bindings,
                                          std::complex<double> s) const {
    const std::complex<double> d = den_.evaluate(bindings, s);
    if (std::abs(d) == 0.0) {
        throw EvalPoleError("s=" + render(s));
    }
    return num_.evaluate(bindings, s) / d;
}

bool equivalent(const RationalFn& a, const RationalFn& b) {
    return (a.num() * b.den() - b.num() * a.den()).is_zero();
}

RationalFn pow(const RationalFn& base, unsigned exp) {
    RationalFn acc = RationalFn::constant(rational(1));
    RationalFn b = base;
    while (exp > 0) {
        if (exp & 1u) acc = acc * b;
        b = b * b;
        exp >>= 1u;
    }
    return acc;
}

}  // namespace biotf
