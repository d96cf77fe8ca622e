#include "biotf/param_poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "biotf/errors.hpp"

namespace biotf {

Rational rational_from_string(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) {
        throw Error("not a rational literal: '" + text + "'");
    }
    if (q.get_den() == 0) {
        throw Error("rational literal with zero denominator: '" + text + "'");
    }
    q.canonicalize();
    return q;
}

Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    mpz_class num_gcd, den_lcm;
    mpz_gcd(num_gcd.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
    Rational g(num_gcd, den_lcm);
    g.canonicalize();
    return abs(g);
}

Rational rational_pow(const Rational& base, unsigned exp) {
    Rational acc = 1;
    Rational b = base;
    while (exp > 0) {
        if (exp & 1u) acc = Rational(acc * b);
        b = Rational(b * b);
        exp >>= 1u;
    }
    return acc;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// --- Monomial ----------------------------------------------------------------

Monomial::Monomial(std::vector<std::pair<ParamId, int>> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // merge repeated names, drop zero exponents
    std::vector<std::pair<ParamId, int>> merged;
    for (const auto& [p, e] : factors_) {
        if (!merged.empty() && merged.back().first == p) {
            merged.back().second += e;
        } else {
            merged.emplace_back(p, e);
        }
    }
    std::erase_if(merged, [](const auto& f) { return f.second == 0; });
    for (const auto& [p, e] : merged) {
        if (e < 0) throw Error("negative exponent in monomial: " + p.name);
    }
    factors_ = std::move(merged);
}

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& [p, e] : factors_) d += e;
    return d;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
    std::vector<std::pair<ParamId, int>> all = factors_;
    all.insert(all.end(), rhs.factors_.begin(), rhs.factors_.end());
    return Monomial(std::move(all));
}

std::strong_ordering Monomial::operator<=>(const Monomial& rhs) const {
    const auto n = std::min(factors_.size(), rhs.factors_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = factors_[i].first <=> rhs.factors_[i].first; c != 0) return c;
    }
    if (auto c = factors_.size() <=> rhs.factors_.size(); c != 0) return c;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (auto c = factors_[i].second <=> rhs.factors_[i].second; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

// --- ParamPoly ---------------------------------------------------------------

ParamPoly::ParamPoly(const Rational& constant) {
    if (constant != 0) terms_.emplace(Monomial{}, constant);
}

ParamPoly::ParamPoly(const ParamId& p) { terms_.emplace(Monomial(p), rational(1)); }

ParamPoly ParamPoly::term(const Monomial& m, const Rational& coeff) {
    ParamPoly poly;
    if (coeff != 0) poly.terms_.emplace(m, coeff);
    return poly;
}

bool ParamPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational ParamPoly::constant_value() const {
    if (terms_.empty()) return rational(0);
    return terms_.begin()->second;
}

const Monomial& ParamPoly::leading_monomial() const {
    if (terms_.empty()) throw Error("leading monomial of the zero polynomial");
    return terms_.rbegin()->first;
}

const Rational& ParamPoly::leading_coefficient() const {
    if (terms_.empty()) throw Error("leading coefficient of the zero polynomial");
    return terms_.rbegin()->second;
}

void ParamPoly::insert_term(const Monomial& m, const Rational& coeff) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (coeff != 0) terms_.emplace(m, coeff);
        return;
    }
    Rational sum(it->second + coeff);
    if (sum == 0) {
        terms_.erase(it);
    } else {
        it->second = sum;
    }
}

ParamPoly ParamPoly::operator+(const ParamPoly& rhs) const {
    ParamPoly out = *this;
    for (const auto& [m, c] : rhs.terms_) out.insert_term(m, c);
    return out;
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, Rational(-c));
    return out;
}

ParamPoly ParamPoly::operator-(const ParamPoly& rhs) const { return *this + (-rhs); }

ParamPoly ParamPoly::operator*(const ParamPoly& rhs) const {
    ParamPoly out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : rhs.terms_) {
            out.insert_term(ma * mb, Rational(ca * cb));
        }
    }
    return out;
}

ParamPoly ParamPoly::operator*(const Rational& scalar) const {
    ParamPoly out;
    if (scalar == 0) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, Rational(c * scalar));
    return out;
}

Rational ParamPoly::content() const {
    Rational g = 0;
    for (const auto& [m, c] : terms_) g = rational_gcd(g, c);
    return g;
}

void ParamPoly::collect_params(std::set<ParamId>& out) const {
    for (const auto& [m, c] : terms_) {
        for (const auto& [p, e] : m.factors()) out.insert(p);
    }
}

Rational ParamPoly::evaluate(const std::map<ParamId, Rational>& bindings) const {
    Rational acc = 0;
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (const auto& [p, e] : m.factors()) {
            auto it = bindings.find(p);
            if (it == bindings.end()) throw UnboundParameterError(p.name);
            term = Rational(term * rational_pow(it->second, static_cast<unsigned>(e)));
        }
        acc = Rational(acc + term);
    }
    return acc;
}

}  // namespace biotf
