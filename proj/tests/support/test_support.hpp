#pragma once

// Shared test utilities: seeded RNG, random value generators, and the
// independent reference implementations ("oracles") the suites check against.
// The generators are deliberately small-valued so cross-multiplication blowup
// stays readable in failure messages.

#include <complex>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "biotf/param_poly.hpp"
#include "biotf/rational_fn.hpp"
#include "biotf/spoly.hpp"

namespace biotf::testsupport {

inline std::uint64_t seed_from_env() {
    if (const char* env = std::getenv("BIOCIRCUIT_TF_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 20260809ULL;
}

inline std::mt19937_64 make_rng(std::uint64_t salt = 0) {
    return std::mt19937_64(seed_from_env() ^ (salt * 0x9e3779b97f4a7c15ULL));
}

inline Rational random_rational(std::mt19937_64& rng, long max_num = 9, long max_den = 4,
                                bool allow_zero = true) {
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    Rational q = rational(num(rng), den(rng));
    if (!allow_zero && q == 0) q = rational(1, den(rng));
    return q;
}

inline const std::vector<ParamId>& param_pool() {
    static const std::vector<ParamId> pool{ParamId{"alpha"}, ParamId{"gamma"}, ParamId{"beta"}};
    return pool;
}

inline ParamPoly random_param_poly(std::mt19937_64& rng, int max_terms = 2, int max_exp = 2,
                                   bool allow_zero = true, bool positive_coeffs = false) {
    std::uniform_int_distribution<int> term_count(allow_zero ? 0 : 1, max_terms);
    std::uniform_int_distribution<int> pool_index(0, static_cast<int>(param_pool().size()) - 1);
    std::uniform_int_distribution<int> exponent(0, max_exp);
    ParamPoly acc;
    const int n = term_count(rng);
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<ParamId, int>> factors;
        const int nf = std::uniform_int_distribution<int>(0, 2)(rng);
        for (int j = 0; j < nf; ++j) {
            const int e = exponent(rng);
            if (e > 0) factors.emplace_back(param_pool()[pool_index(rng)], e);
        }
        Rational c = random_rational(rng, 9, 4, false);
        if (positive_coeffs) c = abs(c);
        acc = acc + ParamPoly::term(Monomial(std::move(factors)), c);
    }
    if (!allow_zero && acc.is_zero()) acc = ParamPoly(1);
    return acc;
}

inline SPoly random_spoly(std::mt19937_64& rng, int max_deg = 3, bool allow_zero = true,
                          bool symbolic = true, bool positive_coeffs = false) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    const int d = deg(rng);
    std::vector<ParamPoly> coeffs;
    for (int k = 0; k <= d; ++k) {
        if (symbolic) {
            coeffs.push_back(random_param_poly(rng, 2, 2, true, positive_coeffs));
        } else {
            Rational c = random_rational(rng);
            if (positive_coeffs) c = abs(c);
            coeffs.push_back(ParamPoly(c));
        }
    }
    SPoly p{std::move(coeffs)};
    if (!allow_zero && p.is_zero()) {
        return p + SPoly(ParamPoly(1));
    }
    return p;
}

inline RationalFn random_rational_fn(std::mt19937_64& rng, bool allow_zero = true,
                                     bool symbolic = true) {
    const SPoly num = random_spoly(rng, 2, allow_zero, symbolic);
    const SPoly den = random_spoly(rng, 2, false, symbolic);
    return RationalFn::make(num, den);
}

// --- independent oracles ------------------------------------------------------

// Schoolbook expansion, written independently of SPoly::operator*.
inline SPoly naive_spoly_mul(const SPoly& a, const SPoly& b) {
    if (a.is_zero() || b.is_zero()) return SPoly();
    SPoly acc;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
            acc = acc + SPoly::s_power(i + j, a.coeffs()[i] * b.coeffs()[j]);
        }
    }
    return acc;
}

// Cross-multiplication equality using the naive product.
inline bool naive_equivalent(const RationalFn& a, const RationalFn& b) {
    return (naive_spoly_mul(a.num(), b.den()) - naive_spoly_mul(b.num(), a.den())).is_zero();
}

// Direct double-precision Horner evaluation: coefficients go to double first.
inline std::complex<double> horner_eval(const SPoly& p,
                                        const std::map<ParamId, Rational>& bindings,
                                        std::complex<double> s) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        double coeff = 0.0;
        for (const auto& [m, c] : p.coeffs()[i].terms()) {
            double term = to_double(c);
            for (const auto& [param, e] : m.factors()) {
                term *= std::pow(to_double(bindings.at(param)), e);
            }
            coeff += term;
        }
        acc = acc * s + coeff;
    }
    return acc;
}

inline std::complex<double> horner_eval(const RationalFn& f,
                                        const std::map<ParamId, Rational>& bindings,
                                        std::complex<double> s) {
    return horner_eval(f.num(), bindings, s) / horner_eval(f.den(), bindings, s);
}

}  // namespace biotf::testsupport
