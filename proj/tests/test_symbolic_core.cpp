#include <doctest.h>

#include "biotf/errors.hpp"
#include "biotf/expr_parse.hpp"
#include "biotf/render.hpp"
#include "support/test_support.hpp"

using namespace biotf;
using namespace biotf::testsupport;

namespace {

const ParamId kAlpha{"alpha"};
const ParamId kGamma{"gamma"};

SPoly s_plus(const ParamPoly& c) { return SPoly::s_power(1) + SPoly(c); }

}  // namespace

TEST_CASE("param poly collects like terms") {
    const ParamPoly a = ParamPoly(kAlpha) * rational(2);
    const ParamPoly b = ParamPoly(kAlpha) * rational(3);
    CHECK(a + b == ParamPoly(kAlpha) * rational(5));
}

TEST_CASE("param poly monomial product") {
    const ParamPoly prod = ParamPoly(kAlpha) * ParamPoly(kGamma);
    CHECK(prod.terms().size() == 1);
    CHECK(render(prod) == "alpha*gamma");
}

TEST_CASE("param poly additive identity over random values") {
    auto rng = make_rng(1);
    for (int i = 0; i < 100; ++i) {
        const ParamPoly p = random_param_poly(rng, 3, 3);
        CHECK(p + ParamPoly() == p);
    }
}

TEST_CASE("param poly exact arithmetic has no drift") {
    // (1/3)*3 == 1 exactly; doubles would not survive this round trip
    const ParamPoly third = ParamPoly(rational(1, 3));
    CHECK(third * rational(3) == ParamPoly(1));
}

TEST_CASE("spoly multiplicative identity") {
    const SPoly p = s_plus(ParamPoly(kAlpha));
    CHECK(p * SPoly(1) == p);
}

TEST_CASE("spoly expansion (s+1)(s+2)") {
    const SPoly prod = s_plus(ParamPoly(1)) * s_plus(ParamPoly(2));
    CHECK(prod == parse_spoly("s^2 + 3*s + 2"));
}

TEST_CASE("spoly degree of product vs expansion oracle") {
    auto rng = make_rng(2);
    for (int i = 0; i < 500; ++i) {
        const SPoly a = random_spoly(rng, 3, false);
        const SPoly b = random_spoly(rng, 3, false);
        const SPoly prod = a * b;
        CHECK(prod == naive_spoly_mul(a, b));
        CHECK(prod.degree() == a.degree() + b.degree());
    }
}

TEST_CASE("spoly trailing zero invariant") {
    const SPoly p{std::vector<ParamPoly>{ParamPoly(1), ParamPoly(0), ParamPoly(0)}};
    CHECK(p.degree() == 0);
    const SPoly diff = s_plus(ParamPoly(1)) - s_plus(ParamPoly(2));
    CHECK(diff.degree() == 0);  // s terms cancel
    CHECK((diff + SPoly(1)).is_zero());
}

TEST_CASE("rat_make strips numeric content and makes denominator monic") {
    const RationalFn f = RationalFn::make(parse_spoly("2*s + 2"), parse_spoly("2"));
    CHECK(render(f) == "(s + 1)/(1)");
}

TEST_CASE("rat_make leaves canonical symbolic pair unchanged") {
    const SPoly num{ParamPoly(kGamma)};
    const SPoly den = s_plus(ParamPoly(kAlpha));
    const RationalFn f = RationalFn::make(num, den);
    CHECK(f.num() == num);
    CHECK(f.den() == den);
}

TEST_CASE("rat_make rejects the zero denominator") {
    CHECK_THROWS_AS(RationalFn::make(SPoly(1), SPoly()), ZeroDenominatorError);
}

TEST_CASE("rat_make normalizes the zero function to 0/1") {
    const RationalFn z = RationalFn::make(SPoly(), s_plus(ParamPoly(kAlpha)));
    CHECK(render(z) == "(0)/(1)");
    CHECK(z == RationalFn());
}

TEST_CASE("rat_add common denominator example") {
    const RationalFn a = parse_rational_fn("(1)/(s + 1)");
    const RationalFn b = parse_rational_fn("(1)/(s + 2)");
    CHECK(a + b == parse_rational_fn("(2*s + 3)/(s^2 + 3*s + 2)"));
}

TEST_CASE("rat_mul cancellation is decided by cross-multiplied equality") {
    const RationalFn f = RationalFn::make(SPoly(ParamPoly(kGamma)), s_plus(ParamPoly(kAlpha)));
    const RationalFn g = RationalFn::make(s_plus(ParamPoly(kAlpha)), SPoly(1));
    const RationalFn gamma_fn = RationalFn::make(SPoly(ParamPoly(kGamma)), SPoly(1));
    CHECK(equivalent(f * g, gamma_fn));
}

TEST_CASE("rat_div rejects the zero divisor") {
    const RationalFn f = parse_rational_fn("(1)/(s + 1)");
    CHECK_THROWS_AS(f / RationalFn(), DivisionByZeroFnError);
}

TEST_CASE("multiplicative inverse over random nonzero functions") {
    auto rng = make_rng(3);
    const RationalFn one = RationalFn::constant(rational(1));
    for (int i = 0; i < 500; ++i) {
        const RationalFn a = random_rational_fn(rng, /*allow_zero=*/false);
        const RationalFn inv = one / a;
        CHECK(naive_equivalent(a * inv, one));
    }
}

TEST_CASE("rat_eq scalar multiple and sign") {
    CHECK(equivalent(RationalFn::make(parse_spoly("2*s + 2"), parse_spoly("2")),
                     RationalFn::make(parse_spoly("s + 1"), parse_spoly("1"))));
    const SPoly den = s_plus(ParamPoly(kAlpha));
    CHECK_FALSE(equivalent(RationalFn::make(SPoly(ParamPoly(kGamma)), den),
                           RationalFn::make(-SPoly(ParamPoly(kGamma)), den)));
}

TEST_CASE("rat_eq is an equivalence relation on random triples") {
    auto rng = make_rng(4);
    for (int i = 0; i < 200; ++i) {
        const RationalFn f = random_rational_fn(rng, false);
        // structurally distinct but equal values: multiply by m/m symbolically
        const SPoly m1 = random_spoly(rng, 2, false, true);
        const SPoly m2 = random_spoly(rng, 2, false, true);
        const RationalFn a = RationalFn::make(f.num() * m1, f.den() * m1);
        const RationalFn b = RationalFn::make(f.num() * m2, f.den() * m2);
        CHECK(equivalent(f, f));
        CHECK(equivalent(a, f));
        CHECK(equivalent(f, a));
        const bool ab = equivalent(a, b);
        CHECK(ab);  // both equal f, so transitivity demands a ~ b
        const RationalFn other = random_rational_fn(rng, false);
        if (!equivalent(f, other)) {
            CHECK_FALSE(equivalent(a, other));
        }
    }
}

TEST_CASE("rat_eval matches the closed-form example") {
    const RationalFn f = RationalFn::make(SPoly(ParamPoly(kGamma)), s_plus(ParamPoly(kAlpha)));
    const std::map<ParamId, Rational> bindings{{kGamma, rational(2)}, {kAlpha, rational(1)}};
    const auto v = f.evaluate(bindings, {1.0, 0.0});
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(0.0));
}

TEST_CASE("rat_eval reports poles and unbound parameters") {
    const RationalFn inv_s = RationalFn::make(SPoly(1), SPoly::s_power(1));
    CHECK_THROWS_AS(inv_s.evaluate({}, {0.0, 0.0}), EvalPoleError);
    const RationalFn f = RationalFn::make(SPoly(ParamPoly(kGamma)), s_plus(ParamPoly(kAlpha)));
    CHECK_THROWS_AS(f.evaluate({{kGamma, rational(1)}}, {1.0, 0.0}), UnboundParameterError);
}

TEST_CASE("rat_eval agrees with direct double Horner evaluation") {
    auto rng = make_rng(5);
    std::uniform_real_distribution<double> coord(0.5, 3.0);
    int checked = 0;
    while (checked < 100) {
        // positive coefficients keep the comparison free of cancellation
        const SPoly num = random_spoly(rng, 3, false, true, /*positive_coeffs=*/true);
        const SPoly den = random_spoly(rng, 3, false, true, /*positive_coeffs=*/true);
        const RationalFn f = RationalFn::make(num, den);
        std::map<ParamId, Rational> bindings;
        for (const auto& p : param_pool()) {
            bindings[p] = rational(std::uniform_int_distribution<long>(1, 8)(rng), 2);
        }
        const std::complex<double> s{coord(rng), coord(rng)};
        const auto reference = horner_eval(f, bindings, s);
        if (std::abs(reference) < 1e-9) continue;
        const auto value = f.evaluate(bindings, s);
        CHECK(std::abs(value - reference) / std::abs(reference) < 1e-12);
        ++checked;
    }
}

TEST_CASE("canonicalization is idempotent over random functions") {
    auto rng = make_rng(6);
    for (int i = 0; i < 500; ++i) {
        const bool symbolic = i % 2 == 0;
        const RationalFn f = random_rational_fn(rng, true, symbolic);
        CHECK(RationalFn::make(f.num(), f.den()) == f);
    }
}

TEST_CASE("field axioms hold up to rat_eq on random instances") {
    auto rng = make_rng(7);
    const RationalFn zero;
    const RationalFn one = RationalFn::constant(rational(1));
    for (int i = 0; i < 500; ++i) {
        // alternate symbolic and numeric instances
        const bool symbolic = i % 2 == 0;
        const RationalFn a = random_rational_fn(rng, true, symbolic);
        const RationalFn b = random_rational_fn(rng, true, symbolic);
        const RationalFn c = random_rational_fn(rng, true, symbolic);

        CHECK(equivalent((a + b) + c, a + (b + c)));
        CHECK(equivalent((a * b) * c, a * (b * c)));
        CHECK(equivalent(a + b, b + a));
        CHECK(equivalent(a * b, b * a));
        CHECK(equivalent(a * (b + c), a * b + a * c));
        CHECK(equivalent(a + zero, a));
        CHECK(equivalent(a * one, a));
        CHECK(equivalent(a + (-a), zero));
        if (!a.is_zero()) {
            CHECK(equivalent(a * (one / a), one));
        }
    }
}

TEST_CASE("rat_eq implies equal evaluation at non-pole points") {
    auto rng = make_rng(8);
    std::map<ParamId, Rational> bindings;
    for (const auto& p : param_pool()) bindings[p] = rational(3, 2);
    for (int i = 0; i < 200; ++i) {
        const RationalFn f = random_rational_fn(rng, false);
        const SPoly m = random_spoly(rng, 2, false, true);
        const RationalFn g = RationalFn::make(f.num() * m, f.den() * m);
        REQUIRE(equivalent(f, g));
        const std::complex<double> s{1.5, 0.75};
        std::complex<double> fv, gv;
        try {
            fv = f.evaluate(bindings, s);
            gv = g.evaluate(bindings, s);
        } catch (const EvalPoleError&) {
            continue;
        }
        const double scale = std::max(std::abs(fv), 1e-30);
        CHECK(std::abs(fv - gv) / scale < 1e-10);
    }
}

TEST_CASE("rendering round-trips through the parser") {
    auto rng = make_rng(9);
    for (int i = 0; i < 500; ++i) {
        const SPoly p = random_spoly(rng, 4);
        CHECK(parse_spoly(render(p)) == p);
        const RationalFn f = random_rational_fn(rng, true, i % 2 == 0);
        CHECK(parse_rational_fn(render(f)) == f);
    }
}

TEST_CASE("rendering fixed forms") {
    CHECK(render(SPoly()) == "0");
    CHECK(render(RationalFn()) == "(0)/(1)");
    CHECK(render(parse_spoly("s^2 - 2*s + 1/2")) == "s^2 - 2*s + 1/2");
    const RationalFn f =
        RationalFn::make(SPoly(ParamPoly(kGamma)), SPoly::s_power(1) + SPoly(ParamPoly(kAlpha)));
    CHECK(render(f) == "(gamma)/(s + alpha)");
}

TEST_CASE("parser rejects malformed expressions") {
    CHECK_THROWS_AS(parse_spoly(""), Error);
    CHECK_THROWS_AS(parse_spoly("s +"), Error);
    CHECK_THROWS_AS(parse_spoly("(s"), Error);
    CHECK_THROWS_AS(parse_spoly("s^"), Error);
    CHECK_THROWS_AS(parse_rational_fn("(1)/(0)"), ZeroDenominatorError);
    CHECK_THROWS_AS(parse_rational_fn("s + 1"), Error);
}
