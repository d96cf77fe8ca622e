#include "biotf/render.hpp"

#include <algorithm>
#include <cstdio>

namespace biotf {

namespace {

struct Piece {
    bool negative = false;
    std::string text;
};

std::string join_pieces(const std::vector<Piece>& pieces) {
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i == 0) {
            if (pieces[i].negative) out += "-";
        } else {
            out += pieces[i].negative ? " - " : " + ";
        }
        out += pieces[i].text;
    }
    return out;
}

std::string render_factor_chain(const Rational& coeff_abs, const Monomial& m,
                                std::size_t s_power) {
    std::vector<std::string> factors;
    if (coeff_abs != 1 || (m.is_unit() && s_power == 0)) {
        factors.push_back(to_string(coeff_abs));
    }
    for (const auto& [p, e] : m.factors()) {
        factors.push_back(e == 1 ? p.name : p.name + "^" + std::to_string(e));
    }
    if (s_power == 1) {
        factors.emplace_back("s");
    } else if (s_power >= 2) {
        factors.push_back("s^" + std::to_string(s_power));
    }
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i > 0) out += "*";
        out += factors[i];
    }
    return out;
}

// Pieces for a ParamPoly: total degree descending, then name order, so a
// polynomial reads "alpha^2 + alpha - k + 1".
std::vector<Piece> param_poly_pieces(const ParamPoly& p, std::size_t s_power) {
    std::vector<const std::pair<const Monomial, Rational>*> terms;
    terms.reserve(p.terms().size());
    for (const auto& t : p.terms()) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(), [](const auto* a, const auto* b) {
        const int da = a->first.total_degree();
        const int db = b->first.total_degree();
        if (da != db) return da > db;
        return a->first < b->first;
    });
    std::vector<Piece> pieces;
    for (const auto* t : terms) {
        Piece piece;
        piece.negative = sign(t->second) < 0;
        piece.text = render_factor_chain(abs(t->second), t->first, s_power);
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

}  // namespace

std::string render(const ParamPoly& p) {
    if (p.is_zero()) return "0";
    return join_pieces(param_poly_pieces(p, 0));
}

std::string render(const SPoly& p) {
    if (p.is_zero()) return "0";
    std::vector<Piece> pieces;
    for (std::size_t k = p.coeffs().size(); k-- > 0;) {
        const ParamPoly& c = p.coeff(k);
        if (c.is_zero()) continue;
        if (c.terms().size() == 1) {
            const auto& [m, r] = *c.terms().begin();
            Piece piece;
            piece.negative = sign(r) < 0;
            piece.text = render_factor_chain(abs(r), m, k);
            pieces.push_back(std::move(piece));
        } else if (k == 0) {
            // constant terms splice in without parentheses
            auto tail = param_poly_pieces(c, 0);
            pieces.insert(pieces.end(), tail.begin(), tail.end());
        } else {
            Piece piece;
            piece.text = "(" + render(c) + ")";
            piece.text += k == 1 ? "*s" : "*s^" + std::to_string(k);
            pieces.push_back(std::move(piece));
        }
    }
    return join_pieces(pieces);
}

std::string render(const RationalFn& f) {
    return "(" + render(f.num()) + ")/(" + render(f.den()) + ")";
}

std::string render(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

std::string render(std::complex<double> z) {
    if (z.imag() == 0.0) return render(z.real());
    std::string out = render(z.real());
    out += z.imag() < 0 ? "-" : "+";
    out += render(std::abs(z.imag()));
    out += "i";
    return out;
}

}  // namespace biotf
