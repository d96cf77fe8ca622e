#include "biotf/expr_parse.hpp"

#include <cctype>

#include "biotf/errors.hpp"

namespace biotf {

namespace {

class ExprParser {
  public:
    explicit ExprParser(const std::string& text) : text_(text) {}

    SPoly parse_poly_whole() {
        SPoly p = poly();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input");
        return p;
    }

    RationalFn parse_fn_whole() {
        expect('(');
        SPoly num = poly();
        expect(')');
        expect('/');
        expect('(');
        SPoly den = poly();
        expect(')');
        skip_ws();
        if (pos_ != text_.size()) fail("end of input");
        return RationalFn::make(num, den);
    }

  private:
    [[noreturn]] void fail(const std::string& expected) {
        throw Error("expected " + expected + " at offset " + std::to_string(pos_) + " in '" +
                    text_ + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("'") + c + "'");
        ++pos_;
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string integer_token() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ == start) fail("integer");
        return text_.substr(start, pos_ - start);
    }

    std::string ident_token() {
        skip_ws();
        std::size_t start = pos_;
        auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
        auto tail = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
        if (pos_ >= text_.size() || !head(text_[pos_])) fail("identifier");
        ++pos_;
        while (pos_ < text_.size() && tail(text_[pos_])) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    unsigned exponent() {
        const std::string tok = integer_token();
        try {
            return static_cast<unsigned>(std::stoul(tok));
        } catch (const std::exception&) {
            fail("exponent in range");
        }
    }

    SPoly factor() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            SPoly inner = poly();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::string num = integer_token();
            std::string lit = num;
            // '/' continues the rational literal only when a digit follows
            std::size_t save = pos_;
            if (accept('/')) {
                if (std::isdigit(static_cast<unsigned char>(peek()))) {
                    lit += "/" + integer_token();
                } else {
                    pos_ = save;
                }
            }
            return SPoly(ParamPoly(rational_from_string(lit)));
        }
        const std::string name = ident_token();
        unsigned exp = 1;
        if (accept('^')) exp = exponent();
        if (name == "s") {
            return SPoly::s_power(exp);
        }
        Monomial m(std::vector<std::pair<ParamId, int>>{{ParamId{name}, static_cast<int>(exp)}});
        if (exp == 0) m = Monomial{};
        return SPoly(ParamPoly::term(m, rational(1)));
    }

    SPoly term() {
        SPoly acc = factor();
        while (accept('*')) acc = acc * factor();
        return acc;
    }

    SPoly poly() {
        SPoly acc;
        bool negative = accept('-');
        acc = negative ? -term() : term();
        while (true) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                break;
            }
        }
        return acc;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

SPoly parse_spoly(const std::string& text) { return ExprParser(text).parse_poly_whole(); }

RationalFn parse_rational_fn(const std::string& text) { return ExprParser(text).parse_fn_whole(); }

}  // namespace biotf
