#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "biotf/circuit.hpp"
#include "biotf/expr_parse.hpp"
#include "biotf/render.hpp"

namespace biotf {

namespace {

struct Token {
    std::string text;
    SourceSpan span;
};

// Splits one source line into whitespace-separated tokens; '=' is always its
// own token. Returns the comment-stripped remainder offset for expect lines.
std::vector<Token> tokenize_line(const std::string& line, int line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t start = i;
        if (line[i] == '=') {
            ++i;
        } else {
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
                   line[i] != '=' && line[i] != '#') {
                ++i;
            }
        }
        out.push_back(Token{line.substr(start, i - start),
                            SourceSpan{line_no, static_cast<int>(start) + 1,
                                       static_cast<int>(i) + 1}});
    }
    return out;
}

class LineParser {
  public:
    LineParser(std::vector<Token> tokens, int line_no)
        : tokens_(std::move(tokens)), line_no_(line_no) {}

    const Token& next(const std::string& expected) {
        if (pos_ >= tokens_.size()) {
            throw SyntaxError(end_span(), expected);
        }
        return tokens_[pos_++];
    }

    std::string identifier(const std::string& what) {
        const Token& t = next(what);
        if (!is_identifier(t.text)) throw SyntaxError(t.span, what);
        return t.text;
    }

    void keyword(const std::string& kw) {
        const Token& t = next("'" + kw + "'");
        if (t.text != kw) throw SyntaxError(t.span, "'" + kw + "'");
    }

    bool try_keyword(const std::string& kw) {
        if (pos_ < tokens_.size() && tokens_[pos_].text == kw) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool at_end() const { return pos_ >= tokens_.size(); }

    void finish() {
        if (!at_end()) throw SyntaxError(tokens_[pos_].span, "end of line");
    }

    SourceSpan end_span() const {
        if (tokens_.empty()) return SourceSpan{line_no_, 1, 1};
        const SourceSpan last = tokens_.back().span;
        return SourceSpan{line_no_, last.col_end, last.col_end};
    }

    const Token& peek_token() const { return tokens_[pos_]; }

    static bool is_identifier(const std::string& s) {
        if (s.empty()) return false;
        if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
        return std::all_of(s.begin(), s.end(), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
        });
    }

  private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int line_no_;
};

SourceSpan line_span(const std::vector<Token>& tokens, int line_no) {
    if (tokens.empty()) return SourceSpan{line_no, 1, 1};
    return SourceSpan{line_no, tokens.front().span.col_begin, tokens.back().span.col_end};
}

void resolve(const CircuitAst& ast) {
    std::map<std::string, SourceSpan> declared;
    auto declare = [&](const std::string& name, SourceSpan span) {
        if (name == "s") {
            throw MalformedCircuitError("'s' is reserved for the Laplace variable", span);
        }
        auto [it, inserted] = declared.emplace(name, span);
        if (!inserted) throw DuplicateNameError(name, span);
    };

    std::set<std::string> params, genes;
    for (const auto& p : ast.params) {
        declare(p.name, p.span);
        params.insert(p.name);
    }
    for (const auto& g : ast.genes) {
        declare(g.name, g.span);
        genes.insert(g.name);
    }
    if (!ast.input) {
        throw MalformedCircuitError("missing input declaration", SourceSpan{1, 1, 1});
    }
    declare(ast.input->name, ast.input->span);
    if (!ast.output) {
        throw MalformedCircuitError("missing output declaration", SourceSpan{1, 1, 1});
    }

    auto need_param = [&](const std::string& name, SourceSpan span) {
        if (!params.contains(name)) throw UndeclaredNameError(name, span);
    };
    auto need_gene = [&](const std::string& name, SourceSpan span) {
        if (!genes.contains(name)) throw UndeclaredNameError(name, span);
    };

    for (const auto& g : ast.genes) need_param(g.degrade_param, g.span);
    for (const auto& r : ast.regulations) {
        need_gene(r.target_gene, r.span);
        if (r.source != ast.input->name && !genes.contains(r.source)) {
            throw UndeclaredNameError(r.source, r.span);
        }
        need_param(r.gain_param, r.span);
    }
    for (const auto& f : ast.feedbacks) {
        need_gene(f.from_gene, f.span);
        need_gene(f.to_gene, f.span);
        need_param(f.gain_param, f.span);
    }
    need_gene(ast.output->name, ast.output->span);
}

}  // namespace

CircuitAst parse_circuit(const std::string& source) {
    CircuitAst ast;
    std::istringstream stream(source);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto tokens = tokenize_line(line, line_no);
        if (tokens.empty()) continue;

        const std::string head = tokens[0].text;
        if (head == "expect") {
            // the rest of the line (comment stripped) is one expression
            if (ast.expect) {
                throw MalformedCircuitError("multiple expect declarations", tokens[0].span);
            }
            std::string rest = line;
            if (auto hash = rest.find('#'); hash != std::string::npos) rest = rest.substr(0, hash);
            const std::size_t after = rest.find("expect") + 6;
            const std::string expr = rest.substr(after);
            try {
                ast.expect = ExpectDecl{parse_rational_fn(expr), line_span(tokens, line_no)};
            } catch (const Error& e) {
                throw SyntaxError(line_span(tokens, line_no),
                                  std::string("transfer function: ") + e.what());
            }
            continue;
        }

        LineParser p(std::move(tokens), line_no);
        p.keyword(head);  // consume; head is validated below
        if (head == "param") {
            ParamDecl decl;
            decl.name = p.identifier("parameter name");
            decl.positive = p.try_keyword("positive");
            if (p.try_keyword("=")) {
                const Token& value = p.next("rational value");
                try {
                    decl.value = rational_from_string(value.text);
                } catch (const Error&) {
                    throw SyntaxError(value.span, "rational value");
                }
            }
            p.finish();
            decl.span = SourceSpan{line_no, 1, p.end_span().col_end};
            ast.params.push_back(std::move(decl));
        } else if (head == "gene") {
            GeneDecl decl;
            decl.name = p.identifier("gene name");
            p.keyword("degrade");
            decl.degrade_param = p.identifier("degradation parameter");
            p.finish();
            decl.span = SourceSpan{line_no, 1, p.end_span().col_end};
            ast.genes.push_back(std::move(decl));
        } else if (head == "activate" || head == "repress") {
            RegulationDecl decl;
            decl.mode = head == "activate" ? RegulationMode::activator : RegulationMode::repressor;
            decl.target_gene = p.identifier("target gene");
            p.keyword("by");
            decl.source = p.identifier("regulating input or gene");
            p.keyword("gain");
            decl.gain_param = p.identifier("gain parameter");
            p.finish();
            decl.span = SourceSpan{line_no, 1, p.end_span().col_end};
            ast.regulations.push_back(std::move(decl));
        } else if (head == "input") {
            if (ast.input) {
                throw MalformedCircuitError("multiple input declarations", p.end_span());
            }
            IoDecl decl;
            decl.name = p.identifier("input name");
            p.finish();
            decl.span = SourceSpan{line_no, 1, p.end_span().col_end};
            ast.input = decl;
        } else if (head == "output") {
            if (ast.output) {
                throw MalformedCircuitError("multiple output declarations", p.end_span());
            }
            IoDecl decl;
            decl.name = p.identifier("output gene");
            p.finish();
            decl.span = SourceSpan{line_no, 1, p.end_span().col_end};
            ast.output = decl;
        } else if (head == "feedback") {
            FeedbackDecl decl;
            decl.from_gene = p.identifier("feedback source gene");
            p.keyword("to");
            decl.to_gene = p.identifier("feedback target gene");
            p.keyword("gain");
            decl.gain_param = p.identifier("gain parameter");
            p.keyword("sign");
            const Token& sgn = p.next("'+' or '-'");
            if (sgn.text == "+") {
                decl.sign = FeedbackSign::positive;
            } else if (sgn.text == "-") {
                decl.sign = FeedbackSign::negative;
            } else {
                throw SyntaxError(sgn.span, "'+' or '-'");
            }
            p.finish();
            decl.span = SourceSpan{line_no, 1, p.end_span().col_end};
            ast.feedbacks.push_back(std::move(decl));
        } else {
            throw SyntaxError(
                p.end_span(),
                "declaration keyword (param, gene, activate, repress, input, output, feedback, "
                "expect)");
        }
    }
    resolve(ast);
    return ast;
}

namespace {

bool same(const ParamDecl& a, const ParamDecl& b) {
    if (a.name != b.name || a.positive != b.positive || a.value.has_value() != b.value.has_value())
        return false;
    return !a.value || *a.value == *b.value;
}
bool same(const GeneDecl& a, const GeneDecl& b) {
    return a.name == b.name && a.degrade_param == b.degrade_param;
}
bool same(const RegulationDecl& a, const RegulationDecl& b) {
    return a.mode == b.mode && a.target_gene == b.target_gene && a.source == b.source &&
           a.gain_param == b.gain_param;
}
bool same(const FeedbackDecl& a, const FeedbackDecl& b) {
    return a.from_gene == b.from_gene && a.to_gene == b.to_gene && a.gain_param == b.gain_param &&
           a.sign == b.sign;
}

template <typename T>
bool same_list(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!same(a[i], b[i])) return false;
    }
    return true;
}

}  // namespace

// Structural identity: spans are ignored.
bool CircuitAst::operator==(const CircuitAst& rhs) const {
    if (!same_list(params, rhs.params) || !same_list(genes, rhs.genes) ||
        !same_list(regulations, rhs.regulations) || !same_list(feedbacks, rhs.feedbacks)) {
        return false;
    }
    if (input.has_value() != rhs.input.has_value() ||
        (input && input->name != rhs.input->name)) {
        return false;
    }
    if (output.has_value() != rhs.output.has_value() ||
        (output && output->name != rhs.output->name)) {
        return false;
    }
    if (expect.has_value() != rhs.expect.has_value()) return false;
    return !expect || expect->fn == rhs.expect->fn;
}

std::string render_circuit(const CircuitAst& ast) {
    std::ostringstream out;
    for (const auto& p : ast.params) {
        out << "param " << p.name;
        if (p.positive) out << " positive";
        if (p.value) out << " = " << to_string(*p.value);
        out << "\n";
    }
    for (const auto& g : ast.genes) {
        out << "gene " << g.name << " degrade " << g.degrade_param << "\n";
    }
    for (const auto& r : ast.regulations) {
        out << (r.mode == RegulationMode::activator ? "activate " : "repress ") << r.target_gene
            << " by " << r.source << " gain " << r.gain_param << "\n";
    }
    for (const auto& f : ast.feedbacks) {
        out << "feedback " << f.from_gene << " to " << f.to_gene << " gain " << f.gain_param
            << " sign " << (f.sign == FeedbackSign::positive ? "+" : "-") << "\n";
    }
    if (ast.input) out << "input " << ast.input->name << "\n";
    if (ast.output) out << "output " << ast.output->name << "\n";
    if (ast.expect) out << "expect " << render(ast.expect->fn) << "\n";
    return out.str();
}

}  // namespace biotf
