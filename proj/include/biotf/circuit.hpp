#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biotf/block_diagram.hpp"
#include "biotf/errors.hpp"
#include "biotf/ode_model.hpp"

namespace biotf {

// Line-oriented, keyword-first circuit description (.gnc):
//
//   param <name> [positive] [= <rational>]
//   gene <name> degrade <param>
//   activate <gene> by <input-or-gene> gain <param>
//   repress <gene> by <input-or-gene> gain <param>
//   input <name>
//   output <gene>
//   feedback <gene> to <gene> gain <param> sign +|-
//   expect <rendered transfer function>     (optional, for check-equiv)
//   # comment (full-line or trailing)
//
// Exactly one input and one output; every referenced name must be declared;
// "s" is reserved for the Laplace variable.

enum class RegulationMode { activator, repressor };

struct ParamDecl {
    std::string name;
    bool positive = false;
    std::optional<Rational> value;
    SourceSpan span;
};

struct GeneDecl {
    std::string name;
    std::string degrade_param;
    SourceSpan span;
};

struct RegulationDecl {
    RegulationMode mode = RegulationMode::activator;
    std::string target_gene;
    std::string source;  // the input or an upstream gene
    std::string gain_param;
    SourceSpan span;
};

struct FeedbackDecl {
    std::string from_gene;
    std::string to_gene;
    std::string gain_param;
    FeedbackSign sign = FeedbackSign::positive;
    SourceSpan span;
};

struct IoDecl {
    std::string name;
    SourceSpan span;
};

struct ExpectDecl {
    RationalFn fn;
    SourceSpan span;
};

struct CircuitAst {
    std::vector<ParamDecl> params;
    std::vector<GeneDecl> genes;
    std::vector<RegulationDecl> regulations;
    std::vector<FeedbackDecl> feedbacks;
    std::optional<IoDecl> input;
    std::optional<IoDecl> output;
    std::optional<ExpectDecl> expect;

    bool operator==(const CircuitAst&) const;
};

// Parses and resolves a circuit program. Throws SyntaxError,
// DuplicateNameError, UndeclaredNameError, MalformedCircuitError; every error
// carries a span inside the source text.
CircuitAst parse_circuit(const std::string& source);

// Canonical program text; reparses to a structurally identical AST.
std::string render_circuit(const CircuitAst& ast);

struct ElaboratedCircuit {
    BlockDiagram diagram;
    LinearOde ode;
    std::map<ParamId, Rational> bindings;       // params declared with values
    std::optional<RationalFn> expected_tf;
};

// Builds the block diagram and the ODE from the same AST. Regulation chains
// compose in series, parallel regulators of one gene sum at its input
// junction, and a self-loop feedback declaration closes a loop around the
// gene's degradation lag. Throws UnsupportedTopologyError for regulation
// cycles not declared via feedback and for multi-gene feedback paths.
ElaboratedCircuit elaborate(const CircuitAst& ast);

}  // namespace biotf
