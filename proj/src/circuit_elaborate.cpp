#include <functional>
#include <map>
#include <optional>
#include <set>

#include "biotf/circuit.hpp"

namespace biotf {

namespace {

// Transfer function of a chain segment kept as an uncanonicalized polynomial
// pair; this is the ODE-route composition and stays independent of the
// RationalFn arithmetic used by the diagram route.
struct PolyPair {
    SPoly num{1};
    SPoly den{1};
};

struct Built {
    std::optional<BlockDiagram> diagram;  // empty for the circuit input itself
    PolyPair pair;
};

struct Elaborator {
    const CircuitAst& ast;
    std::map<std::string, const GeneDecl*> genes;
    std::map<std::string, std::vector<const RegulationDecl*>> regs_by_target;
    std::map<std::string, const FeedbackDecl*> self_loops;
    std::set<std::string> consumed_loops;

    explicit Elaborator(const CircuitAst& ast_) : ast(ast_) {
        for (const auto& g : ast.genes) genes.emplace(g.name, &g);
        for (const auto& r : ast.regulations) regs_by_target[r.target_gene].push_back(&r);
        for (const auto& f : ast.feedbacks) {
            if (f.from_gene != f.to_gene) {
                throw UnsupportedTopologyError(
                    "feedback across distinct genes ('" + f.from_gene + "' to '" + f.to_gene +
                        "') is not supported; only self-loops are",
                    f.span);
            }
            auto [it, inserted] = self_loops.emplace(f.from_gene, &f);
            if (!inserted) {
                throw UnsupportedTopologyError(
                    "gene '" + f.from_gene + "' has more than one feedback declaration", f.span);
            }
        }
    }

    Built build(const std::string& source, std::set<std::string>& on_path) {
        if (source == ast.input->name) return Built{};
        const GeneDecl* gene = genes.at(source);
        if (on_path.contains(source)) {
            throw UnsupportedTopologyError(
                "regulation cycle through gene '" + source +
                    "'; loops must be declared with the feedback keyword",
                gene->span);
        }
        auto it = regs_by_target.find(source);
        if (it == regs_by_target.end()) {
            throw UnsupportedTopologyError(
                "gene '" + source + "' is not regulated; no path from the input", gene->span);
        }
        on_path.insert(source);

        // each regulator contributes gain * upstream at the gene's input junction
        std::vector<BlockDiagram> branch_diagrams;
        std::vector<PolyPair> branch_pairs;
        for (const RegulationDecl* reg : it->second) {
            Built upstream = build(reg->source, on_path);
            const Rational gain_sign =
                reg->mode == RegulationMode::activator ? rational(1) : rational(-1);
            const ParamPoly gain =
                ParamPoly(ParamId{reg->gain_param}) * gain_sign;
            const RationalFn gain_fn = RationalFn::make(SPoly(gain), SPoly(1));
            if (upstream.diagram) {
                branch_diagrams.push_back(BlockDiagram::series(
                    {std::move(*upstream.diagram), BlockDiagram::tf(gain_fn)}));
            } else {
                branch_diagrams.push_back(BlockDiagram::tf(gain_fn));
            }
            branch_pairs.push_back(
                PolyPair{upstream.pair.num * SPoly(gain), upstream.pair.den});
        }
        on_path.erase(source);

        PolyPair junction = branch_pairs[0];
        for (std::size_t i = 1; i < branch_pairs.size(); ++i) {
            junction = PolyPair{
                junction.num * branch_pairs[i].den + branch_pairs[i].num * junction.den,
                junction.den * branch_pairs[i].den};
        }

        // degradation lag 1/(s + alpha), possibly wrapped in a self-loop
        const ParamPoly alpha{ParamId{gene->degrade_param}};
        const SPoly lag_den = SPoly::s_power(1) + SPoly(alpha);
        const RationalFn lag_fn = RationalFn::make(SPoly(1), lag_den);

        BlockDiagram lag_node = BlockDiagram::tf(lag_fn);
        PolyPair lag_pair{SPoly(1), lag_den};
        if (auto loop = self_loops.find(source); loop != self_loops.end()) {
            const FeedbackDecl* fb = loop->second;
            consumed_loops.insert(source);
            const ParamPoly k{ParamId{fb->gain_param}};
            const RationalFn k_fn = RationalFn::make(SPoly(k), SPoly(1));
            lag_node = BlockDiagram::feedback(lag_fn, k_fn, fb->sign);
            lag_pair.den = fb->sign == FeedbackSign::positive ? lag_den - SPoly(k)
                                                              : lag_den + SPoly(k);
            if (lag_pair.den.is_zero()) {
                throw UnsupportedTopologyError("feedback loop cancels the degradation lag",
                                               fb->span);
            }
        }

        Built out;
        std::vector<BlockDiagram> children;
        if (branch_diagrams.size() == 1) {
            children.push_back(std::move(branch_diagrams[0]));
        } else {
            children.push_back(BlockDiagram::sum(std::move(branch_diagrams)));
        }
        children.push_back(std::move(lag_node));
        out.diagram = BlockDiagram::series(std::move(children));
        out.pair = PolyPair{junction.num * lag_pair.num, junction.den * lag_pair.den};
        return out;
    }
};

}  // namespace

ElaboratedCircuit elaborate(const CircuitAst& ast) {
    Elaborator el(ast);
    std::set<std::string> on_path;
    Built built = el.build(ast.output->name, on_path);

    for (const auto& f : ast.feedbacks) {
        if (!el.consumed_loops.contains(f.from_gene)) {
            throw UnsupportedTopologyError(
                "feedback gene '" + f.from_gene + "' is not on the input-output path", f.span);
        }
    }

    std::set<ParamId> used;
    built.pair.num.collect_params(used);
    built.pair.den.collect_params(used);
    std::set<ParamId> positives;
    std::map<ParamId, Rational> bindings;
    for (const auto& p : ast.params) {
        const ParamId id{p.name};
        if (p.positive && used.contains(id)) positives.insert(id);
        if (p.value) bindings.emplace(id, *p.value);
    }

    std::vector<ParamPoly> in_coeffs = built.pair.num.coeffs();
    if (in_coeffs.empty()) in_coeffs.push_back(ParamPoly(0));  // cancelled regulation paths
    LinearOde ode =
        LinearOde::make(built.pair.den.coeffs(), std::move(in_coeffs), std::move(positives));

    ElaboratedCircuit out{std::move(*built.diagram), std::move(ode), std::move(bindings),
                          std::nullopt};
    if (ast.expect) out.expected_tf = ast.expect->fn;
    return out;
}

}  // namespace biotf
