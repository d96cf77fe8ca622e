#include "biotf/block_diagram.hpp"

#include "biotf/errors.hpp"
#include "biotf/render.hpp"

namespace biotf {

BlockDiagram BlockDiagram::tf(RationalFn fn) { return BlockDiagram(TfNode{std::move(fn)}); }

BlockDiagram BlockDiagram::series(std::vector<BlockDiagram> children) {
    if (children.empty()) throw EmptyComponentListError();
    return BlockDiagram(SeriesNode{std::move(children)});
}

BlockDiagram BlockDiagram::sum(std::vector<BlockDiagram> children) {
    if (children.empty()) throw EmptyComponentListError();
    return BlockDiagram(SumNode{std::move(children)});
}

BlockDiagram BlockDiagram::pickoff(RationalFn gain, std::vector<BlockDiagram> branches) {
    if (branches.empty()) throw EmptyComponentListError();
    return BlockDiagram(PickoffNode{std::move(gain), std::move(branches)});
}

BlockDiagram BlockDiagram::feedback(RationalFn forward, RationalFn feedback_fn,
                                    FeedbackSign sign) {
    return BlockDiagram(FeedbackNode{std::move(forward), std::move(feedback_fn), sign});
}

RationalFn series_composition(std::span<const RationalFn> components) {
    if (components.empty()) throw EmptyComponentListError();
    RationalFn acc = components[0];
    for (std::size_t i = 1; i < components.size(); ++i) acc = acc * components[i];
    return acc;
}

RationalFn summing_junction(std::span<const RationalFn> components) {
    if (components.empty()) throw EmptyComponentListError();
    RationalFn acc = components[0];
    for (std::size_t i = 1; i < components.size(); ++i) acc = acc + components[i];
    return acc;
}

std::vector<RationalFn> pickoff_branches(const RationalFn& gain,
                                         std::span<const RationalFn> branches) {
    if (branches.empty()) throw EmptyComponentListError();
    std::vector<RationalFn> out;
    out.reserve(branches.size());
    for (const auto& b : branches) out.push_back(gain * b);
    return out;
}

RationalFn loop_branch_term(const RationalFn& forward, const RationalFn& feedback, unsigned k) {
    return pow(forward * feedback, k);
}

ClosedLoop close_loop(const RationalFn& forward, const RationalFn& feedback, FeedbackSign sign) {
    // forward/(1 -+ forward*feedback), cross-multiplied before canonicalizing
    // so the nonzero factor den(forward) never enters both sides of the pair
    // (symbolic pairs are not gcd-reduced).
    const SPoly loop_num = forward.num() * feedback.num();
    const SPoly loop_den = forward.den() * feedback.den();
    const SPoly closed_den =
        sign == FeedbackSign::positive ? loop_den - loop_num : loop_den + loop_num;
    if (closed_den.is_zero()) throw AlgebraicLoopError();
    const RationalFn closed = RationalFn::make(forward.num() * feedback.den(), closed_den);
    ClosedLoop out{closed, {}};
    out.obligations.push_back(
        Obligation{Convergence{forward, feedback}, {"close_loop", ""}});
    out.obligations.push_back(
        Obligation{NonzeroDenom{closed.den()}, {"close_loop", ""}});
    return out;
}

namespace {

struct Reducer {
    std::vector<Obligation> obligations;
    std::vector<CertStep> steps;

    RationalFn visit(const BlockDiagram& d, const std::string& path) {
        return std::visit([&](const auto& node) { return reduce_node(node, path); }, d.node());
    }

    RationalFn reduce_node(const TfNode& node, const std::string& path) {
        if (!node.fn.den().is_numeric_constant()) {
            obligations.push_back(Obligation{NonzeroDenom{node.fn.den()}, {"tf_leaf", path}});
        }
        return node.fn;
    }

    RationalFn reduce_node(const SeriesNode& node, const std::string& path) {
        const auto fns = visit_children(node.children, path);
        const RationalFn result = series_composition(fns);
        steps.push_back({CertRule::SeriesComp, rendered(fns), render(result)});
        return result;
    }

    RationalFn reduce_node(const SumNode& node, const std::string& path) {
        const auto fns = visit_children(node.children, path);
        const RationalFn result = summing_junction(fns);
        steps.push_back({CertRule::SummJun, rendered(fns), render(result)});
        return result;
    }

    RationalFn reduce_node(const PickoffNode& node, const std::string& path) {
        const auto fns = visit_children(node.branches, path);
        const auto scaled = pickoff_branches(node.gain, fns);
        std::vector<std::string> inputs{render(node.gain)};
        for (const auto& f : fns) inputs.push_back(render(f));
        std::string list = "[";
        for (std::size_t i = 0; i < scaled.size(); ++i) {
            if (i > 0) list += "; ";
            list += render(scaled[i]);
        }
        list += "]";
        steps.push_back({CertRule::PickPoint, std::move(inputs), list});
        // parallel branches rejoin at an implicit summation junction
        const RationalFn result = summing_junction(scaled);
        steps.push_back({CertRule::SummJun, rendered(scaled), render(result)});
        return result;
    }

    RationalFn reduce_node(const FeedbackNode& node, const std::string& path) {
        ClosedLoop closed = close_loop(node.forward, node.feedback, node.sign);
        for (auto& ob : closed.obligations) {
            ob.origin.location = path;
            obligations.push_back(std::move(ob));
        }
        steps.push_back({CertRule::FeedbackClosedForm,
                         {render(node.forward), render(node.feedback),
                          node.sign == FeedbackSign::positive ? "+" : "-"},
                         render(closed.fn)});
        return closed.fn;
    }

    std::vector<RationalFn> visit_children(const std::vector<BlockDiagram>& children,
                                           const std::string& path) {
        std::vector<RationalFn> fns;
        fns.reserve(children.size());
        for (std::size_t i = 0; i < children.size(); ++i) {
            fns.push_back(visit(children[i], path + "." + std::to_string(i)));
        }
        return fns;
    }

    static std::vector<std::string> rendered(const std::vector<RationalFn>& fns) {
        std::vector<std::string> out;
        out.reserve(fns.size());
        for (const auto& f : fns) out.push_back(render(f));
        return out;
    }
};

}  // namespace

ReducedDiagram reduce(const BlockDiagram& diagram) {
    Reducer reducer;
    const RationalFn fn = reducer.visit(diagram, "root");
    Certificate cert;
    cert.steps = std::move(reducer.steps);
    cert.obligations = reducer.obligations;
    const std::string rendered = render(fn);
    cert.steps.push_back({CertRule::CrossMultEq, {rendered, rendered}, "equal"});
    cert.conclusion = "H(s) = " + rendered;
    return ReducedDiagram{fn, std::move(reducer.obligations), std::move(cert)};
}

}  // namespace biotf
