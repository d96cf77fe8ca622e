#include "biotf/obligation.hpp"

#include <set>

#include "biotf/render.hpp"

namespace biotf {

namespace {

struct KindNameVisitor {
    std::string operator()(const NonzeroDenom&) const { return "NonzeroDenom"; }
    std::string operator()(const Positivity&) const { return "Positivity"; }
    std::string operator()(const Convergence&) const { return "Convergence"; }
    std::string operator()(const LaplaceExists&) const { return "LaplaceExists"; }
    std::string operator()(const ZeroInitCond&) const { return "ZeroInitCond"; }
    std::string operator()(const Differentiability&) const { return "Differentiability"; }
    std::string operator()(const InputTransformNonzero&) const { return "InputTransformNonzero"; }
};

struct ArgsVisitor {
    std::vector<std::string> operator()(const NonzeroDenom& p) const { return {render(p.denom)}; }
    std::vector<std::string> operator()(const Positivity& p) const { return {p.param.name}; }
    std::vector<std::string> operator()(const Convergence& p) const {
        return {render(p.forward), render(p.feedback)};
    }
    std::vector<std::string> operator()(const LaplaceExists& p) const { return {p.role}; }
    std::vector<std::string> operator()(const ZeroInitCond&) const { return {}; }
    std::vector<std::string> operator()(const Differentiability&) const { return {}; }
    std::vector<std::string> operator()(const InputTransformNonzero& p) const { return {p.role}; }
};

}  // namespace

std::string Obligation::kind_name() const { return std::visit(KindNameVisitor{}, payload); }

std::vector<std::string> Obligation::args() const { return std::visit(ArgsVisitor{}, payload); }

std::string Obligation::semantic_key() const {
    std::string key = kind_name();
    for (const auto& a : args()) {
        key += "|";
        key += a;
    }
    return key;
}

std::vector<Obligation> merge_obligations(const std::vector<Obligation>& a,
                                          const std::vector<Obligation>& b) {
    std::vector<Obligation> out;
    std::set<std::string> seen;
    for (const auto* list : {&a, &b}) {
        for (const auto& ob : *list) {
            if (seen.insert(ob.semantic_key()).second) out.push_back(ob);
        }
    }
    return out;
}

}  // namespace biotf
