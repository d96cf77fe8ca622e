#include "biotf/certificate.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <set>

#include "biotf/errors.hpp"
#include "biotf/expr_parse.hpp"
#include "biotf/render.hpp"

namespace biotf {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kRuleNames[] = {
    "SeriesComp",      "SummJun",          "PickPoint", "FeedbackClosedForm",
    "LaplaceLinearity", "LaplaceDerivRule", "CrossMultEq",
};

}  // namespace

const char* cert_rule_name(CertRule rule) { return kRuleNames[static_cast<int>(rule)]; }

std::optional<CertRule> cert_rule_from_name(const std::string& name) {
    for (int i = 0; i < static_cast<int>(std::size(kRuleNames)); ++i) {
        if (name == kRuleNames[i]) return static_cast<CertRule>(i);
    }
    return std::nullopt;
}

Certificate concat_certificates(const Certificate& first, const Certificate& second) {
    Certificate out;
    out.steps = first.steps;
    out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
    out.obligations = merge_obligations(first.obligations, second.obligations);
    out.conclusion = second.conclusion;
    return out;
}

std::string emit(const Certificate& cert, const CertificateMeta& meta) {
    ordered_json doc;
    doc["steps"] = ordered_json::array();
    for (const auto& step : cert.steps) {
        ordered_json s;
        s["rule"] = cert_rule_name(step.rule);
        s["inputs"] = step.inputs;
        s["output"] = step.output;
        doc["steps"].push_back(std::move(s));
    }
    doc["obligations"] = ordered_json::array();
    for (const auto& ob : cert.obligations) {
        ordered_json o;
        o["kind"] = ob.kind_name();
        o["args"] = ob.args();
        o["origin"] = {{"rule", ob.origin.rule}, {"location", ob.origin.location}};
        doc["obligations"].push_back(std::move(o));
    }
    doc["conclusion"] = cert.conclusion;
    doc["meta"] = {{"tool", meta.tool},
                   {"version", meta.version},
                   {"source", meta.source},
                   {"generated", meta.generated}};
    return doc.dump(2) + "\n";
}

namespace {

ObligationPayload payload_from_json(const std::string& kind,
                                    const std::vector<std::string>& args) {
    auto need = [&](std::size_t n) {
        if (args.size() != n) {
            throw MalformedCertificateError("obligation " + kind + " expects " +
                                            std::to_string(n) + " args");
        }
    };
    if (kind == "NonzeroDenom") {
        need(1);
        return NonzeroDenom{parse_spoly(args[0])};
    }
    if (kind == "Positivity") {
        need(1);
        return Positivity{ParamId{args[0]}};
    }
    if (kind == "Convergence") {
        need(2);
        return Convergence{parse_rational_fn(args[0]), parse_rational_fn(args[1])};
    }
    if (kind == "LaplaceExists") {
        need(1);
        return LaplaceExists{args[0]};
    }
    if (kind == "ZeroInitCond") {
        need(0);
        return ZeroInitCond{};
    }
    if (kind == "Differentiability") {
        need(0);
        return Differentiability{};
    }
    if (kind == "InputTransformNonzero") {
        need(1);
        return InputTransformNonzero{args[0]};
    }
    throw MalformedCertificateError("unknown obligation kind: " + kind);
}

}  // namespace

Certificate parse_certificate(const std::string& json_text, CertificateMeta* meta) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedCertificateError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("steps") || !doc.contains("obligations") ||
            !doc.contains("conclusion") || !doc.contains("meta")) {
            throw MalformedCertificateError(
                "expected object with steps, obligations, conclusion, meta");
        }
        Certificate cert;
        for (const auto& s : doc.at("steps")) {
            const std::string rule_name = s.at("rule").get<std::string>();
            auto rule = cert_rule_from_name(rule_name);
            if (!rule) throw MalformedCertificateError("unknown rule: " + rule_name);
            CertStep step;
            step.rule = *rule;
            step.inputs = s.at("inputs").get<std::vector<std::string>>();
            step.output = s.at("output").get<std::string>();
            cert.steps.push_back(std::move(step));
        }
        for (const auto& o : doc.at("obligations")) {
            Obligation ob{payload_from_json(o.at("kind").get<std::string>(),
                                            o.at("args").get<std::vector<std::string>>()),
                          ObligationOrigin{o.at("origin").at("rule").get<std::string>(),
                                           o.at("origin").at("location").get<std::string>()}};
            cert.obligations.push_back(std::move(ob));
        }
        cert.conclusion = doc.at("conclusion").get<std::string>();
        if (meta != nullptr) {
            const auto& m = doc.at("meta");
            meta->tool = m.value("tool", "");
            meta->version = m.value("version", "");
            meta->source = m.value("source", "");
            meta->generated = m.value("generated", "");
        }
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedCertificateError(std::string("bad structure: ") + e.what());
    } catch (const MalformedCertificateError&) {
        throw;
    } catch (const Error& e) {
        throw MalformedCertificateError(e.what());
    }
}

namespace {

// Replay re-derives each step output from its stored inputs.

RationalFn parsed_fn(const std::string& text) { return parse_rational_fn(text); }

std::string canonical_fn_or_throw(const std::string& text) {
    const RationalFn f = parse_rational_fn(text);
    const std::string again = render(f);
    if (again != text) {
        throw Error("operand not in canonical form: '" + text + "' (canonical: '" + again + "')");
    }
    return again;
}

std::string canonical_spoly_or_throw(const std::string& text) {
    const SPoly p = parse_spoly(text);
    const std::string again = render(p);
    if (again != text) {
        throw Error("polynomial not in canonical form: '" + text + "'");
    }
    return again;
}

std::vector<std::string> split_fn_list(const std::string& text) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw Error("expected '[fn; fn; ...]' list, got '" + text + "'");
    }
    std::vector<std::string> parts;
    std::string body = text.substr(1, text.size() - 2);
    std::size_t start = 0;
    while (true) {
        std::size_t sep = body.find("; ", start);
        if (sep == std::string::npos) {
            parts.push_back(body.substr(start));
            break;
        }
        parts.push_back(body.substr(start, sep - start));
        start = sep + 2;
    }
    return parts;
}

std::string recompute_step(const CertStep& step) {
    switch (step.rule) {
        case CertRule::SeriesComp: {
            if (step.inputs.empty()) throw Error("SeriesComp needs at least one input");
            RationalFn acc = parsed_fn(canonical_fn_or_throw(step.inputs[0]));
            for (std::size_t i = 1; i < step.inputs.size(); ++i) {
                acc = acc * parsed_fn(canonical_fn_or_throw(step.inputs[i]));
            }
            return render(acc);
        }
        case CertRule::SummJun: {
            if (step.inputs.empty()) throw Error("SummJun needs at least one input");
            RationalFn acc = parsed_fn(canonical_fn_or_throw(step.inputs[0]));
            for (std::size_t i = 1; i < step.inputs.size(); ++i) {
                acc = acc + parsed_fn(canonical_fn_or_throw(step.inputs[i]));
            }
            return render(acc);
        }
        case CertRule::PickPoint: {
            if (step.inputs.size() < 2) throw Error("PickPoint needs a gain and branches");
            const RationalFn gain = parsed_fn(canonical_fn_or_throw(step.inputs[0]));
            std::string out = "[";
            for (std::size_t i = 1; i < step.inputs.size(); ++i) {
                if (i > 1) out += "; ";
                out += render(gain * parsed_fn(canonical_fn_or_throw(step.inputs[i])));
            }
            out += "]";
            return out;
        }
        case CertRule::FeedbackClosedForm: {
            if (step.inputs.size() != 3) {
                throw Error("FeedbackClosedForm needs forward, feedback, sign");
            }
            const RationalFn fwd = parsed_fn(canonical_fn_or_throw(step.inputs[0]));
            const RationalFn fb = parsed_fn(canonical_fn_or_throw(step.inputs[1]));
            const std::string& sgn = step.inputs[2];
            if (sgn != "+" && sgn != "-") throw Error("sign must be '+' or '-'");
            const SPoly loop_num = fwd.num() * fb.num();
            const SPoly loop_den = fwd.den() * fb.den();
            const SPoly closed_den = sgn == "+" ? loop_den - loop_num : loop_den + loop_num;
            if (closed_den.is_zero()) throw Error("zero closed-form denominator");
            return render(RationalFn::make(fwd.num() * fb.den(), closed_den));
        }
        case CertRule::LaplaceLinearity: {
            if (step.inputs.empty()) throw Error("LaplaceLinearity needs at least one input");
            SPoly acc = parse_spoly(canonical_spoly_or_throw(step.inputs[0]));
            for (std::size_t i = 1; i < step.inputs.size(); ++i) {
                acc = acc + parse_spoly(canonical_spoly_or_throw(step.inputs[i]));
            }
            return render(acc);
        }
        case CertRule::LaplaceDerivRule: {
            if (step.inputs.size() != 2) throw Error("LaplaceDerivRule needs coeff and s-power");
            const SPoly coeff = parse_spoly(canonical_spoly_or_throw(step.inputs[0]));
            const SPoly power = parse_spoly(canonical_spoly_or_throw(step.inputs[1]));
            return render(coeff * power);
        }
        case CertRule::CrossMultEq: {
            if (step.inputs.size() != 2) throw Error("CrossMultEq needs two inputs");
            const RationalFn a = parsed_fn(canonical_fn_or_throw(step.inputs[0]));
            const RationalFn b = parsed_fn(canonical_fn_or_throw(step.inputs[1]));
            return equivalent(a, b) ? "equal" : "not-equal";
        }
    }
    throw Error("unreachable rule");
}

// Last function value a step sequence derives; CrossMultEq passes through its
// second operand when it concluded equality.
std::optional<RationalFn> final_fn(const std::vector<CertStep>& steps) {
    if (steps.empty()) return std::nullopt;
    const CertStep& last = steps.back();
    switch (last.rule) {
        case CertRule::SeriesComp:
        case CertRule::SummJun:
        case CertRule::FeedbackClosedForm:
            return parse_rational_fn(last.output);
        case CertRule::CrossMultEq:
            if (last.output != "equal") return std::nullopt;
            return parse_rational_fn(last.inputs[1]);
        default:
            return std::nullopt;
    }
}

void collect_anchors(const std::string& text, std::set<std::string>& anchors) {
    anchors.insert(text);
    try {
        const RationalFn f = parse_rational_fn(text);
        anchors.insert(render(f.num()));
        anchors.insert(render(f.den()));
        return;
    } catch (const Error&) {
    }
    try {
        const SPoly p = parse_spoly(text);
        anchors.insert(render(p));
    } catch (const Error&) {
    }
}

}  // namespace

ReplayVerdict replay(const std::string& json_text) {
    Certificate cert;
    try {
        cert = parse_certificate(json_text);
    } catch (const MalformedCertificateError& e) {
        return {ReplayVerdict::Status::malformed, std::nullopt, e.what()};
    }

    std::set<std::string> anchors;
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const CertStep& step = cert.steps[i];
        std::string recomputed;
        try {
            recomputed = recompute_step(step);
        } catch (const Error& e) {
            return {ReplayVerdict::Status::reject, i,
                    std::string("step ") + std::to_string(i) + ": " + e.what()};
        }
        if (recomputed != step.output) {
            return {ReplayVerdict::Status::reject, i,
                    "step " + std::to_string(i) + " mismatch: expected '" + recomputed +
                        "', got '" + step.output + "'"};
        }
        for (const auto& in : step.inputs) collect_anchors(in, anchors);
        if (step.rule == CertRule::PickPoint) {
            for (const auto& part : split_fn_list(step.output)) collect_anchors(part, anchors);
        } else {
            collect_anchors(step.output, anchors);
        }
    }

    // Obligations must be anchored in the step operands they came from.
    for (const auto& ob : cert.obligations) {
        if (const auto* nd = std::get_if<NonzeroDenom>(&ob.payload)) {
            if (!cert.steps.empty() && anchors.find(render(nd->denom)) == anchors.end()) {
                return {ReplayVerdict::Status::reject, std::nullopt,
                        "NonzeroDenom obligation '" + render(nd->denom) +
                            "' is not anchored in any step operand"};
            }
        } else if (const auto* cv = std::get_if<Convergence>(&ob.payload)) {
            bool anchored = cert.steps.empty();
            for (const auto& step : cert.steps) {
                if (step.rule == CertRule::FeedbackClosedForm &&
                    step.inputs[0] == render(cv->forward) &&
                    step.inputs[1] == render(cv->feedback)) {
                    anchored = true;
                    break;
                }
            }
            if (!anchored) {
                return {ReplayVerdict::Status::reject, std::nullopt,
                        "Convergence obligation does not match any FeedbackClosedForm step"};
            }
        }
    }

    // Conclusion: "<label> = <fn>"; must follow from the last derived function.
    const std::size_t eq = cert.conclusion.find(" = ");
    if (eq == std::string::npos) {
        return {ReplayVerdict::Status::malformed, std::nullopt,
                "conclusion is not of the form '<label> = <fn>'"};
    }
    const std::string lhs = cert.conclusion.substr(0, eq);
    const std::string rhs = cert.conclusion.substr(eq + 3);
    RationalFn rhs_fn;
    try {
        rhs_fn = parsed_fn(canonical_fn_or_throw(rhs));
    } catch (const Error& e) {
        return {ReplayVerdict::Status::malformed, std::nullopt,
                std::string("conclusion right-hand side: ") + e.what()};
    }
    if (cert.steps.empty()) {
        RationalFn lhs_fn;
        try {
            lhs_fn = parsed_fn(canonical_fn_or_throw(lhs));
        } catch (const Error& e) {
            return {ReplayVerdict::Status::malformed, std::nullopt,
                    std::string("conclusion of an empty certificate must equate two functions: ") +
                        e.what()};
        }
        if (!equivalent(lhs_fn, rhs_fn)) {
            return {ReplayVerdict::Status::reject, std::nullopt,
                    "conclusion sides are not equivalent"};
        }
        return {ReplayVerdict::Status::accept, std::nullopt, ""};
    }
    const auto derived = final_fn(cert.steps);
    if (!derived) {
        return {ReplayVerdict::Status::reject, std::nullopt,
                "final step does not derive a function value"};
    }
    if (!equivalent(*derived, rhs_fn)) {
        return {ReplayVerdict::Status::reject, std::nullopt,
                "conclusion does not follow from the final step"};
    }
    return {ReplayVerdict::Status::accept, std::nullopt, ""};
}

}  // namespace biotf
