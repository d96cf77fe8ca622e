#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "biotf/obligation.hpp"

namespace biotf {

// Rewrite rules a certificate step can record. The names below are the wire
// format and must not change.
enum class CertRule {
    SeriesComp,         // inputs: factor fns            -> output: product fn
    SummJun,            // inputs: addend fns            -> output: sum fn
    PickPoint,          // inputs: gain fn, branch fns   -> output: "[fn; fn; ...]"
    FeedbackClosedForm, // inputs: forward, feedback, "+"|"-" -> output: closed-loop fn
    LaplaceLinearity,   // inputs: term polys            -> output: sum poly
    LaplaceDerivRule,   // inputs: coeff poly, s^k       -> output: coeff*s^k poly
    CrossMultEq,        // inputs: two fns               -> output: "equal"|"not-equal"
};

const char* cert_rule_name(CertRule rule);
std::optional<CertRule> cert_rule_from_name(const std::string& name);

// One derivation step: operands and result as canonically rendered strings,
// auditable by eye and re-executable by replay().
struct CertStep {
    CertRule rule;
    std::vector<std::string> inputs;
    std::string output;

    bool operator==(const CertStep&) const = default;
};

struct Certificate {
    std::vector<CertStep> steps;
    std::vector<Obligation> obligations;
    std::string conclusion;  // "<label> = <rendered fn>"

    bool operator==(const Certificate&) const = default;
};

struct CertificateMeta {
    std::string tool = "biotf";
    std::string version;
    std::string source;
    std::string generated;  // timestamps may appear here and nowhere else
};

// Concatenates steps and set-unions obligations; the conclusion is taken from
// the second certificate.
Certificate concat_certificates(const Certificate& first, const Certificate& second);

// Deterministic serialization: top-level keys steps, obligations, conclusion,
// meta, in that order; 2-space indentation.
std::string emit(const Certificate& cert, const CertificateMeta& meta);

// Throws MalformedCertificateError.
Certificate parse_certificate(const std::string& json_text, CertificateMeta* meta = nullptr);

struct ReplayVerdict {
    enum class Status { accept, reject, malformed };

    Status status = Status::malformed;
    std::optional<std::size_t> step_index;  // set for per-step failures
    std::string detail;

    bool accepted() const { return status == Status::accept; }
};

// Re-executes every step through the symbolic core and checks that
//  * each stored operand/result string is in canonical rendered form,
//  * each step's recorded output matches the recomputation from its inputs,
//  * obligations with polynomial payloads are anchored in step operands
//    (Convergence pairs in a FeedbackClosedForm step, NonzeroDenom in some
//    recorded numerator/denominator/polynomial),
//  * the conclusion's right-hand side is cross-multiplication-equal to the
//    final derived function.
ReplayVerdict replay(const std::string& json_text);

}  // namespace biotf
