#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "biotf/certificate.hpp"
#include "biotf/circuit.hpp"
#include "biotf/errors.hpp"
#include "biotf/ode_model.hpp"
#include "biotf/render.hpp"
#include "support/test_support.hpp"

using namespace biotf;
using namespace biotf::testsupport;

namespace {

CertificateMeta test_meta() {
    CertificateMeta meta;
    meta.version = "test";
    meta.source = "inline";
    meta.generated = "1970-01-01T00:00:00Z";
    return meta;
}

std::string corpus_certificate(const std::string& name) {
    const std::filesystem::path path = std::filesystem::path(BIOTF_CORPUS_DIR) / name;
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    const ElaboratedCircuit circuit = elaborate(parse_circuit(buf.str()));
    const ReducedDiagram rd = reduce(circuit.diagram);
    const DerivationResult dr = derive_transfer_function(circuit.ode);
    Certificate cert = concat_certificates(rd.certificate, dr.certificate);
    cert.steps.push_back({CertRule::CrossMultEq, {render(rd.fn), render(dr.tf)}, "equal"});
    cert.conclusion = "Y(s)/U(s) = " + render(dr.tf);
    return emit(cert, test_meta());
}

const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names{"activated.gnc", "repressed.gnc", "cascade2.gnc",
                                                "feedback_pos.gnc"};
    return names;
}

// Offsets of digits that belong to numeric literals (coefficients/exponents),
// not identifiers, within the JSON text before the "meta" key.
std::vector<std::size_t> coefficient_digit_offsets(const std::string& text) {
    const std::size_t end = text.find("\"meta\"");
    std::vector<std::size_t> offsets;
    for (std::size_t i = 0; i < end; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) continue;
        // digits inside identifiers follow a letter or underscore
        std::size_t j = i;
        while (j > 0 && std::isdigit(static_cast<unsigned char>(text[j - 1]))) --j;
        if (j > 0 && (std::isalpha(static_cast<unsigned char>(text[j - 1])) ||
                      text[j - 1] == '_')) {
            continue;
        }
        offsets.push_back(i);
    }
    return offsets;
}

}  // namespace

TEST_CASE("the activated-expression reduction emits a two-step certificate") {
    const ElaboratedCircuit circuit = elaborate(parse_circuit(
        "param alpha positive\nparam gamma_A positive\ngene y degrade alpha\ninput A\n"
        "activate y by A gain gamma_A\noutput y\n"));
    const ReducedDiagram rd = reduce(circuit.diagram);
    REQUIRE(rd.certificate.steps.size() == 2);
    CHECK(rd.certificate.steps[0].rule == CertRule::SeriesComp);
    CHECK(rd.certificate.steps[1].rule == CertRule::CrossMultEq);
    bool found = false;
    for (const auto& ob : rd.certificate.obligations) {
        found = found || (ob.kind_name() == "NonzeroDenom" && ob.args()[0] == "s + alpha");
    }
    CHECK(found);
    const std::string doc = emit(rd.certificate, test_meta());
    CHECK(replay(doc).accepted());
}

TEST_CASE("emitted certificates parse back and re-emit identically") {
    for (const auto& name : corpus_names()) {
        CAPTURE(name);
        const std::string doc = corpus_certificate(name);
        CertificateMeta meta;
        const Certificate parsed = parse_certificate(doc, &meta);
        CHECK(emit(parsed, meta) == doc);
    }
}

TEST_CASE("emit is deterministic") {
    const std::string a = corpus_certificate("cascade2.gnc");
    const std::string b = corpus_certificate("cascade2.gnc");
    CHECK(a == b);
}

TEST_CASE("replay accepts every corpus certificate") {
    for (const auto& name : corpus_names()) {
        CAPTURE(name);
        CHECK(replay(corpus_certificate(name)).accepted());
    }
}

TEST_CASE("an empty-step certificate concluding f = f replays trivially") {
    Certificate cert;
    cert.conclusion = "(2*s + 2)/(2) = (s + 1)/(1)";
    CHECK_FALSE(replay(emit(cert, test_meta())).accepted());  // left side not canonical
    cert.conclusion = "(s + 1)/(1) = (s + 1)/(1)";
    CHECK(replay(emit(cert, test_meta())).accepted());
    cert.conclusion = "(s + 1)/(1) = (s + 2)/(1)";
    const ReplayVerdict verdict = replay(emit(cert, test_meta()));
    CHECK(verdict.status == ReplayVerdict::Status::reject);
}

TEST_CASE("a tampered step output is reported with its index") {
    Certificate cert;
    cert.steps.push_back({CertRule::SeriesComp, {"(2)/(1)", "(3)/(1)"}, "(7)/(1)"});
    cert.conclusion = "H(s) = (7)/(1)";
    const ReplayVerdict verdict = replay(emit(cert, test_meta()));
    CHECK(verdict.status == ReplayVerdict::Status::reject);
    REQUIRE(verdict.step_index.has_value());
    CHECK(*verdict.step_index == 0);
    CHECK(verdict.detail.find("(6)/(1)") != std::string::npos);
}

TEST_CASE("non-canonical operands are rejected even when arithmetic would pass") {
    Certificate cert;
    cert.steps.push_back({CertRule::SeriesComp, {"(2*s + 2)/(2)", "(1)/(1)"}, "(s + 1)/(1)"});
    cert.conclusion = "H(s) = (s + 1)/(1)";
    CHECK_FALSE(replay(emit(cert, test_meta())).accepted());
}

TEST_CASE("conclusions must follow from the final step") {
    Certificate cert;
    cert.steps.push_back({CertRule::SeriesComp, {"(2)/(1)", "(3)/(1)"}, "(6)/(1)"});
    cert.conclusion = "H(s) = (5)/(1)";
    CHECK_FALSE(replay(emit(cert, test_meta())).accepted());
    cert.conclusion = "H(s) = (6)/(1)";
    CHECK(replay(emit(cert, test_meta())).accepted());
}

TEST_CASE("malformed documents are classified as malformed") {
    CHECK(replay("not json at all").status == ReplayVerdict::Status::malformed);
    CHECK(replay("{}").status == ReplayVerdict::Status::malformed);
    CHECK(replay(R"({"steps": [], "obligations": [], "conclusion": "x", "meta": {}})").status ==
          ReplayVerdict::Status::malformed);  // conclusion lacks " = "
    const std::string unknown_rule = R"({
  "steps": [{"rule": "Nonsense", "inputs": [], "output": ""}],
  "obligations": [],
  "conclusion": "H(s) = (1)/(1)",
  "meta": {}
})";
    CHECK(replay(unknown_rule).status == ReplayVerdict::Status::malformed);
    CHECK_THROWS_AS(parse_certificate("[1,2,3]"), MalformedCertificateError);
}

TEST_CASE("every coefficient digit mutation in a corpus certificate is rejected") {
    // exhaustive single-character substitutions on numeric literals
    std::size_t mutations = 0;
    for (const auto& name : corpus_names()) {
        CAPTURE(name);
        const std::string doc = corpus_certificate(name);
        REQUIRE(replay(doc).accepted());
        for (std::size_t offset : coefficient_digit_offsets(doc)) {
            for (char replacement : {'0', '3', '7'}) {
                if (doc[offset] == replacement) continue;
                std::string mutated = doc;
                mutated[offset] = replacement;
                CAPTURE(offset);
                CAPTURE(replacement);
                CHECK_FALSE(replay(mutated).accepted());
                ++mutations;
            }
        }
    }
    CHECK(mutations >= 100);
}

TEST_CASE("corpus certificates replay quickly") {
    for (const auto& name : corpus_names()) {
        const std::string doc = corpus_certificate(name);
        const auto start = std::chrono::steady_clock::now();
        CHECK(replay(doc).accepted());
        const auto elapsed = std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start);
        CHECK(elapsed.count() < 100.0);
    }
}

TEST_CASE("obligation payloads survive serialization") {
    const ElaboratedCircuit circuit = elaborate(parse_circuit(
        "param a positive\nparam g positive\nparam k positive\ngene y degrade a\ninput u\n"
        "activate y by u gain g\nfeedback y to y gain k sign +\noutput y\n"));
    const ReducedDiagram rd = reduce(circuit.diagram);
    const std::string doc = emit(rd.certificate, test_meta());
    const Certificate parsed = parse_certificate(doc);
    REQUIRE(parsed.obligations.size() == rd.certificate.obligations.size());
    for (std::size_t i = 0; i < parsed.obligations.size(); ++i) {
        CHECK(parsed.obligations[i].semantic_key() ==
              rd.certificate.obligations[i].semantic_key());
        CHECK(parsed.obligations[i].origin == rd.certificate.obligations[i].origin);
    }
}
