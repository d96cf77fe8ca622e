#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>

#include "biotf/certificate.hpp"
#include "biotf/circuit.hpp"
#include "biotf/expr_parse.hpp"
#include "biotf/laplace_oracle.hpp"
#include "biotf/render.hpp"
#include "biotf/version.hpp"

namespace {

using namespace biotf;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::map<ParamId, Rational> apply_overrides(const ElaboratedCircuit& circuit,
                                            const std::vector<std::string>& sets) {
    std::map<ParamId, Rational> bindings = circuit.bindings;
    std::set<ParamId> declared;
    circuit.ode.collect_params(declared);
    for (const auto& [p, v] : circuit.bindings) declared.insert(p);
    for (const auto& item : sets) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw Error("--set expects name=value, got '" + item + "'");
        const std::string name = item.substr(0, eq);
        if (!declared.contains(ParamId{name})) {
            throw Error("--set binds undeclared parameter '" + name + "'");
        }
        bindings[ParamId{name}] = rational_from_string(item.substr(eq + 1));
    }
    return bindings;
}

std::complex<double> parse_complex(const std::string& text) {
    // forms: "a", "a+bi", "a-bi", "bi"
    std::string t = text;
    if (t.empty()) throw Error("empty s-point");
    if (t.back() == 'i') {
        t.pop_back();
        // locate the split between real and imaginary parts
        for (std::size_t i = t.size(); i-- > 1;) {
            if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
                return {std::stod(t.substr(0, i)), std::stod(t.substr(i))};
            }
        }
        return {0.0, t.empty() || t == "+" ? 1.0 : (t == "-" ? -1.0 : std::stod(t))};
    }
    return {std::stod(t), 0.0};
}

std::vector<std::complex<double>> parse_s_points(const std::string& csv) {
    std::vector<std::complex<double>> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_complex(item));
    }
    if (out.empty()) throw Error("no s-points given");
    return out;
}

InputSpec make_input_spec(const std::string& kind, double omega) {
    InputSpec spec;
    if (kind == "step") {
        spec.kind = InputKind::step;
    } else if (kind == "impulse") {
        spec.kind = InputKind::impulse_approx;
    } else if (kind == "sin") {
        spec.kind = InputKind::sinusoid;
    } else {
        throw Error("unknown input kind '" + kind + "' (step, impulse, sin)");
    }
    spec.sinusoid_omega = omega;
    return spec;
}

std::string default_cert_path(const std::string& input_path) {
    std::string stem = input_path;
    if (const auto dot = stem.rfind(".gnc"); dot != std::string::npos && dot == stem.size() - 4) {
        stem = stem.substr(0, dot);
    }
    return stem + ".tfcert.json";
}

struct Derivation {
    ElaboratedCircuit circuit;
    ReducedDiagram diagram_route;
    DerivationResult ode_route;
    EquivalenceReport report;
};

Derivation run_derivation(const std::string& path) {
    ElaboratedCircuit circuit = elaborate(parse_circuit(read_file(path)));
    ReducedDiagram rd = reduce(circuit.diagram);
    DerivationResult dr = derive_transfer_function(circuit.ode);
    EquivalenceReport report = check_equivalence(dr, rd.fn, rd.obligations);
    return Derivation{std::move(circuit), std::move(rd), std::move(dr), std::move(report)};
}

Certificate build_full_certificate(const Derivation& d) {
    Certificate cert = concat_certificates(d.diagram_route.certificate, d.ode_route.certificate);
    cert.steps.push_back({CertRule::CrossMultEq,
                          {render(d.diagram_route.fn), render(d.ode_route.tf)},
                          d.report.equivalent ? "equal" : "not-equal"});
    cert.obligations = d.report.obligations;
    cert.conclusion = "Y(s)/U(s) = " + render(d.ode_route.tf);
    return cert;
}

// prints both routes and the equivalence verdict; returns the exit code
int report_equivalence(const Derivation& d, std::ostream& out) {
    out << "block-diagram route: " << render(d.diagram_route.fn) << "\n";
    out << "ode route:           " << render(d.ode_route.tf) << "\n";
    bool ok = d.report.equivalent;
    if (d.circuit.expected_tf) {
        const bool diagram_matches = equivalent(d.diagram_route.fn, *d.circuit.expected_tf);
        const bool ode_matches = equivalent(d.ode_route.tf, *d.circuit.expected_tf);
        out << "declared expectation: " << render(*d.circuit.expected_tf)
            << (diagram_matches && ode_matches ? "  -- matches" : "  -- MISMATCH") << "\n";
        ok = ok && diagram_matches && ode_matches;
    }
    out << (d.report.equivalent ? "EQUIVALENT" : "NOT EQUIVALENT") << "\n";
    return ok ? kExitOk : kExitVerificationFailure;
}

int cmd_derive(const std::string& path, const std::string& output) {
    const Derivation d = run_derivation(path);
    const int code = report_equivalence(d, std::cout);
    CertificateMeta meta;
    meta.version = kVersion;
    meta.source = path;
    meta.generated = utc_timestamp();
    const std::string cert_path = output.empty() ? default_cert_path(path) : output;
    write_file(cert_path, emit(build_full_certificate(d), meta));
    std::cout << "certificate: " << cert_path << "\n";
    return code;
}

int cmd_check_equiv(const std::string& path) {
    const Derivation d = run_derivation(path);
    return report_equivalence(d, std::cout);
}

int cmd_simulate(const std::string& path, const std::vector<std::string>& sets, double dt,
                 double duration, const std::string& input_kind, double omega,
                 const std::string& output) {
    const ElaboratedCircuit circuit = elaborate(parse_circuit(read_file(path)));
    const auto bindings = apply_overrides(circuit, sets);
    const SimResult sim =
        simulate(circuit.ode, bindings, make_input_spec(input_kind, omega), duration, dt);
    std::ostringstream csv;
    csv << "t,u,y\n";
    for (std::size_t i = 0; i < sim.u.size(); ++i) {
        csv << render(sim.u.time_at(i)) << "," << render(sim.u.samples()[i]) << ","
            << render(sim.y.samples()[i]) << "\n";
    }
    if (output.empty()) {
        std::cout << csv.str();
    } else {
        write_file(output, csv.str());
        std::cout << "time series: " << output << " (" << sim.u.size() << " samples)\n";
    }
    return kExitOk;
}

nlohmann::ordered_json report_to_json(const ValidationReport& report) {
    nlohmann::ordered_json doc;
    doc["dt"] = report.dt;
    doc["duration"] = report.duration;
    doc["M"] = report.bound.M;
    doc["a"] = report.bound.a;
    doc["rel_tol"] = report.rel_tol;
    doc["points"] = nlohmann::ordered_json::array();
    for (const auto& p : report.points) {
        doc["points"].push_back({{"s", render(p.s)},
                                 {"numeric", render(p.numeric)},
                                 {"symbolic", render(p.symbolic)},
                                 {"rel_error", p.rel_error},
                                 {"trunc_bound", p.truncation_bound},
                                 {"pass", p.pass}});
    }
    doc["pass"] = report.pass;
    return doc;
}

int cmd_validate(const std::string& path, const std::vector<std::string>& sets,
                 const std::string& s_csv, double tol, double dt, double duration,
                 const std::string& output) {
    const Derivation d = run_derivation(path);
    if (!d.report.equivalent) {
        std::cerr << "error: block-diagram and ode routes disagree; nothing to validate\n";
        return kExitVerificationFailure;
    }
    const auto bindings = apply_overrides(d.circuit, sets);
    ValidationOptions opts;
    opts.dt = dt;
    opts.duration = duration;
    opts.rel_tol = tol;
    const ValidationReport report =
        validate_tf(d.circuit.ode, bindings, d.ode_route.tf, parse_s_points(s_csv), opts);
    std::cout << render_text(report);
    if (!output.empty()) {
        write_file(output, report_to_json(report).dump(2) + "\n");
        std::cout << "report: " << output << "\n";
    }
    return report.pass ? kExitOk : kExitVerificationFailure;
}

// Obligation statuses: "open" until the numeric oracle has sampled it.
int cmd_obligations(const std::string& path, const std::vector<std::string>& sets,
                    const std::string& s_csv, double dt, double duration) {
    const Derivation d = run_derivation(path);
    std::map<ParamId, Rational> bindings;
    std::vector<std::complex<double>> s_points;
    bool can_sample = false;
    std::optional<SimResult> sim;
    std::optional<double> sample_m;
    try {
        bindings = apply_overrides(d.circuit, sets);
        if (!s_csv.empty()) s_points = parse_s_points(s_csv);
        if (!s_points.empty()) {
            sim = simulate(d.circuit.ode, bindings, InputSpec{}, duration > 0 ? duration : 20.0,
                           dt);
            sample_m = std::max(1.0, std::max(sim->u.max_abs(), sim->y.max_abs()) + 1.0);
            can_sample = true;
        }
    } catch (const Error&) {
        can_sample = false;
    }

    for (const auto& ob : d.report.obligations) {
        std::string label = ob.kind_name();
        const auto args = ob.args();
        if (!args.empty()) {
            label += "(";
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (i) label += ", ";
                label += args[i];
            }
            label += ")";
        }
        std::string status = "open";
        try {
            if (const auto* pos = std::get_if<Positivity>(&ob.payload)) {
                if (auto it = bindings.find(pos->param); it != bindings.end()) {
                    status = sign(it->second) > 0 ? "numerically-sampled: holds"
                                                  : "numerically-sampled: VIOLATED";
                }
            } else if (const auto* nd = std::get_if<NonzeroDenom>(&ob.payload);
                       nd != nullptr && can_sample) {
                bool nonzero = true;
                for (const auto& s : s_points) {
                    nonzero = nonzero && std::abs(nd->denom.evaluate(bindings, s)) > 1e-9;
                }
                status = nonzero ? "numerically-sampled: nonzero at all sample points"
                                 : "numerically-sampled: VANISHES at a sample point";
            } else if (const auto* cv = std::get_if<Convergence>(&ob.payload);
                       cv != nullptr && can_sample) {
                bool contracting = true;
                for (const auto& s : s_points) {
                    const auto fg =
                        cv->forward.evaluate(bindings, s) * cv->feedback.evaluate(bindings, s);
                    contracting = contracting && std::abs(fg) < 1.0;
                }
                status = contracting
                             ? "numerically-sampled: |forward*feedback| < 1 at all sample points"
                             : "numerically-sampled: NOT CONTRACTING at a sample point";
            } else if (const auto* le = std::get_if<LaplaceExists>(&ob.payload);
                       le != nullptr && can_sample) {
                const Signal& sig = le->role == "u" ? sim->u : sim->y;
                const bool ok = exp_order_check(sig, ExpOrderBound{*sample_m, 0.0});
                status = ok ? "numerically-sampled: exponential order (M=" + render(*sample_m) +
                                  ", a=0) at sample resolution"
                            : "numerically-sampled: BOUND EXCEEDED";
            } else if (const auto* itn = std::get_if<InputTransformNonzero>(&ob.payload);
                       itn != nullptr && can_sample) {
                bool nonzero = true;
                for (const auto& s : s_points) {
                    nonzero = nonzero &&
                              std::abs(numerical_laplace(sim->u, s, ExpOrderBound{*sample_m, 0.0})
                                           .value) > 1e-9;
                }
                status = nonzero ? "numerically-sampled: nonzero at all sample points"
                                 : "numerically-sampled: NEAR ZERO at a sample point";
            }
        } catch (const Error&) {
            status = "open";
        }
        std::cout << label << " [" << ob.origin.rule
                  << (ob.origin.location.empty() ? "" : "@" + ob.origin.location)
                  << "]: " << status << "\n";
    }
    return kExitOk;
}

int cmd_replay(const std::string& cert_path) {
    const ReplayVerdict verdict = replay(read_file(cert_path));
    switch (verdict.status) {
        case ReplayVerdict::Status::accept:
            std::cout << "ACCEPT\n";
            return kExitOk;
        case ReplayVerdict::Status::reject:
            std::cout << "REJECT: " << verdict.detail << "\n";
            return kExitVerificationFailure;
        case ReplayVerdict::Status::malformed:
            std::cout << "MALFORMED: " << verdict.detail << "\n";
            return kExitVerificationFailure;
    }
    return kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"transfer-function derivation and checking for genetic circuits"};
    app.set_version_flag("--version", biotf::kVersion);
    app.require_subcommand(1);

    std::string input_path, output_path, s_csv = "1,2,5", input_kind = "step";
    std::vector<std::string> sets;
    double dt = 1e-3, duration = 0.0, tol = 1e-4, omega = 1.0;

    auto* c_derive = app.add_subcommand("derive", "derive the transfer function both ways and "
                                                  "write a certificate");
    c_derive->add_option("input", input_path, "circuit file (.gnc)")->required();
    c_derive->add_option("-o,--output", output_path, "certificate path (.tfcert.json)");

    auto* c_check = app.add_subcommand("check-equiv", "exit 0 iff both routes agree");
    c_check->add_option("input", input_path, "circuit file (.gnc)")->required();

    auto* c_sim = app.add_subcommand("simulate", "integrate the ODE and write a t,u,y CSV");
    c_sim->add_option("input", input_path, "circuit file (.gnc)")->required();
    c_sim->add_option("--set", sets, "parameter override name=value");
    c_sim->add_option("--dt", dt, "time step (default 1e-3)");
    c_sim->add_option("--duration", duration, "simulation length in seconds")->required();
    c_sim->add_option("--excitation", input_kind, "excitation: step, impulse, sin");
    c_sim->add_option("--omega", omega, "sinusoid angular frequency");
    c_sim->add_option("-o,--output", output_path, "CSV path (default stdout)");

    auto* c_val = app.add_subcommand("validate", "cross-validate the symbolic transfer function "
                                                 "against the numerical Laplace oracle");
    c_val->add_option("input", input_path, "circuit file (.gnc)")->required();
    c_val->add_option("--set", sets, "parameter override name=value");
    c_val->add_option("--s", s_csv, "comma-separated s-points (default 1,2,5)");
    c_val->add_option("--tol", tol, "relative tolerance (default 1e-4)");
    c_val->add_option("--dt", dt, "time step (default 1e-3)");
    c_val->add_option("--duration", duration, "window length (default: auto)");
    c_val->add_option("-o,--output", output_path, "JSON report path");

    auto* c_obl = app.add_subcommand("obligations", "list the side-condition ledger");
    c_obl->add_option("input", input_path, "circuit file (.gnc)")->required();
    c_obl->add_option("--set", sets, "parameter override name=value");
    c_obl->add_option("--s", s_csv, "comma-separated s-points for sampling");
    c_obl->add_option("--dt", dt, "time step (default 1e-3)");
    c_obl->add_option("--duration", duration, "window length");

    auto* c_replay = app.add_subcommand("replay", "re-check a derivation certificate");
    c_replay->add_option("certificate", input_path, "certificate file (.tfcert.json)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(c_derive)) return cmd_derive(input_path, output_path);
        if (app.got_subcommand(c_check)) return cmd_check_equiv(input_path);
        if (app.got_subcommand(c_sim)) {
            return cmd_simulate(input_path, sets, dt, duration, input_kind, omega, output_path);
        }
        if (app.got_subcommand(c_val)) {
            return cmd_validate(input_path, sets, s_csv, tol, dt, duration, output_path);
        }
        if (app.got_subcommand(c_obl)) {
            return cmd_obligations(input_path, sets, s_csv, dt, duration);
        }
        if (app.got_subcommand(c_replay)) return cmd_replay(input_path);
    } catch (const CircuitError& e) {
        std::cerr << "error: " << input_path << ":" << e.span().line << ":" << e.span().col_begin
                  << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
