#pragma once

#include <string>
#include <variant>
#include <vector>

#include "biotf/rational_fn.hpp"

namespace biotf {

// Where an obligation came from: the rule that emitted it plus a location
// (a node path inside the diagram, or a marker like "ode").
struct ObligationOrigin {
    std::string rule;
    std::string location;

    bool operator==(const ObligationOrigin&) const = default;
};

// Payloads. Obligations are data only; constructing one never evaluates or
// discharges it.
struct NonzeroDenom {
    SPoly denom;
    bool operator==(const NonzeroDenom&) const = default;
};
struct Positivity {
    ParamId param;
    bool operator==(const Positivity&) const = default;
};
struct Convergence {
    RationalFn forward;
    RationalFn feedback;
    bool operator==(const Convergence&) const = default;
};
struct LaplaceExists {
    std::string role;  // "u" or "y"
    bool operator==(const LaplaceExists&) const = default;
};
struct ZeroInitCond {
    bool operator==(const ZeroInitCond&) const = default;
};
struct Differentiability {
    bool operator==(const Differentiability&) const = default;
};
// Nonzero-denominator side condition on the abstract input transform L[u](s);
// it has no polynomial payload and is sampled numerically, never discharged
// symbolically.
struct InputTransformNonzero {
    std::string role;
    bool operator==(const InputTransformNonzero&) const = default;
};

using ObligationPayload = std::variant<NonzeroDenom, Positivity, Convergence, LaplaceExists,
                                       ZeroInitCond, Differentiability, InputTransformNonzero>;

struct Obligation {
    ObligationPayload payload;
    ObligationOrigin origin;

    bool operator==(const Obligation&) const = default;

    // "NonzeroDenom", "Positivity", ...
    std::string kind_name() const;
    // Rendered payload arguments in a fixed order.
    std::vector<std::string> args() const;
    // kind + args; identifies the obligation irrespective of origin.
    std::string semantic_key() const;
};

// Set-union on semantic keys, preserving first-seen order and origins.
std::vector<Obligation> merge_obligations(const std::vector<Obligation>& a,
                                          const std::vector<Obligation>& b);

}  // namespace biotf
