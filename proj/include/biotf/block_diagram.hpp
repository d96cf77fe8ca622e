#pragma once

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "biotf/certificate.hpp"
#include "biotf/obligation.hpp"
#include "biotf/rational_fn.hpp"

namespace biotf {

enum class FeedbackSign { positive, negative };

class BlockDiagram;

// Leaf transfer block.
struct TfNode {
    RationalFn fn;
};
// Cascade; reduces to the product of the children.
struct SeriesNode {
    std::vector<BlockDiagram> children;
};
// Summation junction; reduces to the sum of the children.
struct SumNode {
    std::vector<BlockDiagram> children;
};
// Pickoff point: the gain block fans out into parallel branches, which rejoin
// at an implicit summation junction.
struct PickoffNode {
    RationalFn gain;
    std::vector<BlockDiagram> branches;
};
// Closed loop around a forward block; positive sign means the loop reduces to
// forward/(1 - forward*feedback), the geometric-series closed form.
struct FeedbackNode {
    RationalFn forward;
    RationalFn feedback;
    FeedbackSign sign = FeedbackSign::positive;
};

// Finite tree IR for a circuit's block structure. Lists are non-empty by
// construction.
class BlockDiagram {
  public:
    using Node = std::variant<TfNode, SeriesNode, SumNode, PickoffNode, FeedbackNode>;

    static BlockDiagram tf(RationalFn fn);
    static BlockDiagram series(std::vector<BlockDiagram> children);
    static BlockDiagram sum(std::vector<BlockDiagram> children);
    static BlockDiagram pickoff(RationalFn gain, std::vector<BlockDiagram> branches);
    static BlockDiagram feedback(RationalFn forward, RationalFn feedback_fn,
                                 FeedbackSign sign = FeedbackSign::positive);

    const Node& node() const { return *node_; }

  private:
    explicit BlockDiagram(Node node) : node_(std::make_shared<Node>(std::move(node))) {}

    std::shared_ptr<const Node> node_;  // immutable, cheap to copy
};

// --- reduction rules ---------------------------------------------------------

// Product of the component transfer functions. Throws EmptyComponentListError.
RationalFn series_composition(std::span<const RationalFn> components);

// Sum of the component transfer functions. Throws EmptyComponentListError.
RationalFn summing_junction(std::span<const RationalFn> components);

// Element-wise product [gain*C1, ..., gain*CN]. Throws EmptyComponentListError.
std::vector<RationalFn> pickoff_branches(const RationalFn& gain,
                                         std::span<const RationalFn> branches);

// k-th geometric term of a loop: (forward*feedback)^k.
RationalFn loop_branch_term(const RationalFn& forward, const RationalFn& feedback, unsigned k);

struct ClosedLoop {
    RationalFn fn;
    std::vector<Obligation> obligations;
};

// Closed form forward/(1 -+ forward*feedback) of the infinite branch sum,
// with the Convergence and NonzeroDenom side conditions it rests on.
// Throws AlgebraicLoopError when the closed-form denominator is identically
// zero.
ClosedLoop close_loop(const RationalFn& forward, const RationalFn& feedback, FeedbackSign sign);

struct ReducedDiagram {
    RationalFn fn;
    std::vector<Obligation> obligations;
    Certificate certificate;
};

// Bottom-up reduction of the whole tree. Obligations of every node are
// collected, never discharged; each applied rule becomes a certificate step.
ReducedDiagram reduce(const BlockDiagram& diagram);

}  // namespace biotf
