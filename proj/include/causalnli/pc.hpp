#pragma once

#include "causalnli/cpdag.hpp"
#include "causalnli/independence.hpp"

namespace causalnli {

/// Perfect conditional-independence query interface. Answers must be
/// symmetric in the node pair.
class IndependenceOracle {
public:
    virtual ~IndependenceOracle() = default;
    virtual int node_count() const = 0;
    virtual bool independent(int i, int j, NodeMask given) const = 0;
};

/// Oracle backed by a conditional-independence signature.
class SignatureOracle final : public IndependenceOracle {
public:
    explicit SignatureOracle(CiSignature signature)
        : signature_(std::move(signature)) {}

    int node_count() const override { return signature_.node_count(); }
    bool independent(int i, int j, NodeMask given) const override {
        return signature_.independent(i, j, given);
    }

private:
    CiSignature signature_;
};

/// PC algorithm against a perfect oracle.
///
/// Skeleton phase: an edge is dropped as soon as any separating set exists,
/// searching conditioning sets over all remaining nodes in increasing
/// cardinality; the first set found is recorded. Orientation phase: for each
/// nonadjacent pair with a common neighbor absent from its recorded set, the
/// v-structure is directed, then the Meek rules complete the orientation.
/// With an oracle faithful to some DAG g this returns exactly cpdag_of(g);
/// contradictory v-structure orientations raise FaithfulnessError.
Cpdag pc(const IndependenceOracle& oracle);

}  // namespace causalnli
