#pragma once

#include <cstdint>
#include <vector>

#include "causalnli/dag.hpp"

namespace causalnli {

/// d-separation of nodes i and j given the conditioning set `given`.
///
/// A path is blocked when some fork or chain node on it is conditioned on,
/// or some collider on it has neither itself nor any descendant conditioned
/// on; i and j are d-separated when every path between them is blocked.
/// This decider runs the ancestor-marking reachability algorithm (tracking
/// the direction each node was entered from).
bool d_separated(const Dag& g, int i, int j, NodeMask given);

/// Same decision by explicit enumeration of all simple skeleton paths with a
/// per-path blocking test. Kept as an independent route for cross-checking;
/// must agree with d_separated on every query.
bool d_separated_by_paths(const Dag& g, int i, int j, NodeMask given);

/// Complete conditional-independence relation of a labeled DAG: for every
/// unordered node pair, the exact list of conditioning sets that d-separate
/// it. A pair with an empty list is directly correlated (no set separates
/// adjacent nodes). Equal signatures mean the same independence model on the
/// same labeling.
class CiSignature {
public:
    CiSignature(int node_count, std::vector<std::vector<NodeMask>> sepsets);

    int node_count() const { return node_count_; }

    /// Index of unordered pair {i, j} in lexicographic (i < j) order.
    static int pair_index(int node_count, int i, int j);
    static int pair_count(int node_count) { return node_count * (node_count - 1) / 2; }

    /// Separating sets of {i, j}, ordered by (size, mask) ascending.
    const std::vector<NodeMask>& separating_sets(int i, int j) const;

    bool directly_correlated(int i, int j) const {
        return separating_sets(i, j).empty();
    }
    bool independent(int i, int j, NodeMask given) const;

    /// Signature of the relabeled graph: node v becomes perm[v].
    CiSignature permuted(std::span<const int> perm) const;

    friend bool operator==(const CiSignature&, const CiSignature&) = default;

private:
    int node_count_;
    std::vector<std::vector<NodeMask>> sepsets_;  // indexed by pair_index
};

/// Evaluates d_separated for every pair and every conditioning subset.
CiSignature ci_signature(const Dag& g);

/// Engine self-test: every node is d-separated from each of its non-parent
/// non-descendants given its parents. Holds for every DAG.
bool markov_check(const Dag& g);

}  // namespace causalnli
