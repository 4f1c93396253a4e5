#pragma once

#include <vector>

#include "causalnli/canonical.hpp"
#include "causalnli/cpdag.hpp"
#include "causalnli/dag.hpp"
#include "causalnli/independence.hpp"

namespace causalnli {

/// One Markov equivalence class over a fixed node labeling.
struct Mec {
    CanonicalKey key;          // canonical key of the class CPDAG
    Dag representative;        // enumerated representative the class was built from
    Cpdag cpdag;               // labeled CPDAG of the representative
    std::vector<Dag> members;  // every labeled DAG equivalent to the representative
    CiSignature signature;     // independence model shared by all members
};

/// Partitions enumerated DAG representatives into equivalence classes by the
/// canonical key of their CPDAGs. Each class is built from its first
/// representative in input order and classes are returned in ascending key
/// order, so passing the output of enumerate_dags gives a deterministic
/// result.
std::vector<Mec> group_mecs(const std::vector<Dag>& dags);

}  // namespace causalnli
