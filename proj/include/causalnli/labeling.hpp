#pragma once

#include <string>
#include <vector>

#include "causalnli/dag.hpp"
#include "causalnli/mec.hpp"

namespace causalnli {

/// The six causal relations a hypothesis can claim between an ordered pair
/// of variables. Ancestor/descendant exclude the direct parent/child case;
/// collider/confounder mean a direct common child/parent exists.
enum class RelationType {
    kIsParent,
    kIsAncestor,
    kIsChild,
    kIsDescendant,
    kHasCollider,
    kHasConfounder,
};

inline constexpr int kRelationCount = 6;

/// Relations in their fixed order (the order hypotheses are generated in).
inline constexpr RelationType kRelationOrder[kRelationCount] = {
    RelationType::kIsParent,     RelationType::kIsAncestor,
    RelationType::kIsChild,      RelationType::kIsDescendant,
    RelationType::kHasCollider,  RelationType::kHasConfounder,
};

const std::string& relation_name(RelationType r);
RelationType relation_from_name(const std::string& name);

/// A causal claim about the ordered variable pair (i, j).
struct Hypothesis {
    RelationType relation;
    int i;
    int j;
};

/// Whether the claimed relation actually holds in the single DAG g.
bool relation_holds(const Dag& g, const Hypothesis& h);

/// 1 when the relation holds in every member of the class, else 0.
int label(const Mec& m, const Hypothesis& h);

/// All 6·n·(n-1) hypotheses on n variables: ordered pairs in lexicographic
/// order, relations in kRelationOrder within each pair.
std::vector<Hypothesis> all_hypotheses(int node_count);

}  // namespace causalnli
