#include "causalnli/labeling.hpp"

#include <array>
#include <stdexcept>

namespace causalnli {

namespace {

const std::array<std::string, kRelationCount> kNames = {
    "Is-Parent",    "Is-Ancestor",  "Is-Child",
    "Is-Descendant", "Has-Collider", "Has-Confounder",
};

}  // namespace

const std::string& relation_name(RelationType r) {
    return kNames[static_cast<int>(r)];
}

RelationType relation_from_name(const std::string& name) {
    for (int k = 0; k < kRelationCount; ++k)
        if (kNames[k] == name) return static_cast<RelationType>(k);
    throw std::invalid_argument("unknown relation name: " + name);
}

bool relation_holds(const Dag& g, const Hypothesis& h) {
    const int n = g.node_count();
    if (h.i < 0 || h.i >= n || h.j < 0 || h.j >= n || h.i == h.j)
        throw std::invalid_argument("hypothesis pair out of range");
    const int i = h.i, j = h.j;
    switch (h.relation) {
        case RelationType::kIsParent:
            return g.edge(i, j);
        case RelationType::kIsAncestor:
            return (g.ancestors(j) & (NodeMask(1) << i)) && !g.edge(i, j);
        case RelationType::kIsChild:
            return g.edge(j, i);
        case RelationType::kIsDescendant:
            return (g.ancestors(i) & (NodeMask(1) << j)) && !g.edge(j, i);
        case RelationType::kHasCollider:
            return g.children(i) & g.children(j);
        case RelationType::kHasConfounder:
            return g.parents(i) & g.parents(j);
    }
    throw std::invalid_argument("unknown relation");
}

int label(const Mec& m, const Hypothesis& h) {
    for (const Dag& member : m.members)
        if (!relation_holds(member, h)) return 0;
    return 1;
}

std::vector<Hypothesis> all_hypotheses(int node_count) {
    if (node_count < 2)
        throw std::invalid_argument("hypotheses need at least two variables");
    std::vector<Hypothesis> out;
    out.reserve(kRelationCount * node_count * (node_count - 1));
    for (int i = 0; i < node_count; ++i)
        for (int j = 0; j < node_count; ++j) {
            if (i == j) continue;
            for (RelationType r : kRelationOrder) out.push_back({r, i, j});
        }
    return out;
}

}  // namespace causalnli
