#include "causalnli/mec.hpp"

#include <map>

namespace causalnli {

std::vector<Mec> group_mecs(const std::vector<Dag>& dags) {
    std::map<CanonicalKey, const Dag*> leader_by_key;
    for (const Dag& g : dags)
        leader_by_key.emplace(canonical_key(cpdag_of(g)), &g);  // first hit wins

    std::vector<Mec> out;
    out.reserve(leader_by_key.size());
    for (const auto& [key, leader] : leader_by_key) {
        Cpdag c = cpdag_of(*leader);
        std::vector<Dag> members = mec_members(c, leader->node_names());
        out.push_back(Mec{key, *leader, std::move(c), std::move(members),
                          ci_signature(*leader)});
    }
    return out;
}

}  // namespace causalnli
