#include "causalnli/independence.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace causalnli {

namespace {

void check_query(const Dag& g, int i, int j, NodeMask given) {
    const int n = g.node_count();
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::invalid_argument("d-separation query: node index out of range");
    if (i == j) throw std::invalid_argument("d-separation query: i == j");
    if (given & ((NodeMask(1) << i) | (NodeMask(1) << j)))
        throw std::invalid_argument(
            "d-separation query: conditioning set overlaps the queried pair");
    if (given >> n)
        throw std::invalid_argument("d-separation query: conditioning set out of range");
}

}  // namespace

bool d_separated(const Dag& g, int i, int j, NodeMask given) {
    check_query(g, i, j, given);
    const int n = g.node_count();

    // Nodes that are in the conditioning set or have a descendant in it;
    // these are the colliders that an active trail may pass through.
    NodeMask cond_or_anc = given;
    for (int v = 0; v < n; ++v)
        if (g.descendants(v) & given) cond_or_anc |= NodeMask(1) << v;

    // State (v, entered-from-parent?): bit v of the matching visited mask.
    NodeMask visited_down = 0;  // entered along an edge parent -> v
    NodeMask visited_up = 0;    // entered along an edge child -> v (or start)
    std::vector<std::pair<int, bool>> stack;
    stack.emplace_back(i, false);
    while (!stack.empty()) {
        auto [v, from_parent] = stack.back();
        stack.pop_back();
        if (v == j) return false;
        NodeMask& visited = from_parent ? visited_down : visited_up;
        if (visited & (NodeMask(1) << v)) continue;
        visited |= NodeMask(1) << v;

        const bool conditioned = given & (NodeMask(1) << v);
        if (!from_parent) {
            if (!conditioned) {
                for (NodeMask m = g.parents(v); m;) {
                    int p = std::countr_zero(m);
                    m &= NodeMask(m - 1);
                    stack.emplace_back(p, false);
                }
                for (NodeMask m = g.children(v); m;) {
                    int c = std::countr_zero(m);
                    m &= NodeMask(m - 1);
                    stack.emplace_back(c, true);
                }
            }
        } else {
            if (!conditioned) {
                for (NodeMask m = g.children(v); m;) {
                    int c = std::countr_zero(m);
                    m &= NodeMask(m - 1);
                    stack.emplace_back(c, true);
                }
            }
            if (cond_or_anc & (NodeMask(1) << v)) {
                for (NodeMask m = g.parents(v); m;) {
                    int p = std::countr_zero(m);
                    m &= NodeMask(m - 1);
                    stack.emplace_back(p, false);
                }
            }
        }
    }
    return true;
}

bool d_separated_by_paths(const Dag& g, int i, int j, NodeMask given) {
    check_query(g, i, j, given);
    const int n = g.node_count();

    // DFS over simple paths in the skeleton; path[k] holds the node and the
    // orientation of the edge that led to it (true = forward, prev -> node).
    struct Step {
        int node;
        bool arrived_forward;
    };
    std::vector<Step> path{{i, false}};
    NodeMask on_path = NodeMask(1) << i;

    auto path_blocked = [&]() {
        for (std::size_t k = 1; k + 1 < path.size(); ++k) {
            const int v = path[k].node;
            const bool collider = path[k].arrived_forward && !path[k + 1].arrived_forward;
            if (collider) {
                const NodeMask reach = g.descendants(v) | (NodeMask(1) << v);
                if (!(reach & given)) return true;
            } else {
                if (given & (NodeMask(1) << v)) return true;
            }
        }
        return false;
    };

    // Returns true as soon as some unblocked path to j is found.
    auto extend = [&](auto&& self) -> bool {
        const int v = path.back().node;
        for (int step = 0; step < 2 * n; ++step) {
            const int w = step % n;
            const bool forward = step < n;
            if (on_path & (NodeMask(1) << w)) continue;
            if (!(forward ? g.edge(v, w) : g.edge(w, v))) continue;
            path.push_back({w, forward});
            if (w == j) {
                if (!path_blocked()) return true;
            } else {
                on_path |= NodeMask(1) << w;
                const bool open = self(self);
                on_path &= ~(NodeMask(1) << w);
                if (open) return true;
            }
            path.pop_back();
        }
        return false;
    };
    return !extend(extend);
}

CiSignature::CiSignature(int node_count, std::vector<std::vector<NodeMask>> sepsets)
    : node_count_(node_count), sepsets_(std::move(sepsets)) {
    if (static_cast<int>(sepsets_.size()) != pair_count(node_count_))
        throw std::invalid_argument("CiSignature: wrong number of pair entries");
}

int CiSignature::pair_index(int node_count, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= node_count || i == j)
        throw std::invalid_argument("CiSignature: bad pair");
    return i * (2 * node_count - i - 1) / 2 + (j - i - 1);
}

const std::vector<NodeMask>& CiSignature::separating_sets(int i, int j) const {
    return sepsets_[pair_index(node_count_, i, j)];
}

bool CiSignature::independent(int i, int j, NodeMask given) const {
    const auto& sets = separating_sets(i, j);
    return std::find(sets.begin(), sets.end(), given) != sets.end();
}

CiSignature CiSignature::permuted(std::span<const int> perm) const {
    const int n = node_count_;
    std::vector<std::vector<NodeMask>> out(pair_count(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::vector<NodeMask> sets;
            sets.reserve(separating_sets(i, j).size());
            for (NodeMask z : separating_sets(i, j)) {
                NodeMask mapped = 0;
                for (int v = 0; v < n; ++v)
                    if (z & (NodeMask(1) << v)) mapped |= NodeMask(1) << perm[v];
                sets.push_back(mapped);
            }
            std::sort(sets.begin(), sets.end(), [](NodeMask a, NodeMask b) {
                const int pa = std::popcount(a), pb = std::popcount(b);
                return pa != pb ? pa < pb : a < b;
            });
            out[pair_index(n, perm[i], perm[j])] = std::move(sets);
        }
    }
    return CiSignature(n, std::move(out));
}

CiSignature ci_signature(const Dag& g) {
    const int n = g.node_count();
    std::vector<std::vector<NodeMask>> sepsets(CiSignature::pair_count(n));
    const NodeMask all = NodeMask((1u << n) - 1);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const NodeMask allowed = all & ~NodeMask((1u << i) | (1u << j));
            std::vector<NodeMask> sets;
            for (NodeMask z = 0; z <= allowed; ++z) {
                if (z & ~allowed) continue;
                if (d_separated(g, i, j, z)) sets.push_back(z);
            }
            std::sort(sets.begin(), sets.end(), [](NodeMask a, NodeMask b) {
                const int pa = std::popcount(a), pb = std::popcount(b);
                return pa != pb ? pa < pb : a < b;
            });
            sepsets[CiSignature::pair_index(n, i, j)] = std::move(sets);
        }
    }
    return CiSignature(n, std::move(sepsets));
}

bool markov_check(const Dag& g) {
    const int n = g.node_count();
    for (int v = 0; v < n; ++v) {
        const NodeMask parents = g.parents(v);
        const NodeMask non_descendants =
            NodeMask((1u << n) - 1) & ~g.descendants(v) & ~NodeMask(1u << v);
        for (NodeMask m = non_descendants & ~parents; m;) {
            int u = std::countr_zero(m);
            m &= NodeMask(m - 1);
            if (!d_separated(g, v, u, parents)) return false;
        }
    }
    return true;
}

}  // namespace causalnli
