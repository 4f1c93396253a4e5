#include "causalnli/pc.hpp"

#include <bit>
#include <optional>
#include <vector>

#include "causalnli/errors.hpp"

namespace causalnli {

namespace {

constexpr std::uint64_t bit_of(int i, int j) {
    return std::uint64_t{1} << (i * 8 + j);
}

}  // namespace

Cpdag pc(const IndependenceOracle& oracle) {
    const int n = oracle.node_count();
    const NodeMask all = NodeMask((1u << n) - 1);

    // Skeleton: start fully connected, remove a pair once any separating set
    // turns up. Searched smallest-first, so the recorded set is minimal.
    std::uint64_t undirected = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) undirected |= bit_of(i, j);

    std::vector<std::optional<NodeMask>> sepset(CiSignature::pair_count(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const NodeMask allowed = all & ~NodeMask((1u << i) | (1u << j));
            for (int size = 0; size <= std::popcount(allowed); ++size) {
                for (NodeMask z = 0; z <= allowed; ++z) {
                    if ((z & ~allowed) || std::popcount(z) != size) continue;
                    if (!oracle.independent(i, j, z)) continue;
                    sepset[CiSignature::pair_index(n, i, j)] = z;
                    undirected &= ~(bit_of(i, j) | bit_of(j, i));
                    break;
                }
                if (sepset[CiSignature::pair_index(n, i, j)]) break;
            }
        }
    }

    // V-structures: i -> k <- j whenever i, j were separated without k but
    // both kept their edge to k.
    std::uint64_t directed = 0;
    auto orient = [&](int from, int to) {
        if (directed & bit_of(to, from))
            throw FaithfulnessError(
                "oracle forces contradictory orientations of one edge");
        directed |= bit_of(from, to);
        undirected &= ~(bit_of(from, to) | bit_of(to, from));
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& sep = sepset[CiSignature::pair_index(n, i, j)];
            if (!sep) continue;  // still adjacent
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const bool ik = (undirected | directed) & (bit_of(i, k) | bit_of(k, i));
                const bool jk = (undirected | directed) & (bit_of(j, k) | bit_of(k, j));
                if (!ik || !jk) continue;
                if (*sep & (NodeMask(1) << k)) continue;
                if (!(directed & bit_of(i, k))) orient(i, k);
                if (!(directed & bit_of(j, k))) orient(j, k);
            }
        }
    }

    meek_closure(n, directed, undirected);
    return Cpdag(n, directed, undirected);
}

}  // namespace causalnli
