#include <doctest.h>

#include <vector>

#include "causalnli/enumerate.hpp"
#include "causalnli/independence.hpp"
#include "causalnli/rng.hpp"

using namespace causalnli;

namespace {

Dag make_dag(int n, std::vector<std::pair<int, int>> edges) {
    return Dag(n, edges);
}

}  // namespace

TEST_SUITE("independence") {

TEST_CASE("chain, fork, and collider blocking rules") {
    const Dag chain = make_dag(3, {{0, 1}, {1, 2}});
    CHECK(d_separated(chain, 0, 2, 0b010));
    CHECK_FALSE(d_separated(chain, 0, 2, 0));

    const Dag fork = make_dag(3, {{1, 0}, {1, 2}});
    CHECK(d_separated(fork, 0, 2, 0b010));
    CHECK_FALSE(d_separated(fork, 0, 2, 0));

    const Dag collider = make_dag(3, {{0, 2}, {1, 2}});
    CHECK(d_separated(collider, 0, 1, 0));
    CHECK_FALSE(d_separated(collider, 0, 1, 0b100));
}

TEST_CASE("conditioning on a collider's descendant unblocks") {
    const Dag g = make_dag(4, {{0, 2}, {1, 2}, {2, 3}});
    CHECK(d_separated(g, 0, 1, 0));
    CHECK_FALSE(d_separated(g, 0, 1, 0b1000));
}

TEST_CASE("query validation") {
    const Dag g = make_dag(3, {{0, 1}});
    CHECK_THROWS_AS(d_separated(g, 0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(d_separated(g, 0, 1, 0b001), std::invalid_argument);
    CHECK_THROWS_AS(d_separated(g, 0, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(d_separated(g, 0, 1, 0b1000), std::invalid_argument);
    CHECK_THROWS_AS(d_separated_by_paths(g, 0, 1, 0b010 | 0b001),
                    std::invalid_argument);
}

TEST_CASE("signatures of the two-node graphs") {
    const CiSignature empty = ci_signature(make_dag(2, {}));
    CHECK(empty.separating_sets(0, 1) == std::vector<NodeMask>{0});
    CHECK_FALSE(empty.directly_correlated(0, 1));

    const CiSignature edge = ci_signature(make_dag(2, {{0, 1}}));
    CHECK(edge.separating_sets(0, 1).empty());
    CHECK(edge.directly_correlated(0, 1));
}

TEST_CASE("signature of the chain") {
    const CiSignature sig = ci_signature(make_dag(3, {{0, 1}, {1, 2}}));
    CHECK(sig.directly_correlated(0, 1));
    CHECK(sig.directly_correlated(1, 2));
    // Of the two subsets of {B}, only {B} itself blocks the chain path.
    CHECK(sig.separating_sets(0, 2) == std::vector<NodeMask>{0b010});
    CHECK(sig.independent(0, 2, 0b010));
    CHECK_FALSE(sig.independent(0, 2, 0));
}

TEST_CASE("adjacent pairs are never separated") {
    for (int n = 2; n <= 4; ++n)
        for (const Dag& g : enumerate_dags(n)) {
            const CiSignature sig = ci_signature(g);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (g.edge(i, j) || g.edge(j, i))
                        CHECK(sig.separating_sets(i, j).empty());
        }
}

TEST_CASE("markov property holds for every DAG") {
    CHECK(markov_check(make_dag(3, {{0, 1}, {1, 2}})));
    CHECK(markov_check(make_dag(3, {{0, 2}, {1, 2}})));
    for (const Dag& g : enumerate_dags(4)) CHECK(markov_check(g));
    for (const Dag& g : enumerate_dags(5)) CHECK(markov_check(g));
}

TEST_CASE("the two deciders agree exhaustively on small graphs") {
    for (int n = 2; n <= 3; ++n) {
        std::vector<std::pair<int, int>> cells;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) cells.emplace_back(i, j);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells.size());
             ++mask) {
            std::uint64_t bits = 0;
            for (std::size_t k = 0; k < cells.size(); ++k)
                if (mask & (std::uint64_t{1} << k))
                    bits |= std::uint64_t{1} << (cells[k].first * 8 + cells[k].second);
            Dag g = make_dag(n, {});
            try {
                g = Dag::from_bits(n, bits);
            } catch (const std::invalid_argument&) {
                continue;  // cyclic
            }
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    const NodeMask allowed =
                        NodeMask((1u << n) - 1) & ~NodeMask((1u << i) | (1u << j));
                    for (NodeMask z = 0; z <= allowed; ++z) {
                        if (z & ~allowed) continue;
                        CHECK(d_separated(g, i, j, z) ==
                              d_separated_by_paths(g, i, j, z));
                    }
                }
        }
    }
}

TEST_CASE("decider agreement and symmetry on random 5-node queries") {
    SplitMix64 rng(7);
    for (int q = 0; q < 2000; ++q) {
        std::uint64_t bits = 0;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                if (rng.bounded(2)) bits |= std::uint64_t{1} << (i * 8 + j);
        const Dag g = Dag::from_bits(5, bits);
        const int i = int(rng.bounded(5));
        int j = int(rng.bounded(4));
        if (j >= i) ++j;
        const NodeMask allowed = NodeMask(0b11111) & ~NodeMask((1u << i) | (1u << j));
        const NodeMask z = NodeMask(rng.bounded(32)) & allowed;
        const bool a = d_separated(g, i, j, z);
        CHECK(a == d_separated_by_paths(g, i, j, z));
        CHECK(a == d_separated(g, j, i, z));
    }
}

TEST_CASE("signature permutation is consistent with graph relabeling") {
    const Dag g = make_dag(4, {{0, 1}, {1, 3}, {2, 3}});
    const std::vector<int> perm = {2, 0, 3, 1};
    const Dag relabeled = Dag::from_bits(4, permute_adjacency(4, g.bits(), perm));
    CHECK(ci_signature(g).permuted(perm) == ci_signature(relabeled));
}

}  // TEST_SUITE
