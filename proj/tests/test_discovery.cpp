#include <doctest.h>

#include <vector>

#include "causalnli/enumerate.hpp"
#include "causalnli/errors.hpp"
#include "causalnli/pc.hpp"

using namespace causalnli;

namespace {

Dag make_dag(int n, std::vector<std::pair<int, int>> edges) {
    return Dag(n, edges);
}

Cpdag run_pc(const Dag& g) { return pc(SignatureOracle(ci_signature(g))); }

// Hand-built oracle whose answers force two v-structures to fight over the
// edge between nodes 0 and 2.
class ContradictoryOracle final : public IndependenceOracle {
public:
    int node_count() const override { return 4; }
    bool independent(int i, int j, NodeMask given) const override {
        if (given != 0) return false;
        if (i > j) std::swap(i, j);
        return (i == 0 && j == 1) || (i == 1 && j == 3) || (i == 2 && j == 3);
    }
};

}  // namespace

TEST_SUITE("discovery") {

TEST_CASE("chain oracle yields the undirected path") {
    const Cpdag c = run_pc(make_dag(3, {{0, 1}, {1, 2}}));
    CHECK(c == cpdag_of(make_dag(3, {{0, 1}, {1, 2}})));
    CHECK(c.directed_edge_count() == 0);
    CHECK(c.undirected_edge(0, 1));
    CHECK(c.undirected_edge(1, 2));
}

TEST_CASE("collider oracle yields the directed v-structure") {
    const Cpdag c = run_pc(make_dag(3, {{0, 2}, {1, 2}}));
    CHECK(c.directed_edge(0, 2));
    CHECK(c.directed_edge(1, 2));
    CHECK(c.undirected_edge_count() == 0);
}

TEST_CASE("no independencies leaves the complete undirected graph") {
    const Cpdag c = run_pc(make_dag(3, {{0, 1}, {0, 2}, {1, 2}}));
    CHECK(c.directed_edge_count() == 0);
    CHECK(c.undirected_edge_count() == 3);
}

TEST_CASE("pc recovers the cpdag of every small DAG") {
    for (int n = 2; n <= 4; ++n)
        for (const Dag& g : enumerate_dags(n)) CHECK(run_pc(g) == cpdag_of(g));
}

TEST_CASE("contradictory oracle raises a faithfulness error") {
    CHECK_THROWS_AS(pc(ContradictoryOracle()), FaithfulnessError);
}

}  // TEST_SUITE
