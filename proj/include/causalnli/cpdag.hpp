#pragma once

#include <cstdint>
#include <vector>

#include "causalnli/canonical.hpp"
#include "causalnli/dag.hpp"

namespace causalnli {

/// Partially directed graph representing a Markov equivalence class: the
/// skeleton of a DAG with exactly the compelled edges directed.
class Cpdag {
public:
    Cpdag(int node_count, std::uint64_t directed, std::uint64_t undirected);

    int node_count() const { return node_count_; }
    std::uint64_t directed_bits() const { return directed_; }
    std::uint64_t undirected_bits() const { return undirected_; }

    bool directed_edge(int from, int to) const;
    bool undirected_edge(int a, int b) const;
    bool adjacent(int a, int b) const;

    int directed_edge_count() const;
    int undirected_edge_count() const;

    friend bool operator==(const Cpdag&, const Cpdag&) = default;

private:
    int node_count_;
    std::uint64_t directed_;
    std::uint64_t undirected_;  // symmetric: both (a,b) and (b,a) bits set
};

CanonicalKey canonical_key(const Cpdag& c);

/// The CPDAG of g: skeleton, v-structure edges directed as in g, and the
/// orientations forced from those by the Meek rules; everything else
/// undirected.
Cpdag cpdag_of(const Dag& g);

/// All DAGs in the equivalence class c describes: acyclic orientations of
/// the undirected edges that create no new v-structure. Deterministic order
/// (ascending adjacency bits); node names taken from `names` when given.
/// Throws StructuralError when c admits no consistent extension.
std::vector<Dag> mec_members(const Cpdag& c,
                             std::vector<std::string> names = {});

/// Orientation-propagation closure shared by cpdag_of and the PC algorithm:
/// applies the four Meek rules until none fires. Rules only ever direct
/// currently-undirected edges, so the closure cannot contradict its input.
void meek_closure(int node_count, std::uint64_t& directed,
                  std::uint64_t& undirected);

}  // namespace causalnli
