#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "causalnli/dag.hpp"

namespace causalnli {

/// Relabeling-invariant identifier of a directed, undirected, or mixed graph.
///
/// Layout: [node count][8 directed adjacency rows][8 undirected adjacency
/// rows], each row one byte (bit j of row i = edge involving i and j). The
/// rows are those of a canonical relabeling of the graph, so two graphs
/// compare equal iff some node permutation maps one onto the other.
struct CanonicalKey {
    std::array<std::uint8_t, 17> bytes{};

    auto operator<=>(const CanonicalKey&) const = default;

    std::string hex() const;
    static CanonicalKey from_hex(const std::string& hex);
};

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey& k) const;
};

/// Canonical form of a mixed graph given as a directed adjacency word and a
/// symmetric undirected adjacency word (stride-8 layout as in Dag).
///
/// The search minimizes the relabeled adjacency bytes over all permutations
/// compatible with a color refinement of the nodes (a refinement of plain
/// degree-sequence prefiltering), which is exhaustive within each color
/// class and therefore exact for every graph size supported here.
CanonicalKey canonical_key_mixed(int node_count, std::uint64_t directed,
                                 std::uint64_t undirected);

CanonicalKey canonical_key(const Dag& g);

}  // namespace causalnli
