#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace causalnli {

/// Node sets on small graphs are bitmasks; bit v set means node v is in the set.
using NodeMask = std::uint16_t;

/// Parents/children/ancestors/descendants of one node, as bitmasks.
struct Kin {
    NodeMask parents = 0;
    NodeMask children = 0;
    NodeMask ancestors = 0;
    NodeMask descendants = 0;
};

/// Immutable labeled directed acyclic graph on up to kMaxNodes nodes.
///
/// The adjacency matrix is packed into a 64-bit word with a fixed stride of
/// 8 bits per row, so bit (i*8 + j) encodes the edge i -> j regardless of the
/// actual node count. Construction validates shape and acyclicity.
class Dag {
public:
    static constexpr int kMaxNodes = 8;

    Dag(int node_count, std::span<const std::pair<int, int>> edges,
        std::vector<std::string> node_names = {});

    /// Builds from a packed adjacency word (stride-8 layout, see class docs).
    static Dag from_bits(int node_count, std::uint64_t adjacency,
                         std::vector<std::string> node_names = {});

    /// Names "A", "B", ... for the first `node_count` letters.
    static std::vector<std::string> default_names(int node_count);

    int node_count() const { return node_count_; }
    std::uint64_t bits() const { return bits_; }
    const std::vector<std::string>& node_names() const { return names_; }

    bool edge(int from, int to) const;
    int edge_count() const;

    /// True when every edge (i, j) satisfies i < j.
    bool upper_triangular() const;

    NodeMask parents(int node) const;
    NodeMask children(int node) const;
    NodeMask ancestors(int node) const;     // transitive, excludes the node
    NodeMask descendants(int node) const;   // transitive, excludes the node
    Kin kin(int node) const;

    /// Debug rendering, e.g. "A->B;B->C" ("" for an edgeless graph).
    std::string edge_list() const;
    std::string dot() const;

    friend bool operator==(const Dag& a, const Dag& b) {
        return a.node_count_ == b.node_count_ && a.bits_ == b.bits_;
    }

private:
    Dag() = default;

    int node_count_ = 0;
    std::uint64_t bits_ = 0;
    std::vector<std::string> names_;
    std::vector<Kin> kin_;  // precomputed per node

    void validate_and_close();
};

/// Applies a node relabeling: edge (i, j) becomes (perm[i], perm[j]).
std::uint64_t permute_adjacency(int node_count, std::uint64_t bits,
                                std::span<const int> perm);

}  // namespace causalnli
