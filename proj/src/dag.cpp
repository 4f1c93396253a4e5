#include "causalnli/dag.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace causalnli {

namespace {

constexpr std::uint64_t bit_of(int i, int j) {
    return std::uint64_t{1} << (i * 8 + j);
}

}  // namespace

Dag::Dag(int node_count, std::span<const std::pair<int, int>> edges,
         std::vector<std::string> node_names) {
    node_count_ = node_count;
    names_ = std::move(node_names);
    for (const auto& [from, to] : edges) {
        if (from < 0 || from >= node_count || to < 0 || to >= node_count)
            throw std::invalid_argument("edge endpoint out of range");
        bits_ |= bit_of(from, to);
    }
    validate_and_close();
}

Dag Dag::from_bits(int node_count, std::uint64_t adjacency,
                   std::vector<std::string> node_names) {
    Dag g;
    g.node_count_ = node_count;
    g.bits_ = adjacency;
    g.names_ = std::move(node_names);
    g.validate_and_close();
    return g;
}

std::vector<std::string> Dag::default_names(int node_count) {
    std::vector<std::string> names;
    names.reserve(node_count);
    for (int i = 0; i < node_count; ++i)
        names.emplace_back(1, static_cast<char>('A' + i));
    return names;
}

void Dag::validate_and_close() {
    if (node_count_ < 1 || node_count_ > kMaxNodes)
        throw std::invalid_argument("node count must be in [1, 8]");
    if (names_.empty()) names_ = default_names(node_count_);
    if (static_cast<int>(names_.size()) != node_count_)
        throw std::invalid_argument("node_names length must equal node count");
    std::unordered_set<std::string> distinct(names_.begin(), names_.end());
    if (static_cast<int>(distinct.size()) != node_count_)
        throw std::invalid_argument("node_names must be distinct");

    std::uint64_t valid_cells = 0;
    for (int i = 0; i < node_count_; ++i)
        for (int j = 0; j < node_count_; ++j)
            if (i != j) valid_cells |= bit_of(i, j);
    if (bits_ & ~valid_cells)
        throw std::invalid_argument("adjacency has self-loops or out-of-range bits");

    // Transitive closure by iterating mask propagation; also the acyclicity check.
    kin_.assign(node_count_, Kin{});
    for (int v = 0; v < node_count_; ++v) {
        for (int u = 0; u < node_count_; ++u) {
            if (bits_ & bit_of(u, v)) kin_[v].parents |= NodeMask(1) << u;
            if (bits_ & bit_of(v, u)) kin_[v].children |= NodeMask(1) << u;
        }
    }
    for (int v = 0; v < node_count_; ++v) {
        NodeMask frontier = kin_[v].children;
        NodeMask seen = 0;
        while (frontier) {
            int u = std::countr_zero(frontier);
            frontier &= NodeMask(frontier - 1);
            if (seen & (NodeMask(1) << u)) continue;
            seen |= NodeMask(1) << u;
            frontier |= kin_[u].children;
        }
        if (seen & (NodeMask(1) << v))
            throw std::invalid_argument("adjacency contains a directed cycle");
        kin_[v].descendants = seen;
    }
    for (int v = 0; v < node_count_; ++v)
        for (int u = 0; u < node_count_; ++u)
            if (kin_[u].descendants & (NodeMask(1) << v))
                kin_[v].ancestors |= NodeMask(1) << u;
}

bool Dag::edge(int from, int to) const {
    if (from < 0 || from >= node_count_ || to < 0 || to >= node_count_)
        throw std::invalid_argument("node index out of range");
    return bits_ & bit_of(from, to);
}

int Dag::edge_count() const { return std::popcount(bits_); }

bool Dag::upper_triangular() const {
    for (int i = 0; i < node_count_; ++i)
        for (int j = 0; j <= i; ++j)
            if (bits_ & bit_of(i, j)) return false;
    return true;
}

NodeMask Dag::parents(int node) const { return kin(node).parents; }
NodeMask Dag::children(int node) const { return kin(node).children; }
NodeMask Dag::ancestors(int node) const { return kin(node).ancestors; }
NodeMask Dag::descendants(int node) const { return kin(node).descendants; }

Kin Dag::kin(int node) const {
    if (node < 0 || node >= node_count_)
        throw std::invalid_argument("node index out of range");
    return kin_[node];
}

std::string Dag::edge_list() const {
    std::string out;
    for (int i = 0; i < node_count_; ++i) {
        for (int j = 0; j < node_count_; ++j) {
            if (!(bits_ & bit_of(i, j))) continue;
            if (!out.empty()) out += ';';
            out += names_[i];
            out += "->";
            out += names_[j];
        }
    }
    return out;
}

std::string Dag::dot() const {
    std::string out = "digraph g {\n";
    for (int i = 0; i < node_count_; ++i) {
        out += "  ";
        out += names_[i];
        out += ";\n";
    }
    for (int i = 0; i < node_count_; ++i) {
        for (int j = 0; j < node_count_; ++j) {
            if (!(bits_ & bit_of(i, j))) continue;
            out += "  ";
            out += names_[i];
            out += " -> ";
            out += names_[j];
            out += ";\n";
        }
    }
    out += "}\n";
    return out;
}

std::uint64_t permute_adjacency(int node_count, std::uint64_t bits,
                                std::span<const int> perm) {
    std::uint64_t out = 0;
    for (int i = 0; i < node_count; ++i) {
        for (int j = 0; j < node_count; ++j) {
            if (bits & bit_of(i, j)) out |= bit_of(perm[i], perm[j]);
        }
    }
    return out;
}

}  // namespace causalnli
