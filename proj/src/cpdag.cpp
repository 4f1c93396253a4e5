#include "causalnli/cpdag.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "causalnli/errors.hpp"

namespace causalnli {

namespace {

constexpr std::uint64_t bit_of(int i, int j) {
    return std::uint64_t{1} << (i * 8 + j);
}

bool reaches(int n, std::uint64_t dir, int from, int to) {
    std::uint32_t frontier = 1u << from;
    std::uint32_t seen = 0;
    while (frontier) {
        const int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        if (seen & (1u << v)) continue;
        seen |= 1u << v;
        for (int w = 0; w < n; ++w)
            if (dir & bit_of(v, w)) {
                if (w == to) return true;
                frontier |= 1u << w;
            }
    }
    return false;
}

}  // namespace

Cpdag::Cpdag(int node_count, std::uint64_t directed, std::uint64_t undirected)
    : node_count_(node_count), directed_(directed), undirected_(undirected) {
    if (node_count < 1 || node_count > Dag::kMaxNodes)
        throw std::invalid_argument("node count must be in [1, 8]");
    std::uint64_t valid_cells = 0;
    for (int i = 0; i < node_count; ++i)
        for (int j = 0; j < node_count; ++j)
            if (i != j) valid_cells |= bit_of(i, j);
    if ((directed_ | undirected_) & ~valid_cells)
        throw std::invalid_argument("mixed graph has self-loops or out-of-range bits");
    if (directed_ & undirected_)
        throw std::invalid_argument("directed and undirected edge sets overlap");
    for (int i = 0; i < node_count; ++i)
        for (int j = 0; j < node_count; ++j) {
            if (bool(undirected_ & bit_of(i, j)) != bool(undirected_ & bit_of(j, i)))
                throw std::invalid_argument("undirected adjacency must be symmetric");
            if ((directed_ & bit_of(i, j)) && (directed_ & bit_of(j, i)))
                throw std::invalid_argument("edge directed both ways");
            if ((directed_ & bit_of(i, j)) && (undirected_ & bit_of(i, j)))
                throw std::invalid_argument("edge both directed and undirected");
        }
}

bool Cpdag::directed_edge(int from, int to) const {
    return directed_ & bit_of(from, to);
}

bool Cpdag::undirected_edge(int a, int b) const {
    return undirected_ & bit_of(a, b);
}

bool Cpdag::adjacent(int a, int b) const {
    return (directed_ | undirected_) & (bit_of(a, b) | bit_of(b, a));
}

int Cpdag::directed_edge_count() const { return std::popcount(directed_); }

int Cpdag::undirected_edge_count() const {
    return std::popcount(undirected_) / 2;
}

CanonicalKey canonical_key(const Cpdag& c) {
    return canonical_key_mixed(c.node_count(), c.directed_bits(),
                               c.undirected_bits());
}

void meek_closure(int node_count, std::uint64_t& directed,
                  std::uint64_t& undirected) {
    const int n = node_count;
    auto dir = [&](int a, int b) { return bool(directed & bit_of(a, b)); };
    auto und = [&](int a, int b) { return bool(undirected & bit_of(a, b)); };
    auto adjacent = [&](int a, int b) {
        return dir(a, b) || dir(b, a) || und(a, b);
    };
    auto orient = [&](int a, int b) {
        undirected &= ~(bit_of(a, b) | bit_of(b, a));
        directed |= bit_of(a, b);
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (a == b || !und(a, b)) continue;

                // R1: c -> a, a - b, c and b nonadjacent  =>  a -> b.
                for (int c = 0; c < n && und(a, b); ++c) {
                    if (c == a || c == b) continue;
                    if (dir(c, a) && !adjacent(c, b)) {
                        orient(a, b);
                        changed = true;
                    }
                }
                if (!und(a, b)) continue;

                // R2: a -> c -> b with a - b  =>  a -> b.
                for (int c = 0; c < n && und(a, b); ++c) {
                    if (c == a || c == b) continue;
                    if (dir(a, c) && dir(c, b)) {
                        orient(a, b);
                        changed = true;
                    }
                }
                if (!und(a, b)) continue;

                // R3: a - c, a - d, c -> b, d -> b, c and d nonadjacent  =>  a -> b.
                for (int c = 0; c < n && und(a, b); ++c) {
                    if (c == a || c == b || !und(a, c) || !dir(c, b)) continue;
                    for (int d = c + 1; d < n && und(a, b); ++d) {
                        if (d == a || d == b || !und(a, d) || !dir(d, b)) continue;
                        if (!adjacent(c, d)) {
                            orient(a, b);
                            changed = true;
                        }
                    }
                }
                if (!und(a, b)) continue;

                // R4: a - c, c -> d, d -> b, c and b nonadjacent, a and d
                // adjacent  =>  a -> b.
                for (int c = 0; c < n && und(a, b); ++c) {
                    if (c == a || c == b || !und(a, c) || adjacent(c, b)) continue;
                    for (int d = 0; d < n && und(a, b); ++d) {
                        if (d == a || d == b || d == c) continue;
                        if (dir(c, d) && dir(d, b) && adjacent(a, d)) {
                            orient(a, b);
                            changed = true;
                        }
                    }
                }
            }
        }
    }
}

Cpdag cpdag_of(const Dag& g) {
    const int n = g.node_count();
    std::uint64_t undirected = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.bits() & bit_of(i, j)) undirected |= bit_of(i, j) | bit_of(j, i);

    // V-structures keep their orientation from g.
    std::uint64_t directed = 0;
    for (int b = 0; b < n; ++b) {
        const NodeMask parents = g.parents(b);
        for (int a = 0; a < n; ++a) {
            if (!(parents & (NodeMask(1) << a))) continue;
            for (int c = a + 1; c < n; ++c) {
                if (!(parents & (NodeMask(1) << c))) continue;
                if (g.edge(a, c) || g.edge(c, a)) continue;
                directed |= bit_of(a, b) | bit_of(c, b);
            }
        }
    }
    undirected &= ~directed;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (directed & bit_of(i, j)) undirected &= ~bit_of(j, i);

    meek_closure(n, directed, undirected);
    return Cpdag(n, directed, undirected);
}

std::vector<Dag> mec_members(const Cpdag& c, std::vector<std::string> names) {
    const int n = c.node_count();
    std::vector<std::pair<int, int>> free_edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (c.undirected_edge(i, j)) free_edges.emplace_back(i, j);

    std::vector<std::uint64_t> found;
    std::uint64_t dir = c.directed_bits();

    // Orienting x -> y may not close a directed cycle and may not give y a
    // second parent that x is nonadjacent to (that would be a v-structure
    // absent from c).
    auto admissible = [&](int x, int y) {
        if (reaches(n, dir, y, x)) return false;
        for (int z = 0; z < n; ++z) {
            if (z == x || z == y) continue;
            if ((dir & bit_of(z, y)) && !c.adjacent(x, z)) return false;
        }
        return true;
    };

    auto recurse = [&](auto&& self, std::size_t depth) -> void {
        if (depth == free_edges.size()) {
            found.push_back(dir);
            return;
        }
        const auto [i, j] = free_edges[depth];
        for (const auto& [x, y] : {std::pair{i, j}, std::pair{j, i}}) {
            if (!admissible(x, y)) continue;
            dir |= bit_of(x, y);
            self(self, depth + 1);
            dir &= ~bit_of(x, y);
        }
    };
    recurse(recurse, 0);

    if (found.empty())
        throw StructuralError("mixed graph admits no consistent DAG extension");
    std::sort(found.begin(), found.end());
    std::vector<Dag> out;
    out.reserve(found.size());
    for (std::uint64_t bits : found)
        out.push_back(Dag::from_bits(n, bits, names));
    return out;
}

}  // namespace causalnli
